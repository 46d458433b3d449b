//! Exact analysis of chemical reaction networks and search for equivalent
//! complex-balanced, weakly reversible or reversible realizations.
//!
//! All structures are generic over an exact ordered field [`Scalar`]; the
//! `Q*` aliases fix it to arbitrary-precision rationals.

pub mod fixtures;
pub mod generators;
pub mod io;
pub mod kinetics;
pub mod linalg;
pub mod network;
pub mod realize;
pub mod scalar;
pub mod weighted;

pub use num_rational::BigRational;

pub use io::{Mode, NetworkDocument, ParseError};
pub use kinetics::{FluxClassification, RhsValue};
pub use network::{Lint, NetworkError, ReactionNetwork, SpeciesList, Vertex};
pub use scalar::Scalar;
pub use weighted::{
    Flux, FluxSystem, MassActionSystem, Monomial, Rate, State, WeightKind, WeightedSystem,
};

/// Arbitrary-precision rational.
pub type Rational = BigRational;
pub type QVertex = Vertex<Rational>;
pub type QNetwork = ReactionNetwork<Rational>;
pub type QFluxSystem = FluxSystem<Rational>;
pub type QMassActionSystem = MassActionSystem<Rational>;
pub type QState = State<Rational>;
