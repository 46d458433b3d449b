//! Small reference networks used throughout the tests and documentation.
//!
//! Vertex numbering follows the usual labels: in the square networks,
//! `y1 = (0,0)`, `y2 = (0,2)`, `y3 = (3,2)`, `y4 = (3,0)`, `y5 = (1,1)`,
//! `y6 = (2,1)` occupy indices 0..6.

use crate::network::{ReactionNetwork, SpeciesList, Vertex};
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, State};
use crate::{QFluxSystem, QMassActionSystem, QNetwork, QState, Rational};

fn xy() -> SpeciesList {
    SpeciesList::new(["X", "Y"]).expect("valid species")
}

fn v(c: &[i64]) -> Vertex<Rational> {
    Vertex::from_ints(c)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

/// `X -> 2X`, `X + Y -> 2Y`, `Y -> 0`.
pub fn lotka_volterra_network() -> QNetwork {
    ReactionNetwork::from_reactions(
        xy(),
        [
            (v(&[1, 0]), v(&[2, 0])),
            (v(&[1, 1]), v(&[0, 2])),
            (v(&[0, 1]), v(&[0, 0])),
        ],
    )
    .expect("valid network")
}

pub fn lotka_volterra(k1: Rational, k2: Rational, k3: Rational) -> QMassActionSystem {
    MassActionSystem::new(lotka_volterra_network(), vec![k1, k2, k3]).expect("positive rates")
}

fn square_vertices(with_inner: bool) -> Vec<Vertex<Rational>> {
    let mut vs = vec![v(&[0, 0]), v(&[0, 2]), v(&[3, 2]), v(&[3, 0])];
    if with_inner {
        vs.push(v(&[1, 1]));
        vs.push(v(&[2, 1]));
    }
    vs
}

/// Four sources, each feeding one of two interior targets.
pub fn square_sources_network() -> QNetwork {
    ReactionNetwork::new(
        xy(),
        square_vertices(true),
        vec![(0, 4), (1, 4), (2, 5), (3, 5)],
    )
    .expect("valid network")
}

/// Complete reversible graph on the four corners.
pub fn square_complete_network() -> QNetwork {
    let mut edges = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)] {
        edges.push((a, b));
        edges.push((b, a));
    }
    ReactionNetwork::new(xy(), square_vertices(false), edges).expect("valid network")
}

/// Weakly reversible but not reversible network on all six vertices.
pub fn square_weakly_reversible_network() -> QNetwork {
    let mut edges = Vec::new();
    for (a, b) in [(0, 4), (4, 1), (2, 5), (5, 3), (4, 5)] {
        edges.push((a, b));
        edges.push((b, a));
    }
    edges.push((4, 2));
    edges.push((4, 3));
    ReactionNetwork::new(xy(), square_vertices(true), edges).expect("valid network")
}

/// Rates `k = (k1, k2, k3, k4)` on `y1->y5, y2->y5, y3->y6, y4->y6`.
pub fn square_sources_mass_action(k: [Rational; 4]) -> QMassActionSystem {
    MassActionSystem::new(square_sources_network(), k.to_vec()).expect("positive rates")
}

pub fn square_sources_flux(j: [Rational; 4]) -> QFluxSystem {
    FluxSystem::new(square_sources_network(), j.to_vec()).expect("positive fluxes")
}

/// `2X -> X + Y` with rate `k`.
pub fn single_reaction(k: Rational) -> QMassActionSystem {
    MassActionSystem::from_weighted_reactions(xy(), [(v(&[2, 0]), v(&[1, 1]), k)])
        .expect("valid system")
}

/// `2X -> X + Y` (rate `k`) plus `0 <- Y -> 2Y` (both rate `k2`).
pub fn single_reaction_with_y_pair(k: Rational, k2: Rational) -> QMassActionSystem {
    MassActionSystem::from_weighted_reactions(
        xy(),
        [
            (v(&[2, 0]), v(&[1, 1]), k),
            (v(&[0, 1]), v(&[0, 0]), k2.clone()),
            (v(&[0, 1]), v(&[0, 2]), k2),
        ],
    )
    .expect("valid system")
}

/// The complex-balanced flux system on `0, Y, X+Y, 2X`.
pub fn cb_flux_xy() -> QFluxSystem {
    FluxSystem::from_weighted_reactions(
        xy(),
        [
            (v(&[0, 0]), v(&[0, 1]), q(3, 1)),
            (v(&[0, 1]), v(&[0, 0]), q(1, 1)),
            (v(&[0, 1]), v(&[1, 1]), q(2, 1)),
            (v(&[1, 1]), v(&[0, 0]), q(2, 1)),
            (v(&[1, 1]), v(&[2, 0]), q(5, 1)),
            (v(&[2, 0]), v(&[1, 1]), q(5, 1)),
        ],
    )
    .expect("valid system")
}

/// Mass-action rates on the [`cb_flux_xy`] network whose flux at `x0 = (1, 2)`
/// reproduces that flux exactly.
pub fn cb_mass_action_xy() -> (QMassActionSystem, QState) {
    let rates = vec![q(3, 1), q(1, 2), q(1, 1), q(1, 1), q(5, 2), q(5, 1)];
    let network = cb_flux_xy().network().clone();
    let m = MassActionSystem::new(network, rates).expect("positive rates");
    (
        m,
        State::new(vec![q(1, 1), q(2, 1)]).expect("positive state"),
    )
}

/// One species: `2 -> 1 : 1`, `1 -> 0 : 1/2`, `1 -> 2 : 1/2`, `0 -> 2 : 1/2`.
/// Complex-balanced, with a virtual source at `1`.
pub fn one_dimensional_cb_flux() -> QFluxSystem {
    let s = SpeciesList::new(["S"]).expect("valid species");
    FluxSystem::from_weighted_reactions(
        s,
        [
            (v(&[2]), v(&[1]), q(1, 1)),
            (v(&[1]), v(&[0]), q(1, 2)),
            (v(&[1]), v(&[2]), q(1, 2)),
            (v(&[0]), v(&[2]), q(1, 2)),
        ],
    )
    .expect("valid system")
}
