//! Edge-weighted networks: flux systems and mass-action systems, plus the
//! positive states at which mass-action systems are evaluated.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::Zero;

use crate::network::{NetworkError, ReactionNetwork, Vertex};
use crate::scalar::Scalar;

/// Marker for flux weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flux {}

/// Marker for mass-action rate constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rate {}

pub trait WeightKind: Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const NAME: &'static str;
}

impl WeightKind for Flux {
    const NAME: &'static str = "flux";
}

impl WeightKind for Rate {
    const NAME: &'static str = "mass-action";
}

/// A network with one positive weight per edge. Edges not in the network
/// carry weight zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSystem<T, K> {
    network: ReactionNetwork<T>,
    weights: Vec<T>,
    _kind: PhantomData<K>,
}

/// A network with a positive flux on every edge.
pub type FluxSystem<T> = WeightedSystem<T, Flux>;

/// A network with a positive rate constant on every edge.
pub type MassActionSystem<T> = WeightedSystem<T, Rate>;

impl<T: Scalar, K: WeightKind> WeightedSystem<T, K> {
    pub fn new(network: ReactionNetwork<T>, weights: Vec<T>) -> Result<Self, NetworkError> {
        if weights.len() != network.num_edges() {
            return Err(NetworkError::WeightCount {
                expected: network.num_edges(),
                got: weights.len(),
            });
        }
        if let Some(edge) = weights.iter().position(|w| !w.is_positive()) {
            return Err(NetworkError::NonPositiveWeight { edge });
        }
        Ok(Self {
            network,
            weights,
            _kind: PhantomData,
        })
    }

    /// Builds a system from weighted (source, target) complex pairs.
    pub fn from_weighted_reactions(
        species: crate::network::SpeciesList,
        reactions: impl IntoIterator<Item = (Vertex<T>, Vertex<T>, T)>,
    ) -> Result<Self, NetworkError> {
        let (pairs, weights): (Vec<_>, Vec<_>) =
            reactions.into_iter().map(|(s, t, w)| ((s, t), w)).unzip();
        let network = ReactionNetwork::from_reactions(species, pairs)?;
        Self::new(network, weights)
    }

    pub fn network(&self) -> &ReactionNetwork<T> {
        &self.network
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> &T {
        &self.weights[edge]
    }

    /// Weight on `source -> target`, zero when the edge is absent.
    pub fn weight_between(&self, source: &Vertex<T>, target: &Vertex<T>) -> T {
        let s = self.network.vertex_index(source);
        let t = self.network.vertex_index(target);
        match (s, t) {
            (Some(s), Some(t)) => self
                .network
                .edge_index(s, t)
                .map_or_else(T::zero, |e| self.weights[e].clone()),
            _ => T::zero(),
        }
    }

    pub fn into_parts(self) -> (ReactionNetwork<T>, Vec<T>) {
        (self.network, self.weights)
    }

    /// Reinterprets the same weights under another kind.
    pub fn reinterpret<K2: WeightKind>(self) -> WeightedSystem<T, K2> {
        WeightedSystem {
            network: self.network,
            weights: self.weights,
            _kind: PhantomData,
        }
    }

    /// Weighted sum of reaction vectors leaving vertex `v`.
    pub fn outgoing_sum(&self, v: usize) -> Vec<T> {
        let mut acc = vec![T::zero(); self.network.dim()];
        for e in self.network.out_edges(v) {
            let w = &self.weights[e];
            for (a, r) in acc.iter_mut().zip(self.network.reaction_vector(e)) {
                *a = a.clone() + w.clone() * r;
            }
        }
        acc
    }

    /// Outgoing weighted sums keyed by vertex coordinates, over source vertices.
    pub fn outgoing_sums_by_vertex(&self) -> BTreeMap<Vertex<T>, Vec<T>> {
        self.network
            .source_vertices()
            .into_iter()
            .map(|v| (self.network.vertex(v).clone(), self.outgoing_sum(v)))
            .collect()
    }

    /// Sum of weights entering minus sum leaving `v`.
    pub fn net_inflow(&self, v: usize) -> T {
        let inflow = self
            .network
            .in_edges(v)
            .fold(T::zero(), |a, e| a + self.weights[e].clone());
        let outflow = self
            .network
            .out_edges(v)
            .fold(T::zero(), |a, e| a + self.weights[e].clone());
        inflow - outflow
    }

    /// Source vertices whose outgoing weighted reaction vectors cancel.
    pub fn virtual_sources(&self) -> Vec<usize> {
        self.network
            .source_vertices()
            .into_iter()
            .filter(|&v| self.outgoing_sum(v).iter().all(Zero::is_zero))
            .collect()
    }

    /// `sum_e w_e (y'_e - y_e)`.
    pub fn weighted_reaction_sum(&self) -> Vec<T> {
        let mut acc = vec![T::zero(); self.network.dim()];
        for (e, w) in self.weights.iter().enumerate() {
            for (a, r) in acc.iter_mut().zip(self.network.reaction_vector(e)) {
                *a = a.clone() + w.clone() * r;
            }
        }
        acc
    }
}

/// A positive point of the orthant, stored as `x_j = base_j^(1/root_j)`.
///
/// Plain rational states have every root equal to one. Radical coordinates
/// let states whose monomials are rational at the relevant vertices be
/// represented exactly even when the coordinates themselves are not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State<T> {
    base: Vec<T>,
    roots: Vec<u32>,
}

/// Value of a monomial `x^y`.
#[derive(Clone, Debug, PartialEq)]
pub enum Monomial<T> {
    Exact(T),
    Approx(f64),
}

impl<T: Scalar> Monomial<T> {
    pub fn to_f64(&self) -> f64 {
        match self {
            Monomial::Exact(v) => v.to_f64(),
            Monomial::Approx(v) => *v,
        }
    }
}

impl<T: Scalar> State<T> {
    pub fn new(values: Vec<T>) -> Result<Self, NetworkError> {
        let roots = vec![1; values.len()];
        Self::with_roots(values, roots)
    }

    /// `x_j = base_j^(1/roots_j)`; every base must be positive and every
    /// root at least one.
    pub fn with_roots(base: Vec<T>, roots: Vec<u32>) -> Result<Self, NetworkError> {
        if roots.len() != base.len() {
            return Err(NetworkError::StateDimension {
                expected: base.len(),
                got: roots.len(),
            });
        }
        if let Some(index) = base.iter().position(|v| !v.is_positive()) {
            return Err(NetworkError::NonPositiveState { index });
        }
        if let Some(index) = roots.iter().position(|&r| r == 0) {
            return Err(NetworkError::NonPositiveState { index });
        }
        // Normalize exact roots so equal states compare equal.
        let mut base = base;
        let mut roots = roots;
        for (b, r) in base.iter_mut().zip(roots.iter_mut()) {
            if *r > 1 {
                if let Some(exact) = b.exact_root(*r) {
                    *b = exact;
                    *r = 1;
                }
            }
        }
        Ok(Self { base, roots })
    }

    pub fn ones(dim: usize) -> Self {
        Self {
            base: vec![T::one(); dim],
            roots: vec![1; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[T] {
        &self.base
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    /// The coordinates, if all are rational.
    pub fn rational_values(&self) -> Option<Vec<T>> {
        self.roots
            .iter()
            .all(|&r| r == 1)
            .then(|| self.base.clone())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.base
            .iter()
            .zip(&self.roots)
            .map(|(b, &r)| b.to_f64().powf(1.0 / f64::from(r)))
            .collect()
    }

    /// `x^y`, exact whenever the result is rational.
    pub fn monomial(&self, y: &Vertex<T>) -> Monomial<T> {
        debug_assert_eq!(y.dim(), self.dim());
        let mut acc = T::one();
        for ((b, &r), e) in self.base.iter().zip(&self.roots).zip(y.coords()) {
            if e.is_zero() {
                continue;
            }
            // Exponent on the base is e / r.
            let exp = e.clone() / T::from_int(i64::from(r));
            match exact_power(b, &exp) {
                Some(v) => acc = acc * v,
                None => return Monomial::Approx(self.monomial_f64(y)),
            }
        }
        Monomial::Exact(acc)
    }

    /// `x^y` as an exact scalar, or an error naming `vertex` if irrational.
    pub fn exact_monomial(&self, y: &Vertex<T>, vertex: usize) -> Result<T, NetworkError> {
        match self.monomial(y) {
            Monomial::Exact(v) => Ok(v),
            Monomial::Approx(_) => Err(NetworkError::IrrationalMonomial { vertex }),
        }
    }

    pub fn monomial_f64(&self, y: &Vertex<T>) -> f64 {
        self.to_f64()
            .iter()
            .zip(y.coords())
            .map(|(x, e)| x.powf(e.to_f64()))
            .product()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<(), NetworkError> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(NetworkError::StateDimension {
                expected: dim,
                got: self.dim(),
            })
        }
    }
}

/// `base^exp` when rational: integer exponents always, fractional ones
/// when the matching root is exact.
fn exact_power<T: Scalar>(base: &T, exp: &T) -> Option<T> {
    if let Some(k) = exp.to_int() {
        return Some(base.powi(k));
    }
    let (p, q) = exp.to_frac()?;
    let q = u32::try_from(q).ok()?;
    Some(base.exact_root(q)?.powi(p))
}

impl<T: Scalar> fmt::Display for State<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, &r)) in self.base.iter().zip(&self.roots).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if r == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{b}^(1/{r})")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> State<T> {
    /// Parses the format produced by `Display`: comma-separated entries, each
    /// an exact rational optionally followed by `^(1/d)`.
    pub fn parse(text: &str) -> Option<Self> {
        let mut base = Vec::new();
        let mut roots = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (b, r) = match part.split_once('^') {
                Some((b, r)) => {
                    let r = r.trim().strip_prefix("(1/")?.strip_suffix(')')?;
                    (b, r.trim().parse::<u32>().ok()?)
                }
                None => (part, 1),
            };
            base.push(T::parse_exact(b)?);
            roots.push(r);
        }
        Self::with_roots(base, roots).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn weights_must_be_positive_and_match() {
        let g = crate::fixtures::lotka_volterra_network();
        let err = MassActionSystem::new(g.clone(), vec![q(1, 1); 2]).unwrap_err();
        assert_eq!(
            err,
            NetworkError::WeightCount {
                expected: 3,
                got: 2
            }
        );
        let err = MassActionSystem::new(g, vec![q(1, 1), q(0, 1), q(1, 1)]).unwrap_err();
        assert_eq!(err, NetworkError::NonPositiveWeight { edge: 1 });
    }

    #[test]
    fn state_validation() {
        assert!(State::new(vec![q(1, 1), q(0, 1)]).is_err());
        assert!(State::new(vec![q(1, 1), q(-1, 2)]).is_err());
        assert!(State::with_roots(vec![q(1, 1)], vec![0]).is_err());
        let s = State::with_roots(vec![q(4, 1), q(5, 1)], vec![2, 2]).unwrap();
        assert_eq!(s.base(), &[q(2, 1), q(5, 1)]);
        assert_eq!(s.roots(), &[1, 2]);
    }

    #[test]
    fn monomials() {
        let x = State::new(vec![q(2, 1), q(3, 1)]).unwrap();
        let y = Vertex::new(vec![q(2, 1), q(1, 1)]);
        assert_eq!(x.monomial(&y), Monomial::Exact(q(12, 1)));
        let neg = Vertex::new(vec![q(-1, 1), q(0, 1)]);
        assert_eq!(x.monomial(&neg), Monomial::Exact(q(1, 2)));
        let half = Vertex::new(vec![q(1, 2), q(0, 1)]);
        assert!(
            matches!(x.monomial(&half), Monomial::Approx(v) if (v - 2f64.sqrt()).abs() < 1e-12)
        );
        let four = State::new(vec![q(4, 1), q(1, 1)]).unwrap();
        assert_eq!(four.monomial(&half), Monomial::Exact(q(2, 1)));
    }

    #[test]
    fn radical_states() {
        // x = (5^(1/3), 5^(1/2)): x^(3,2) = 25, x^(0,2) = 5.
        let x = State::with_roots(vec![q(5, 1), q(5, 1)], vec![3, 2]).unwrap();
        assert_eq!(
            x.monomial(&Vertex::from_ints(&[3, 2])),
            Monomial::Exact(q(25, 1))
        );
        assert_eq!(
            x.monomial(&Vertex::from_ints(&[0, 2])),
            Monomial::Exact(q(5, 1))
        );
        assert!(matches!(
            x.monomial(&Vertex::from_ints(&[1, 1])),
            Monomial::Approx(_)
        ));
        assert_eq!(x.to_string(), "5^(1/3),5^(1/2)");
        assert_eq!(State::parse(&x.to_string()), Some(x));
        assert_eq!(
            State::<Rational>::parse("1/2, 3"),
            Some(State::new(vec![q(1, 2), q(3, 1)]).unwrap())
        );
        assert_eq!(State::<Rational>::parse("0,1"), None);
    }
}
