//! Flux and dynamical equivalence.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::network::{NetworkError, Vertex};
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, WeightKind, WeightedSystem};

/// Both systems generate the same outgoing weighted sum at every vertex of
/// either network. Vertices absent from one side contribute zero.
fn same_outgoing_sums<T: Scalar, K: WeightKind>(
    a: &WeightedSystem<T, K>,
    b: &WeightedSystem<T, K>,
) -> Result<bool, NetworkError> {
    if a.network().species() != b.network().species() {
        if a.network().dim() != b.network().dim() {
            return Err(NetworkError::SystemDimensions {
                left: a.network().dim(),
                right: b.network().dim(),
            });
        }
        return Err(NetworkError::SpeciesMismatch);
    }
    let sa = a.outgoing_sums_by_vertex();
    let sb = b.outgoing_sums_by_vertex();
    let keys: BTreeSet<&Vertex<T>> = sa.keys().chain(sb.keys()).collect();
    let same = keys.into_iter().all(|y| match (sa.get(y), sb.get(y)) {
        (Some(u), Some(v)) => u == v,
        (Some(u), None) | (None, Some(u)) => u.iter().all(Zero::is_zero),
        (None, None) => unreachable!("key comes from one of the maps"),
    });
    Ok(same)
}

/// Flux equivalence: equal outgoing weighted reaction-vector sums at every
/// vertex of `V ∪ V'`.
pub fn check_flux_equivalence<T: Scalar>(
    a: &FluxSystem<T>,
    b: &FluxSystem<T>,
) -> Result<bool, NetworkError> {
    same_outgoing_sums(a, b)
}

/// Dynamical equivalence, decided exactly through per-vertex aggregates.
/// Distinct monomials are independent on the positive orthant, so the right
/// hand sides agree iff every source's aggregate agrees.
pub fn check_dynamical_equivalence<T: Scalar>(
    a: &MassActionSystem<T>,
    b: &MassActionSystem<T>,
) -> Result<bool, NetworkError> {
    same_outgoing_sums(a, b)
}

/// Source vertices whose outgoing weighted reaction vectors sum to zero.
pub fn find_virtual_sources<T: Scalar>(f: &FluxSystem<T>) -> Vec<usize> {
    f.virtual_sources()
}

/// As [`find_virtual_sources`], weighted by rate constants.
pub fn find_virtual_sources_ma<T: Scalar>(m: &MassActionSystem<T>) -> Vec<usize> {
    m.virtual_sources()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::SpeciesList;
    use crate::{QFluxSystem, QVertex, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn one_d(edges: &[(i64, i64, Rational)]) -> QFluxSystem {
        FluxSystem::from_weighted_reactions(
            SpeciesList::new(["S"]).unwrap(),
            edges.iter().map(|(s, t, w)| {
                (
                    QVertex::from_ints(&[*s]),
                    QVertex::from_ints(&[*t]),
                    w.clone(),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn reflexive() {
        let f = fixtures::cb_flux_xy();
        assert!(check_flux_equivalence(&f, &f).unwrap());
    }

    #[test]
    fn one_dimensional_pair() {
        let a = fixtures::one_dimensional_cb_flux();
        let b = one_d(&[(2, 0, q(1, 2)), (0, 2, q(1, 2))]);
        assert!(check_flux_equivalence(&a, &b).unwrap());
        let c = one_d(&[(2, 0, q(1, 2)), (0, 2, q(1, 3))]);
        assert!(!check_flux_equivalence(&a, &c).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = fixtures::one_dimensional_cb_flux();
        let b = fixtures::cb_flux_xy();
        assert!(check_flux_equivalence(&a, &b).is_err());
    }

    #[test]
    fn single_reaction_systems_are_dynamically_equivalent() {
        for (k, k2) in [(q(1, 1), q(1, 1)), (q(3, 2), q(7, 5))] {
            let a = fixtures::single_reaction(k.clone());
            let b = fixtures::single_reaction_with_y_pair(k, k2);
            assert!(check_dynamical_equivalence(&a, &b).unwrap());
        }
        let a = fixtures::single_reaction(q(1, 1));
        let b = fixtures::single_reaction(q(2, 1));
        assert!(!check_dynamical_equivalence(&a, &b).unwrap());
    }

    #[test]
    fn virtual_sources() {
        let b = fixtures::single_reaction_with_y_pair(q(1, 1), q(2, 1));
        let vs = find_virtual_sources_ma(&b);
        assert_eq!(vs.len(), 1);
        assert_eq!(b.network().vertex(vs[0]), &QVertex::from_ints(&[0, 1]));

        let f = fixtures::one_dimensional_cb_flux();
        let vs = find_virtual_sources(&f);
        assert_eq!(
            vs.iter()
                .map(|&v| f.network().vertex(v).clone())
                .collect::<Vec<_>>(),
            vec![QVertex::from_ints(&[1])]
        );
        assert!(find_virtual_sources(&fixtures::cb_flux_xy()).is_empty());
    }
}
