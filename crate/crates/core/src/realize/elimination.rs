//! Removal of virtual sources.
//!
//! All four variants share one update: for every in-edge `z -> y*` with
//! weight `a` and out-edge `y* -> y` with weight `b`, the edge `z -> y` gains
//! `a b / B`, where `B` is the total weight leaving `y*`. Edges incident to
//! `y*` are removed and redirected self-loops `z -> z` are dropped. The
//! variants differ only in the precondition they enforce.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::network::{NetworkError, ReactionNetwork, Vertex};
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, WeightKind, WeightedSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminationError {
    #[error("vertex {0} is not in the network")]
    VertexNotFound(String),
    #[error("vertex {0} is not a virtual source")]
    NotVirtualSource(String),
    #[error("system is not complex-balanced")]
    NotComplexBalanced,
    #[error("system is not detailed-balanced")]
    NotDetailedBalanced,
    #[error("network is not weakly reversible")]
    NotWeaklyReversible,
    #[error("network is not reversible")]
    NotReversible,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Which elimination to apply; each has its own precondition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EliminationVariant {
    FluxComplexBalanced,
    FluxDetailedBalanced,
    MassActionWeaklyReversible,
    MassActionReversible,
}

/// Weight change on one edge, keyed by endpoint coordinates. Absent edges
/// have weight zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDelta<T> {
    pub source: Vertex<T>,
    pub target: Vertex<T>,
    pub before: T,
    pub after: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationReport<T> {
    pub removed: Vertex<T>,
    /// Potential of every vertex of the input.
    pub potentials_before: Vec<(Vertex<T>, T)>,
    /// Potential of every vertex of the result.
    pub potentials_after: Vec<(Vertex<T>, T)>,
    /// Every edge whose weight changed, ordered by (source, target).
    pub deltas: Vec<EdgeDelta<T>>,
    /// Redirected self-loops `z -> z` that were discarded, with their weight.
    pub dropped_self_loops: Vec<(Vertex<T>, T)>,
}

fn potentials<T: Scalar, K: WeightKind>(s: &WeightedSystem<T, K>) -> Vec<(Vertex<T>, T)> {
    let net = s.network();
    (0..net.num_vertices())
        .map(|v| (net.vertex(v).clone(), s.net_inflow(v)))
        .collect()
}

fn locate<T: Scalar, K: WeightKind>(
    s: &WeightedSystem<T, K>,
    y: &Vertex<T>,
) -> Result<usize, EliminationError> {
    let v = s
        .network()
        .vertex_index(y)
        .ok_or_else(|| EliminationError::VertexNotFound(y.to_string()))?;
    if !s.virtual_sources().contains(&v) {
        return Err(EliminationError::NotVirtualSource(y.to_string()));
    }
    Ok(v)
}

/// The shared update, without precondition checks beyond `y` being a
/// virtual source.
fn eliminate<T: Scalar, K: WeightKind>(
    s: &WeightedSystem<T, K>,
    v: usize,
) -> Result<(WeightedSystem<T, K>, EliminationReport<T>), EliminationError> {
    let net = s.network();
    let total_out = net
        .out_edges(v)
        .fold(T::zero(), |a, e| a + s.weight(e).clone());

    // Edge weights keyed by (source, target) vertex index, in input order.
    let mut weights: BTreeMap<(usize, usize), T> = BTreeMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (e, &(a, b)) in net.edges().iter().enumerate() {
        if a != v && b != v {
            weights.insert((a, b), s.weight(e).clone());
            order.push((a, b));
        }
    }
    let mut dropped: BTreeMap<usize, T> = BTreeMap::new();
    for ein in net.in_edges(v) {
        let (z, _) = net.edges()[ein];
        let alpha = s.weight(ein).clone();
        for eout in net.out_edges(v) {
            let (_, y) = net.edges()[eout];
            let add = alpha.clone() * s.weight(eout).clone() / total_out.clone();
            if z == y {
                let w = dropped.entry(z).or_insert_with(T::zero);
                *w = w.clone() + add;
                continue;
            }
            match weights.get_mut(&(z, y)) {
                Some(w) => *w = w.clone() + add,
                None => {
                    weights.insert((z, y), add);
                    order.push((z, y));
                }
            }
        }
    }

    // Keep the input vertex order, minus y* and anything left isolated.
    let mut incident = vec![false; net.num_vertices()];
    for &(a, b) in &order {
        incident[a] = true;
        incident[b] = true;
    }
    let kept: Vec<usize> = (0..net.num_vertices()).filter(|&i| incident[i]).collect();
    let mut remap = vec![usize::MAX; net.num_vertices()];
    for (new, &old) in kept.iter().enumerate() {
        remap[old] = new;
    }
    let network = ReactionNetwork::new(
        net.species().clone(),
        kept.iter().map(|&i| net.vertex(i).clone()).collect(),
        order.iter().map(|&(a, b)| (remap[a], remap[b])).collect(),
    )?;
    let result = WeightedSystem::new(network, order.iter().map(|k| weights[k].clone()).collect())?;

    let mut deltas = Vec::new();
    let mut keys: Vec<(usize, usize)> = net.edges().to_vec();
    keys.extend(order.iter().filter(|k| net.edge_index(k.0, k.1).is_none()));
    keys.sort_by(|x, y| {
        (net.vertex(x.0), net.vertex(x.1)).cmp(&(net.vertex(y.0), net.vertex(y.1)))
    });
    for (a, b) in keys {
        let before = net
            .edge_index(a, b)
            .map_or_else(T::zero, |e| s.weight(e).clone());
        let after = weights.get(&(a, b)).cloned().unwrap_or_else(T::zero);
        if before != after {
            deltas.push(EdgeDelta {
                source: net.vertex(a).clone(),
                target: net.vertex(b).clone(),
                before,
                after,
            });
        }
    }
    let report = EliminationReport {
        removed: net.vertex(v).clone(),
        potentials_before: potentials(s),
        potentials_after: potentials(&result),
        deltas,
        dropped_self_loops: dropped
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(z, w)| (net.vertex(z).clone(), w))
            .collect(),
    };
    Ok((result, report))
}

/// Removes the virtual source `y` from a complex-balanced flux system,
/// preserving flux equivalence, complex balance and every retained potential.
pub fn eliminate_virtual_source_flux_cb<T: Scalar>(
    f: &FluxSystem<T>,
    y: &Vertex<T>,
) -> Result<(FluxSystem<T>, EliminationReport<T>), EliminationError> {
    let v = locate(f, y)?;
    if !f.is_complex_balanced() {
        return Err(EliminationError::NotComplexBalanced);
    }
    eliminate(f, v)
}

/// Removes the virtual source `y` from a detailed-balanced flux system; the
/// update is symmetric, so detailed balance is preserved.
pub fn eliminate_virtual_source_flux_db<T: Scalar>(
    f: &FluxSystem<T>,
    y: &Vertex<T>,
) -> Result<(FluxSystem<T>, EliminationReport<T>), EliminationError> {
    let v = locate(f, y)?;
    if !f.is_detailed_balanced() {
        return Err(EliminationError::NotDetailedBalanced);
    }
    eliminate(f, v)
}

/// Removes the virtual source `y` from a weakly reversible mass-action
/// system, preserving dynamics and weak reversibility.
pub fn eliminate_virtual_source_ma_wr<T: Scalar>(
    m: &MassActionSystem<T>,
    y: &Vertex<T>,
) -> Result<(MassActionSystem<T>, EliminationReport<T>), EliminationError> {
    let v = locate(m, y)?;
    if !m.network().is_weakly_reversible() {
        return Err(EliminationError::NotWeaklyReversible);
    }
    eliminate(m, v)
}

/// Removes the virtual source `y` from a reversible mass-action system,
/// preserving dynamics and reversibility.
pub fn eliminate_virtual_source_ma_rev<T: Scalar>(
    m: &MassActionSystem<T>,
    y: &Vertex<T>,
) -> Result<(MassActionSystem<T>, EliminationReport<T>), EliminationError> {
    let v = locate(m, y)?;
    if !m.network().is_reversible() {
        return Err(EliminationError::NotReversible);
    }
    eliminate(m, v)
}

/// Applies `variant` to `s` at `y`, reinterpreting weights as needed.
pub fn eliminate_with<T: Scalar, K: WeightKind>(
    s: &WeightedSystem<T, K>,
    y: &Vertex<T>,
    variant: EliminationVariant,
) -> Result<(WeightedSystem<T, K>, EliminationReport<T>), EliminationError> {
    let v = locate(s, y)?;
    let net = s.network();
    let as_flux = || s.clone().reinterpret::<crate::weighted::Flux>();
    match variant {
        EliminationVariant::FluxComplexBalanced if !as_flux().is_complex_balanced() => {
            return Err(EliminationError::NotComplexBalanced)
        }
        EliminationVariant::FluxDetailedBalanced if !as_flux().is_detailed_balanced() => {
            return Err(EliminationError::NotDetailedBalanced)
        }
        EliminationVariant::MassActionWeaklyReversible if !net.is_weakly_reversible() => {
            return Err(EliminationError::NotWeaklyReversible)
        }
        EliminationVariant::MassActionReversible if !net.is_reversible() => {
            return Err(EliminationError::NotReversible)
        }
        _ => {}
    }
    eliminate(s, v)
}

/// The final system with one report per eliminated vertex.
pub type EliminationTrace<T, K> = (WeightedSystem<T, K>, Vec<EliminationReport<T>>);

/// Eliminates virtual sources one at a time, smallest vertex index first,
/// until none remain.
pub fn eliminate_all_virtual_sources<T: Scalar, K: WeightKind>(
    s: &WeightedSystem<T, K>,
    variant: EliminationVariant,
) -> Result<EliminationTrace<T, K>, EliminationError> {
    let mut current = s.clone();
    let mut reports = Vec::new();
    while let Some(&v) = current.virtual_sources().first() {
        let y = current.network().vertex(v).clone();
        let (next, report) = eliminate_with(&current, &y, variant)?;
        current = next;
        reports.push(report);
    }
    Ok((current, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::SpeciesList;
    use crate::realize::{check_dynamical_equivalence, check_flux_equivalence};
    use crate::{QFluxSystem, QVertex, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn v1(c: i64) -> QVertex {
        QVertex::from_ints(&[c])
    }

    #[test]
    fn one_dimensional_cb() {
        let f = fixtures::one_dimensional_cb_flux();
        let (g, report) = eliminate_virtual_source_flux_cb(&f, &v1(1)).unwrap();
        let expected: QFluxSystem = FluxSystem::from_weighted_reactions(
            SpeciesList::new(["S"]).unwrap(),
            [(v1(2), v1(0), q(1, 2)), (v1(0), v1(2), q(1, 2))],
        )
        .unwrap();
        assert!(check_flux_equivalence(&g, &expected).unwrap());
        assert_eq!(g.network().num_edges(), 2);
        assert_eq!(g.weight_between(&v1(2), &v1(0)), q(1, 2));
        assert_eq!(report.dropped_self_loops, vec![(v1(2), q(1, 2))]);
        assert!(g.is_complex_balanced());
        assert!(g.network().vertex_index(&v1(1)).is_none());
        for (y, p) in &report.potentials_after {
            let before = report
                .potentials_before
                .iter()
                .find(|(z, _)| z == y)
                .unwrap();
            assert_eq!(&before.1, p);
        }
    }

    #[test]
    fn path_contraction() {
        // 1 is the midpoint of 0 and 2 and its two out-edges balance.
        let s = SpeciesList::new(["S"]).unwrap();
        let f: QFluxSystem = FluxSystem::from_weighted_reactions(
            s,
            [
                (v1(0), v1(1), q(2, 1)),
                (v1(1), v1(0), q(1, 1)),
                (v1(1), v1(2), q(1, 1)),
                (v1(2), v1(0), q(1, 1)),
            ],
        )
        .unwrap();
        assert!(f.is_complex_balanced());
        let (g, report) = eliminate_virtual_source_flux_cb(&f, &v1(1)).unwrap();
        assert_eq!(g.weight_between(&v1(0), &v1(2)), q(1, 1));
        assert_eq!(report.dropped_self_loops, vec![(v1(0), q(1, 1))]);
        assert!(check_flux_equivalence(&f, &g).unwrap());
    }

    #[test]
    fn rejects_non_virtual_source_and_missing_vertex() {
        let f = fixtures::one_dimensional_cb_flux();
        assert!(matches!(
            eliminate_virtual_source_flux_cb(&f, &v1(2)),
            Err(EliminationError::NotVirtualSource(_))
        ));
        assert!(matches!(
            eliminate_virtual_source_flux_cb(&f, &v1(7)),
            Err(EliminationError::VertexNotFound(_))
        ));
        let m = fixtures::lotka_volterra(q(1, 1), q(1, 1), q(1, 1));
        assert!(matches!(
            eliminate_virtual_source_ma_rev(&m, &QVertex::from_ints(&[1, 0])),
            Err(EliminationError::NotVirtualSource(_))
        ));
    }

    #[test]
    fn reversible_star() {
        // Two reversible neighbours 0 and 2 around the virtual source 1.
        let s = SpeciesList::new(["S"]).unwrap();
        let (a, b, c, d) = (q(2, 1), q(3, 1), q(5, 1), q(5, 1));
        let m: MassActionSystem<Rational> = MassActionSystem::from_weighted_reactions(
            s,
            [
                (v1(0), v1(1), a.clone()),
                (v1(1), v1(0), c.clone()),
                (v1(2), v1(1), b.clone()),
                (v1(1), v1(2), d.clone()),
            ],
        )
        .unwrap();
        let (g, _) = eliminate_virtual_source_ma_rev(&m, &v1(1)).unwrap();
        let total = c.clone() + d.clone();
        assert_eq!(g.weight_between(&v1(0), &v1(2)), a * d / total.clone());
        assert_eq!(g.weight_between(&v1(2), &v1(0)), b * c / total);
        assert!(g.network().is_reversible());
        assert!(check_dynamical_equivalence(&m, &g).unwrap());
    }

    #[test]
    fn eliminate_all_terminates() {
        let f = fixtures::one_dimensional_cb_flux();
        let (g, reports) =
            eliminate_all_virtual_sources(&f, EliminationVariant::FluxComplexBalanced).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(g.virtual_sources().is_empty());
    }
}
