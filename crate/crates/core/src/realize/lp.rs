//! Linear problems over edges between source vertices, and the
//! dense-support computation used by the graph-property procedures.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::linalg::{maximize_coordinate_with_point, solve_feasibility, FeasibilityProblem};
use crate::network::{NetworkError, ReactionNetwork};
use crate::scalar::Scalar;
use crate::weighted::{WeightKind, WeightedSystem};

/// A linear problem whose variable `i` is the weight on `pairs[i]`, an
/// ordered pair of distinct source vertices (indices into the input network).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationLp<T> {
    pub problem: FeasibilityProblem<T>,
    pub pairs: Vec<(usize, usize)>,
}

/// Ordered pairs of distinct source vertices, lexicographic.
pub fn source_pairs<T: Scalar>(net: &ReactionNetwork<T>) -> Vec<(usize, usize)> {
    let sources = net.source_vertices();
    let mut pairs = Vec::with_capacity(sources.len() * sources.len().saturating_sub(1));
    for &i in &sources {
        for &j in &sources {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Nonnegative weights on source pairs reproducing every source's outgoing
/// weighted sum: `sum_j w_ij (y_j - y_i) = sum_{i -> y} w_{i -> y} (y - y_i)`.
pub fn equivalence_lp<T: Scalar, K: WeightKind>(s: &WeightedSystem<T, K>) -> RealizationLp<T> {
    let net = s.network();
    let pairs = source_pairs(net);
    let mut problem = FeasibilityProblem::new(pairs.len());
    for i in net.source_vertices() {
        let target = s.outgoing_sum(i);
        for (c, rhs) in target.into_iter().enumerate() {
            let terms: Vec<(usize, T)> = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, _))| a == i)
                .map(|(var, &(a, b))| {
                    (
                        var,
                        net.vertex(b).coords()[c].clone() - net.vertex(a).coords()[c].clone(),
                    )
                })
                .filter(|(_, coeff)| !coeff.is_zero())
                .collect();
            problem.add_sparse_equality(&terms, rhs);
        }
    }
    RealizationLp { problem, pairs }
}

/// Adds inflow = outflow at every source vertex.
pub fn add_balance_constraints<T: Scalar>(lp: &mut RealizationLp<T>, sources: &[usize]) {
    for &v in sources {
        let terms: Vec<(usize, T)> = lp
            .pairs
            .iter()
            .enumerate()
            .filter_map(|(var, &(a, b))| {
                if a == v {
                    Some((var, T::one()))
                } else if b == v {
                    Some((var, -T::one()))
                } else {
                    None
                }
            })
            .collect();
        lp.problem.add_sparse_equality(&terms, T::zero());
    }
}

/// Adds `w_ij = w_ji` for every unordered pair.
pub fn add_symmetry_constraints<T: Scalar>(lp: &mut RealizationLp<T>) {
    for (var, &(a, b)) in lp.pairs.iter().enumerate() {
        if a < b {
            let rev = lp
                .pairs
                .iter()
                .position(|&p| p == (b, a))
                .expect("pairs are closed under reversal");
            lp.problem
                .add_sparse_equality(&[(var, T::one()), (rev, -T::one())], T::zero());
        }
    }
}

/// The system on the support of `values`, with vertices in input order.
pub fn system_from_support<T: Scalar, K: WeightKind>(
    net: &ReactionNetwork<T>,
    pairs: &[(usize, usize)],
    values: &[T],
) -> Result<WeightedSystem<T, K>, NetworkError> {
    let mut used = vec![false; net.num_vertices()];
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (&(a, b), w) in pairs.iter().zip(values) {
        if w.is_positive() {
            used[a] = true;
            used[b] = true;
            edges.push((a, b));
            weights.push(w.clone());
        }
    }
    let kept: Vec<usize> = (0..net.num_vertices()).filter(|&v| used[v]).collect();
    let mut remap = vec![usize::MAX; net.num_vertices()];
    for (new, &old) in kept.iter().enumerate() {
        remap[old] = new;
    }
    let network = ReactionNetwork::new(
        net.species().clone(),
        kept.iter().map(|&v| net.vertex(v).clone()).collect(),
        edges
            .into_iter()
            .map(|(a, b)| (remap[a], remap[b]))
            .collect(),
    )?;
    WeightedSystem::new(network, weights)
}

/// A feasible point whose support contains the support of every feasible
/// point, found by maximizing each coordinate (capped at one) in turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSupport<T> {
    pub point: Vec<T>,
    pub support: Vec<bool>,
}

/// `None` when the problem is infeasible.
pub fn dense_support<T: Scalar>(problem: &FeasibilityProblem<T>) -> Option<DenseSupport<T>> {
    let first = solve_feasibility(problem).witness()?.to_vec();
    let n = problem.num_vars();
    let mut support: Vec<bool> = first.iter().map(|v| v.is_positive()).collect();
    let mut points = vec![first];
    for var in 0..n {
        if support[var] {
            continue;
        }
        let (value, point) =
            maximize_coordinate_with_point(problem, var, T::one()).expect("problem was feasible");
        if value.is_positive() {
            for (s, v) in support.iter_mut().zip(&point) {
                *s |= v.is_positive();
            }
            points.push(point);
        }
    }
    // A convex combination of feasible points is feasible, and its support
    // is the union of theirs.
    let count = T::from_int(points.len() as i64);
    let point = (0..n)
        .map(|i| points.iter().fold(T::zero(), |acc, p| acc + p[i].clone()) / count.clone())
        .collect();
    Some(DenseSupport { point, support })
}

/// Support pairs that do not lie on a directed cycle of the support graph.
pub fn pairs_off_cycles(pairs: &[(usize, usize)], support: &[bool]) -> Vec<usize> {
    let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut g: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (&(a, b), &on) in pairs.iter().zip(support) {
        if on {
            g.add_edge(nodes[a], nodes[b], ());
        }
    }
    let mut comp = vec![0; n];
    for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for node in scc {
            comp[node.index()] = c;
        }
    }
    pairs
        .iter()
        .zip(support)
        .enumerate()
        .filter(|(_, (&(a, b), &on))| on && comp[a] != comp[b])
        .map(|(var, _)| var)
        .collect()
}

/// Support pairs whose reverse pair is outside the support.
pub fn pairs_without_reverse(pairs: &[(usize, usize)], support: &[bool]) -> Vec<usize> {
    pairs
        .iter()
        .zip(support)
        .enumerate()
        .filter(|(_, (&(a, b), &on))| {
            on && !pairs.iter().zip(support).any(|(&p, &s)| s && p == (b, a))
        })
        .map(|(var, _)| var)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::SignConstraint;
    use crate::Rational;
    use num_traits::Signed;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn pairs_are_over_sources() {
        let net = fixtures::square_sources_network();
        let pairs = source_pairs(&net);
        assert_eq!(pairs.len(), 12);
        assert!(pairs.iter().all(|&(a, b)| a < 4 && b < 4 && a != b));
    }

    #[test]
    fn equivalence_lp_accepts_the_input_on_its_own_sources() {
        let f = fixtures::cb_flux_xy();
        let lp = equivalence_lp(&f);
        let w: Vec<Rational> = lp
            .pairs
            .iter()
            .map(|&(a, b)| {
                f.network()
                    .edge_index(a, b)
                    .map_or(q(0), |e| f.weight(e).clone())
            })
            .collect();
        assert!(lp.problem.is_satisfied_by(&w));
    }

    #[test]
    fn dense_support_is_maximal() {
        // v0 + v1 = 1, v2 = 0.
        let mut p = FeasibilityProblem::new(3);
        p.add_equality(vec![q(1), q(1), q(0)], q(1));
        p.fix(2, q(0));
        let d = dense_support(&p).unwrap();
        assert_eq!(d.support, vec![true, true, false]);
        assert!(p.is_satisfied_by(&d.point));
        assert!(d.point.iter().take(2).all(|v| v.is_positive()));

        let mut bad = FeasibilityProblem::new(1);
        bad.set_sign(0, SignConstraint::AtLeastOne);
        bad.fix(0, q(0));
        assert!(dense_support(&bad).is_none());
    }

    #[test]
    fn cycle_and_reverse_filters() {
        let pairs = vec![(0, 1), (1, 0), (1, 2), (2, 0), (0, 2)];
        let all = vec![true; 5];
        assert!(pairs_off_cycles(&pairs, &all).is_empty());
        let some = vec![true, false, true, false, false];
        assert_eq!(pairs_off_cycles(&pairs, &some), vec![0, 2]);
        assert_eq!(pairs_without_reverse(&pairs, &all), vec![2]);
    }
}
