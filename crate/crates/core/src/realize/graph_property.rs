//! Weakly reversible and reversible realizations of mass-action systems.
//!
//! The feasible set of rates on source pairs is a polyhedron, so it has a
//! point whose support contains every other feasible support. If some
//! feasible point has weakly reversible (or reversible) support, that support
//! lies inside the dense one and consists of edges on cycles (or edges with
//! reverses) of it. Pinning every dense-support edge that fails this to zero
//! therefore never removes a realization, and iterating to a fixpoint either
//! leaves a dense support with the property or an infeasible problem.

use super::lp::{
    dense_support, equivalence_lp, pairs_off_cycles, pairs_without_reverse, system_from_support,
};
use super::result::{
    verify_mass_action_realization, Certificate, Outcome, Realization, RealizationResult, Target,
};
use crate::linalg::{solve_feasibility, FeasibilityProblem, SignConstraint};
use crate::scalar::Scalar;
use crate::weighted::{MassActionSystem, Rate};

/// Per-edge scaling `alpha >= 1` such that `alpha k` is complex-balanced on
/// the network of `m`. Exists iff that network is weakly reversible.
pub fn scaling_certificate<T: Scalar>(m: &MassActionSystem<T>) -> Option<Vec<T>> {
    let net = m.network();
    let mut p = FeasibilityProblem::new(net.num_edges());
    for e in 0..net.num_edges() {
        p.set_sign(e, SignConstraint::AtLeastOne);
    }
    for v in 0..net.num_vertices() {
        let mut terms: Vec<(usize, T)> =
            net.out_edges(v).map(|e| (e, m.weight(e).clone())).collect();
        terms.extend(net.in_edges(v).map(|e| (e, -m.weight(e).clone())));
        p.add_sparse_equality(&terms, T::zero());
    }
    solve_feasibility(&p).witness().map(<[T]>::to_vec)
}

fn realize_by_trimming<T: Scalar>(
    m: &MassActionSystem<T>,
    target: Target,
) -> RealizationResult<T, Rate> {
    let lp = equivalence_lp(m);
    let mut problem = lp.problem.clone();
    let mut certificate = Certificate {
        lp_variables: problem.num_vars(),
        ..Certificate::default()
    };
    let mut previous: Option<Vec<bool>> = None;
    let dense = loop {
        certificate.iterations += 1;
        let Some(dense) = dense_support(&problem) else {
            certificate.lp_equalities = problem.num_equalities();
            return RealizationResult {
                outcome: Outcome::Infeasible,
                certificate,
            };
        };
        if let Some(prev) = &previous {
            debug_assert!(
                dense
                    .support
                    .iter()
                    .zip(prev)
                    .all(|(now, before)| !now || *before),
                "dense support only shrinks"
            );
        }
        let trimmed = match target {
            Target::WeaklyReversible => pairs_off_cycles(&lp.pairs, &dense.support),
            Target::Reversible => pairs_without_reverse(&lp.pairs, &dense.support),
            _ => unreachable!("balance targets use the flux procedures"),
        };
        if trimmed.is_empty() {
            break dense;
        }
        for var in trimmed {
            problem.fix(var, T::zero());
        }
        previous = Some(dense.support);
    };
    certificate.lp_equalities = problem.num_equalities();
    let system: MassActionSystem<T> = system_from_support(m.network(), &lp.pairs, &dense.point)
        .expect("support of a witness is a valid network");
    let alpha = scaling_certificate(&system);
    let realization = Realization {
        system,
        state: None,
        alpha,
    };
    certificate.checks = verify_mass_action_realization(m, &realization, target);
    RealizationResult {
        outcome: Outcome::Found(realization),
        certificate,
    }
}

/// Decides whether `m` is dynamically equivalent to a weakly reversible
/// mass-action system. Complete over the source vertices of `m`.
pub fn realize_ma_wr<T: Scalar>(m: &MassActionSystem<T>) -> RealizationResult<T, Rate> {
    realize_by_trimming(m, Target::WeaklyReversible)
}

/// Decides whether `m` is dynamically equivalent to a reversible mass-action
/// system. Complete over the source vertices of `m`.
pub fn realize_ma_rev<T: Scalar>(m: &MassActionSystem<T>) -> RealizationResult<T, Rate> {
    realize_by_trimming(m, Target::Reversible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::realize::{check_dynamical_equivalence, Status};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn square_sources_are_weakly_reversible_realizable() {
        for k in [[1, 1, 1, 1], [2, 3, 5, 7], [25, 1, 1, 1], [1, 100, 3, 1]] {
            let m = fixtures::square_sources_mass_action(k.map(|v| q(v, 1)));
            let r = realize_ma_wr(&m);
            assert_eq!(r.status(), Status::Found, "k = {k:?}");
            assert!(r.certificate.all_passed(), "{:?}", r.certificate);
            let real = r.realization().unwrap();
            assert!(real.system.network().is_weakly_reversible());
            assert!(real.alpha.is_some());
        }
    }

    #[test]
    fn weakly_reversible_input_is_found() {
        let f = fixtures::cb_flux_xy();
        let m = f.reinterpret::<Rate>();
        let r = realize_ma_wr(&m);
        assert!(r.is_found() && r.certificate.all_passed());
        let r = realize_ma_rev(&m);
        assert!(r.certificate.all_passed());
    }

    #[test]
    fn reversible_realization_verifies() {
        let m = fixtures::square_sources_mass_action([q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        let r = realize_ma_rev(&m);
        assert!(r.is_found());
        let real = r.realization().unwrap();
        assert!(real.system.network().is_reversible());
        assert!(check_dynamical_equivalence(&m, &real.system).unwrap());
    }

    #[test]
    fn lotka_volterra_is_not_weakly_reversible_realizable() {
        // Both X -> 2X and Y -> 0 point out of the cone spanned by the other
        // source differences.
        let m = fixtures::lotka_volterra(q(1, 1), q(1, 1), q(1, 1));
        assert_eq!(realize_ma_wr(&m).status(), Status::Infeasible);
        assert_eq!(realize_ma_rev(&m).status(), Status::Infeasible);
    }

    #[test]
    fn scaling_certificate_needs_cycles() {
        let m = fixtures::single_reaction(q(1, 1));
        assert!(scaling_certificate(&m).is_none());
        let cb = fixtures::cb_flux_xy().reinterpret::<Rate>();
        let alpha = scaling_certificate(&cb).unwrap();
        assert!(crate::realize::alpha_balances(&cb, &alpha));
    }
}
