//! Complex- and detailed-balanced realizations of flux systems, and their
//! lift to mass-action systems at a fixed state.

use super::lp::{
    add_balance_constraints, add_symmetry_constraints, equivalence_lp, system_from_support,
    RealizationLp,
};
use super::result::{
    verify_flux_realization, verify_mass_action_realization, Certificate, Outcome, Realization,
    RealizationResult, Target,
};
use crate::linalg::{solve_feasibility, FeasibilityOutcome};
use crate::network::NetworkError;
use crate::scalar::Scalar;
use crate::weighted::{Flux, FluxSystem, MassActionSystem, Rate, State};

/// The linear problem for a balanced flux realization on the source
/// vertices of `f`. `target` must be complex- or detailed-balanced.
pub fn flux_realization_lp<T: Scalar>(f: &FluxSystem<T>, target: Target) -> RealizationLp<T> {
    let mut lp = equivalence_lp(f);
    add_balance_constraints(&mut lp, &f.network().source_vertices());
    if target == Target::DetailedBalanced {
        add_symmetry_constraints(&mut lp);
    }
    lp
}

fn realize_flux<T: Scalar>(f: &FluxSystem<T>, target: Target) -> RealizationResult<T, Flux> {
    let lp = flux_realization_lp(f, target);
    let mut certificate = Certificate {
        lp_variables: lp.problem.num_vars(),
        lp_equalities: lp.problem.num_equalities(),
        iterations: 1,
        ..Certificate::default()
    };
    let outcome = match solve_feasibility(&lp.problem) {
        FeasibilityOutcome::Feasible(w) => {
            let system = system_from_support(f.network(), &lp.pairs, &w)
                .expect("support of a witness is a valid network");
            certificate.checks = verify_flux_realization(f, &system, target);
            Outcome::Found(Realization {
                system,
                state: None,
                alpha: None,
            })
        }
        FeasibilityOutcome::Infeasible => Outcome::Infeasible,
    };
    RealizationResult {
        outcome,
        certificate,
    }
}

/// Decides whether `f` is flux equivalent to a complex-balanced flux system.
/// Complete: any such system can be taken on the source vertices of `f`.
pub fn realize_flux_cb<T: Scalar>(f: &FluxSystem<T>) -> RealizationResult<T, Flux> {
    realize_flux(f, Target::ComplexBalanced)
}

/// Decides whether `f` is flux equivalent to a detailed-balanced flux system.
pub fn realize_flux_db<T: Scalar>(f: &FluxSystem<T>) -> RealizationResult<T, Flux> {
    realize_flux(f, Target::DetailedBalanced)
}

/// Lifts a flux realization back to rates, `k' = J' / x0^y`.
fn lift<T: Scalar>(
    input: &MassActionSystem<T>,
    x0: &State<T>,
    flux: RealizationResult<T, Flux>,
    target: Target,
) -> Result<RealizationResult<T, Rate>, NetworkError> {
    let RealizationResult {
        outcome,
        mut certificate,
    } = flux;
    let outcome = match outcome {
        Outcome::Found(r) => {
            let net = r.system.network();
            let mut rates = Vec::with_capacity(net.num_edges());
            for (e, &(s, _)) in net.edges().iter().enumerate() {
                let m = x0.exact_monomial(net.vertex(s), s)?;
                rates.push(r.system.weight(e).clone() / m);
            }
            let system = MassActionSystem::new(net.clone(), rates)?;
            let realization = Realization {
                system,
                state: Some(x0.clone()),
                alpha: None,
            };
            certificate.checks = verify_mass_action_realization(input, &realization, target);
            Outcome::Found(realization)
        }
        Outcome::Infeasible => Outcome::Infeasible,
        Outcome::Unknown => Outcome::Unknown,
    };
    Ok(RealizationResult {
        outcome,
        certificate,
    })
}

/// Decides whether `m` is dynamically equivalent to a mass-action system
/// having `x0` as a complex-balanced steady state.
pub fn realize_ma_cb_at_state<T: Scalar>(
    m: &MassActionSystem<T>,
    x0: &State<T>,
) -> Result<RealizationResult<T, Rate>, NetworkError> {
    let f = m.flux_from_state(x0)?;
    lift(m, x0, realize_flux_cb(&f), Target::ComplexBalanced)
}

/// As [`realize_ma_cb_at_state`], with `x0` a detailed-balanced steady state.
pub fn realize_ma_db_at_state<T: Scalar>(
    m: &MassActionSystem<T>,
    x0: &State<T>,
) -> Result<RealizationResult<T, Rate>, NetworkError> {
    let f = m.flux_from_state(x0)?;
    lift(m, x0, realize_flux_db(&f), Target::DetailedBalanced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::realize::{check_flux_equivalence, Status};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn square_flux(j: [i64; 4]) -> FluxSystem<Rational> {
        fixtures::square_sources_flux(j.map(|v| q(v, 1)))
    }

    #[test]
    fn square_sources_flux_region() {
        let r = realize_flux_cb(&square_flux([1, 1, 1, 1]));
        assert_eq!(r.status(), Status::Found);
        assert!(r.certificate.all_passed());
        let sys = &r.realization().unwrap().system;
        // Every realized vertex is one of the four corners.
        assert!(sys
            .network()
            .vertices()
            .iter()
            .all(|y| y.coords().iter().all(|c| {
                let c = c.to_int().unwrap();
                c == 0 || c == 2 || c == 3
            })));
        assert_eq!(
            realize_flux_cb(&square_flux([1, 2, 1, 1])).status(),
            Status::Infeasible
        );
        assert_eq!(
            realize_flux_cb(&square_flux([5, 1, 5, 1])).status(),
            Status::Found
        );
        assert_eq!(
            realize_flux_cb(&square_flux([6, 1, 6, 1])).status(),
            Status::Infeasible
        );
        assert_eq!(
            realize_flux_cb(&square_flux([1, 5, 1, 5])).status(),
            Status::Found
        );
    }

    #[test]
    fn already_balanced_input_is_found() {
        let f = fixtures::cb_flux_xy();
        let r = realize_flux_cb(&f);
        assert!(r.is_found() && r.certificate.all_passed());
        let g = &r.realization().unwrap().system;
        assert!(check_flux_equivalence(&f, g).unwrap());
    }

    #[test]
    fn detailed_balanced_realizations_verify() {
        for j in [[1, 1, 1, 1], [2, 1, 2, 1], [1, 3, 1, 3]] {
            let r = realize_flux_db(&square_flux(j));
            if let Some(real) = r.realization() {
                assert!(real.system.is_detailed_balanced());
                assert!(r.certificate.all_passed());
            }
        }
        let r = realize_flux_db(&square_flux([1, 2, 1, 1]));
        assert_eq!(r.status(), Status::Infeasible);
    }

    #[test]
    fn mass_action_at_state() {
        let (m, x0) = fixtures::cb_mass_action_xy();
        let r = realize_ma_cb_at_state(&m, &x0).unwrap();
        assert!(r.is_found());
        assert!(r.certificate.all_passed());
        let real = r.realization().unwrap();
        assert!(real.system.classify_state(&x0).unwrap().is_complex_balanced);

        let lv = fixtures::lotka_volterra(q(1, 1), q(1, 1), q(1, 1));
        let r = realize_ma_cb_at_state(&lv, &State::ones(2)).unwrap();
        assert_eq!(r.status(), Status::Infeasible);
    }
}
