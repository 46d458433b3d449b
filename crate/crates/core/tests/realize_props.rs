//! Realization procedures on random inputs: witnesses always re-verify,
//! and known-realizable inputs are found.

use crn_core::generators;
use crn_core::linalg::{fm_oracle, solve_feasibility, FM_VARIABLE_LIMIT};
use crn_core::realize::{
    flux_realization_lp, realize_flux_cb, realize_flux_db, realize_ma_rev, realize_ma_wr,
    scaling_certificate, Status, Target,
};
use crn_core::{FluxSystem, MassActionSystem, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flux_realizations_verify(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = generators::network(&mut r, 3, 6);
        let f: FluxSystem<Rational> = generators::weighted(&mut r, net);
        for (target, result) in [
            (Target::ComplexBalanced, realize_flux_cb(&f)),
            (Target::DetailedBalanced, realize_flux_db(&f)),
        ] {
            prop_assert_ne!(result.status(), Status::Unknown);
            if result.is_found() {
                prop_assert!(result.certificate.all_passed(), "{:?}", result.certificate);
            }
            let lp = flux_realization_lp(&f, target);
            if lp.problem.num_vars() <= FM_VARIABLE_LIMIT {
                prop_assert_eq!(
                    fm_oracle(&lp.problem).unwrap().is_feasible(),
                    solve_feasibility(&lp.problem).is_feasible()
                );
            }
        }
        // Detailed balance is the stronger requirement.
        prop_assert!(!realize_flux_db(&f).is_found() || realize_flux_cb(&f).is_found());
    }

    #[test]
    fn balanced_inputs_are_found(seed in any::<u64>()) {
        let f = generators::cycle_flux(&mut rng(seed), 3, 6);
        let r = realize_flux_cb(&f);
        prop_assert!(r.is_found() && r.certificate.all_passed());
    }

    #[test]
    fn graph_realizations_verify(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = generators::network(&mut r, 3, 6);
        let m: MassActionSystem<Rational> = generators::weighted(&mut r, net);
        let wr = realize_ma_wr(&m);
        let rev = realize_ma_rev(&m);
        for res in [&wr, &rev] {
            prop_assert_ne!(res.status(), Status::Unknown);
            if res.is_found() {
                prop_assert!(res.certificate.all_passed(), "{:?}", res.certificate);
            }
        }
        prop_assert!(!rev.is_found() || wr.is_found());
    }

    /// Completeness: a weakly reversible input is always realized, and so is
    /// any system dynamically equivalent to one.
    #[test]
    fn weakly_reversible_inputs_are_found(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = generators::planted_wr_mass_action(&mut r, 3, 6).system;
        prop_assert!(scaling_certificate(&m).is_some());
        let res = realize_ma_wr(&m);
        prop_assert!(res.is_found() && res.certificate.all_passed());
        let found = &res.realization().unwrap().system;
        prop_assert!(scaling_certificate::<Rational>(found).is_some());
        let rev = generators::planted_rev_mass_action(&mut r, 3, 6).system;
        let res = realize_ma_rev(&rev);
        prop_assert!(res.is_found() && res.certificate.all_passed());
    }
}
