//! Implications between balance notions, subspace dimensions and the two
//! deficiency formulas.

use crn_core::generators;
use crn_core::{FluxSystem, MassActionSystem, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn detailed_implies_complex_implies_steady(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fluxes: Vec<FluxSystem<Rational>> = vec![
            {
                let net = generators::network(&mut r, 4, 8);
                generators::weighted(&mut r, net)
            },
            generators::cycle_flux(&mut r, 4, 8),
            generators::planted_db_flux(&mut r, 4, 8).system,
        ];
        for f in &fluxes {
            let c = f.classify();
            prop_assert!(!c.is_detailed_balanced || c.is_complex_balanced);
            prop_assert!(!c.is_complex_balanced || c.is_steady_state);
        }
        prop_assert!(fluxes[1].is_complex_balanced());
        prop_assert!(fluxes[2].is_detailed_balanced());
    }

    #[test]
    fn kinetic_dim_at_most_stoichiometric_dim(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = generators::network(&mut r, 4, 8);
        let m: MassActionSystem<Rational> = generators::weighted(&mut r, net);
        prop_assert!(m.kinetic_subspace_dim() <= m.network().stoichiometric_subspace_dim());
    }

    #[test]
    fn deficiency_formulas_agree(seed in any::<u64>()) {
        let net = generators::network(&mut rng(seed), 4, 8);
        prop_assert_eq!(net.deficiency(), net.deficiency_by_kernel_image());
    }

    #[test]
    fn weak_reversibility_is_implied_by_reversibility(seed in any::<u64>()) {
        let net = generators::network(&mut rng(seed), 4, 8);
        prop_assert!(!net.is_reversible() || net.is_weakly_reversible());
        prop_assert_eq!(
            net.is_weakly_reversible(),
            net.num_strong_components() == net.num_components()
        );
    }
}
