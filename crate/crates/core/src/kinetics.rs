//! Pointwise analyses: the mass-action vector field, fluxes at a state,
//! potentials and balance classification.

use num_traits::Zero;

use crate::linalg::rank_of;
use crate::network::{NetworkError, Vertex};
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, Monomial, State};

/// Which balance conditions a flux satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FluxClassification {
    pub is_steady_state: bool,
    pub is_detailed_balanced: bool,
    pub is_complex_balanced: bool,
}

/// Right-hand side of the mass-action system at a state. Exact unless some
/// monomial is irrational there.
#[derive(Clone, Debug, PartialEq)]
pub enum RhsValue<T> {
    Exact(Vec<T>),
    Approx(Vec<f64>),
}

impl<T: Scalar> RhsValue<T> {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            RhsValue::Exact(v) => v.iter().map(Scalar::to_f64).collect(),
            RhsValue::Approx(v) => v.clone(),
        }
    }

    /// True only for an exact zero vector.
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, RhsValue::Exact(v) if v.iter().all(Zero::is_zero))
    }
}

impl<T: Scalar> MassActionSystem<T> {
    /// `sum_e k_e x^{y_e} (y'_e - y_e)`.
    pub fn eval_rhs(&self, x: &State<T>) -> Result<RhsValue<T>, NetworkError> {
        let net = self.network();
        x.check_dim(net.dim())?;
        let monomials: Vec<Monomial<T>> = net.vertices().iter().map(|y| x.monomial(y)).collect();
        if monomials.iter().all(|m| matches!(m, Monomial::Exact(_))) {
            let mut acc = vec![T::zero(); net.dim()];
            for (e, &(s, _)) in net.edges().iter().enumerate() {
                let Monomial::Exact(m) = &monomials[s] else {
                    unreachable!()
                };
                let rate = self.weight(e).clone() * m.clone();
                for (a, r) in acc.iter_mut().zip(net.reaction_vector(e)) {
                    *a = a.clone() + rate.clone() * r;
                }
            }
            Ok(RhsValue::Exact(acc))
        } else {
            let mut acc = vec![0.0; net.dim()];
            for (e, &(s, _)) in net.edges().iter().enumerate() {
                let rate = self.weight(e).to_f64() * monomials[s].to_f64();
                for (a, r) in acc.iter_mut().zip(net.reaction_vector(e)) {
                    *a += rate * r.to_f64();
                }
            }
            Ok(RhsValue::Approx(acc))
        }
    }

    /// The flux system `J_e = k_e x^{y_e}` on the same network.
    pub fn flux_from_state(&self, x: &State<T>) -> Result<FluxSystem<T>, NetworkError> {
        let net = self.network();
        x.check_dim(net.dim())?;
        let mut monomials: Vec<Option<T>> = vec![None; net.num_vertices()];
        for s in net.source_vertices() {
            monomials[s] = Some(x.exact_monomial(net.vertex(s), s)?);
        }
        let fluxes = net
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(s, _))| {
                self.weight(e).clone() * monomials[s].clone().expect("source monomial computed")
            })
            .collect();
        FluxSystem::new(net.clone(), fluxes)
    }

    /// Classification of `x` via the induced flux.
    pub fn classify_state(&self, x: &State<T>) -> Result<FluxClassification, NetworkError> {
        Ok(self.flux_from_state(x)?.classify())
    }

    /// Dimension of the span of the vector field over the positive orthant.
    ///
    /// Distinct exponent vectors give linearly independent monomials on the
    /// orthant, so the span equals that of the per-source aggregates.
    pub fn kinetic_subspace_dim(&self) -> usize {
        let net = self.network();
        let aggregates: Vec<Vec<T>> = net
            .source_vertices()
            .into_iter()
            .map(|v| self.outgoing_sum(v))
            .collect();
        rank_of(&aggregates, net.dim())
    }
}

impl<T: Scalar> FluxSystem<T> {
    /// Inflow minus outflow at `y`; zero for vertices outside the network.
    pub fn potential(&self, y: &Vertex<T>) -> T {
        self.network()
            .vertex_index(y)
            .map_or_else(T::zero, |v| self.net_inflow(v))
    }

    pub fn is_steady_state(&self) -> bool {
        self.weighted_reaction_sum().iter().all(Zero::is_zero)
    }

    /// Every edge has a reverse edge carrying the same flux.
    pub fn is_detailed_balanced(&self) -> bool {
        let net = self.network();
        net.edges().iter().enumerate().all(|(e, &(s, t))| {
            net.edge_index(t, s)
                .is_some_and(|r| self.weight(r) == self.weight(e))
        })
    }

    /// Zero potential at every vertex.
    pub fn is_complex_balanced(&self) -> bool {
        (0..self.network().num_vertices()).all(|v| self.net_inflow(v).is_zero())
    }

    pub fn classify(&self) -> FluxClassification {
        FluxClassification {
            is_steady_state: self.is_steady_state(),
            is_detailed_balanced: self.is_detailed_balanced(),
            is_complex_balanced: self.is_complex_balanced(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::{QFluxSystem, QState, QVertex, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn state(v: &[(i64, i64)]) -> QState {
        State::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn lotka_volterra_rhs() {
        let (k1, k2, k3) = (q(2, 1), q(3, 1), q(5, 1));
        let m = fixtures::lotka_volterra(k1.clone(), k2.clone(), k3.clone());
        let (x, y) = (q(7, 2), q(1, 3));
        let rhs = m
            .eval_rhs(&State::new(vec![x.clone(), y.clone()]).unwrap())
            .unwrap();
        let expected = vec![
            k1 * x.clone() - k2.clone() * x.clone() * y.clone(),
            k2 * x * y.clone() - k3 * y,
        ];
        assert_eq!(rhs, RhsValue::Exact(expected));

        let unit = fixtures::lotka_volterra(q(1, 1), q(1, 1), q(1, 1));
        assert!(unit
            .eval_rhs(&state(&[(1, 1), (1, 1)]))
            .unwrap()
            .is_exact_zero());
    }

    #[test]
    fn rhs_rejects_wrong_dimension() {
        let m = fixtures::lotka_volterra(q(1, 1), q(1, 1), q(1, 1));
        assert!(m.eval_rhs(&state(&[(1, 1)])).is_err());
    }

    #[test]
    fn rhs_falls_back_to_floats_for_irrational_monomials() {
        use crate::network::SpeciesList;
        let sp = SpeciesList::new(["A"]).unwrap();
        let half = QVertex::new(vec![q(1, 2)]);
        let m = MassActionSystem::from_weighted_reactions(sp, [(half, QVertex::zero(1), q(1, 1))])
            .unwrap();
        let rhs = m.eval_rhs(&state(&[(2, 1)])).unwrap();
        match rhs {
            RhsValue::Approx(v) => assert!((v[0] + 0.5 * 2f64.sqrt()).abs() < 1e-12),
            other => panic!("expected float value, got {other:?}"),
        }
        assert!(matches!(
            m.flux_from_state(&state(&[(2, 1)])),
            Err(NetworkError::IrrationalMonomial { vertex: 0 })
        ));
        assert_eq!(
            m.eval_rhs(&state(&[(4, 1)])).unwrap(),
            RhsValue::Exact(vec![q(-1, 1)])
        );
    }

    #[test]
    fn flux_at_unit_state_equals_rates() {
        let m = fixtures::cb_flux_xy().reinterpret::<crate::weighted::Rate>();
        let f = m.flux_from_state(&State::ones(2)).unwrap();
        assert_eq!(f.weights(), m.weights());
    }

    #[test]
    fn mass_action_rates_reproduce_cb_flux() {
        let (m, x0) = fixtures::cb_mass_action_xy();
        let f = m.flux_from_state(&x0).unwrap();
        assert_eq!(f, fixtures::cb_flux_xy());
        assert!(m.classify_state(&x0).unwrap().is_complex_balanced);
    }

    #[test]
    fn scaling_state_keeps_network() {
        let m = fixtures::lotka_volterra(q(1, 1), q(2, 1), q(3, 1));
        let f1 = m.flux_from_state(&state(&[(1, 1), (1, 1)])).unwrap();
        let f2 = m.flux_from_state(&state(&[(2, 1), (5, 1)])).unwrap();
        assert_eq!(f1.network(), f2.network());
        assert_ne!(f1.weights(), f2.weights());
    }

    #[test]
    fn potentials() {
        let f = fixtures::cb_flux_xy();
        assert_eq!(f.potential(&QVertex::from_ints(&[0, 1])), q(0, 1));
        assert_eq!(f.potential(&QVertex::from_ints(&[9, 9])), q(0, 1));
        let one_d = fixtures::one_dimensional_cb_flux();
        for y in one_d.network().vertices() {
            assert_eq!(one_d.potential(y), q(0, 1));
        }
    }

    #[test]
    fn classification_examples() {
        let c = fixtures::cb_flux_xy().classify();
        assert!(c.is_complex_balanced);
        assert!(!c.is_detailed_balanced);
        assert!(c.is_steady_state);

        let lv = fixtures::lotka_volterra(q(1, 1), q(1, 1), q(1, 1));
        let c = lv.classify_state(&state(&[(1, 1), (1, 1)])).unwrap();
        assert!(c.is_steady_state);
        assert!(!c.is_complex_balanced);
        let f = lv.flux_from_state(&state(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!(f.potential(&QVertex::from_ints(&[1, 0])), q(-1, 1));

        use crate::network::SpeciesList;
        let pair: QFluxSystem = FluxSystem::from_weighted_reactions(
            SpeciesList::new(["A", "B"]).unwrap(),
            [
                (
                    QVertex::from_ints(&[1, 0]),
                    QVertex::from_ints(&[0, 1]),
                    q(3, 2),
                ),
                (
                    QVertex::from_ints(&[0, 1]),
                    QVertex::from_ints(&[1, 0]),
                    q(3, 2),
                ),
            ],
        )
        .unwrap();
        assert_eq!(
            pair.classify(),
            FluxClassification {
                is_steady_state: true,
                is_detailed_balanced: true,
                is_complex_balanced: true
            }
        );
    }

    #[test]
    fn kinetic_subspace() {
        let m = fixtures::single_reaction_with_y_pair(q(1, 1), q(2, 1));
        assert_eq!(m.kinetic_subspace_dim(), 1);
        assert_eq!(m.network().stoichiometric_subspace_dim(), 2);
        let a = fixtures::single_reaction(q(1, 1));
        assert_eq!(a.kinetic_subspace_dim(), 1);
    }
}
