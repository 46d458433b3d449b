//! Search for a complex-balanced mass-action realization over unknown
//! states.
//!
//! For a fixed state the question is a linear problem
//! ([`realize_ma_cb_at_state`]). The search proposes candidate states: the
//! all-ones state, then positive steady states reached by damped
//! Gauss-Newton from log-uniform starting points. A balanced state must be a
//! steady state, so each float steady state is snapped to nearby states whose
//! monomials at the source vertices are rational, and the exact problem is
//! tried at each. The search is incomplete: it reports `Unknown` when no
//! candidate works, never `Infeasible`.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::flux::realize_ma_cb_at_state;
use super::result::{Certificate, Outcome, RealizationResult};
use crate::scalar::{convergents, Scalar};
use crate::weighted::{MassActionSystem, Rate, State};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Random starting points, in addition to the all-ones state.
    pub multistarts: usize,
    /// Per-coordinate sampling range, sampled uniformly in log scale.
    pub log_range: (f64, f64),
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Largest denominator considered when snapping to rationals.
    pub max_denominator: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            multistarts: 200,
            log_range: (1e-3, 1e3),
            seed: 0,
            threads: None,
            max_denominator: 1_000_000,
        }
    }
}

/// Per-species lattice: `x_j^{g_j}` rational makes every source monomial
/// rational, where `g_j = p_j / q_j` is the gcd of the source coordinates in
/// column `j` (one for a zero column).
fn source_lattice<T: Scalar>(m: &MassActionSystem<T>) -> Option<Vec<(i64, i64)>> {
    let net = m.network();
    let sources = net.source_vertices();
    (0..net.dim())
        .map(|j| {
            let mut num = 0i64;
            let mut den = 1i64;
            for &s in &sources {
                let (p, q) = net.vertex(s).coords()[j].to_frac()?;
                if p == 0 {
                    continue;
                }
                num = num.gcd(&p);
                den = den.lcm(&q);
            }
            Some(if num == 0 { (1, 1) } else { (num, den) })
        })
        .collect()
}

/// Float right-hand side and its Jacobian in log coordinates.
struct LogSystem {
    /// `(rate, source exponent, reaction vector)` per edge.
    terms: Vec<(f64, Vec<f64>, Vec<f64>)>,
    dim: usize,
}

impl LogSystem {
    fn new<T: Scalar>(m: &MassActionSystem<T>) -> Self {
        let net = m.network();
        let terms = net
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(s, _))| {
                (
                    m.weight(e).to_f64(),
                    net.vertex(s).coords().iter().map(Scalar::to_f64).collect(),
                    net.reaction_vector(e).iter().map(Scalar::to_f64).collect(),
                )
            })
            .collect();
        Self {
            terms,
            dim: net.dim(),
        }
    }

    /// `(f(u), J(u), scale)` where `scale` bounds the size of `f`'s terms.
    fn eval(&self, u: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>, f64) {
        let mut f = DVector::zeros(self.dim);
        let mut jac = DMatrix::zeros(self.dim, self.dim);
        let mut scale = 0.0;
        for (k, y, r) in &self.terms {
            let expo: f64 = y.iter().zip(u.iter()).map(|(a, b)| a * b).sum();
            let rate = k * expo.exp();
            for i in 0..self.dim {
                f[i] += rate * r[i];
                scale += (rate * r[i]).abs();
                for j in 0..self.dim {
                    jac[(i, j)] += rate * r[i] * y[j];
                }
            }
        }
        (f, jac, scale)
    }

    fn residual(&self, u: &DVector<f64>) -> f64 {
        let (f, _, scale) = self.eval(u);
        if scale > 0.0 {
            f.norm() / scale
        } else {
            0.0
        }
    }

    /// Damped Gauss-Newton from `u`; returns a point with small relative
    /// residual, if reached.
    fn solve(&self, mut u: DVector<f64>) -> Option<DVector<f64>> {
        const TOL: f64 = 1e-13;
        let mut res = self.residual(&u);
        for _ in 0..200 {
            if res < TOL {
                return Some(u);
            }
            let (f, jac, _) = self.eval(&u);
            let step = jac.pseudo_inverse(1e-12).ok()? * f;
            let mut t = 1.0;
            let mut improved = false;
            for _ in 0..40 {
                let cand = (&u - &step * t).map(|v| v.clamp(-60.0, 60.0));
                let r = self.residual(&cand);
                if r.is_finite() && r < res {
                    u = cand;
                    res = r;
                    improved = true;
                    break;
                }
                t *= 0.5;
            }
            if !improved {
                break;
            }
        }
        (res < TOL).then_some(u)
    }
}

/// Rational states near the float point `x` on the source lattice: each
/// lattice coordinate `x_j^{g_j}` is replaced by its simplest accurate
/// continued-fraction convergents.
fn snap<T: Scalar>(x: &[f64], lattice: &[(i64, i64)], max_den: u64) -> Vec<State<T>> {
    const REL_TOL: f64 = 1e-9;
    const PER_COORD: usize = 2;
    let mut per_coord: Vec<Vec<(i64, i64)>> = Vec::with_capacity(x.len());
    for (&xj, &(p, q)) in x.iter().zip(lattice) {
        let t = xj.powf(p as f64 / q as f64);
        let options: Vec<(i64, i64)> = convergents(t, max_den)
            .into_iter()
            .filter(|&(a, b)| a > 0 && ((a as f64 / b as f64) / t - 1.0).abs() < REL_TOL)
            .take(PER_COORD)
            .collect();
        if options.is_empty() {
            return Vec::new();
        }
        per_coord.push(options);
    }
    let mut out = vec![(Vec::new(), Vec::new())];
    for (options, &(p, q)) in per_coord.iter().zip(lattice) {
        let Ok(root) = u32::try_from(p) else {
            return Vec::new();
        };
        let mut next = Vec::with_capacity(out.len() * options.len());
        for (base, roots) in &out {
            for &(a, b) in options {
                // x_j = t^{q/p} = (t^q)^{1/p}.
                let mut base: Vec<T> = base.clone();
                let mut roots: Vec<u32> = roots.clone();
                base.push(T::from_frac(a, b).powi(q));
                roots.push(root);
                next.push((base, roots));
            }
        }
        out = next;
    }
    out.into_iter()
        .filter_map(|(b, r)| State::with_roots(b, r).ok())
        .collect()
}

/// Tries the all-ones state and snapped steady states from `config.multistarts`
/// random starts. Returns the first success in candidate order, else
/// `Unknown`.
pub fn realize_ma_cb_search<T: Scalar>(
    m: &MassActionSystem<T>,
    config: &SearchConfig,
) -> RealizationResult<T, Rate> {
    let run = || search(m, config);
    match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

fn search<T: Scalar>(m: &MassActionSystem<T>, config: &SearchConfig) -> RealizationResult<T, Rate> {
    let dim = m.network().dim();
    let unknown = |tried: usize| RealizationResult {
        outcome: Outcome::Unknown,
        certificate: Certificate {
            iterations: tried,
            ..Certificate::default()
        },
    };
    let Some(lattice) = source_lattice(m) else {
        return unknown(0);
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (lo, hi) = (config.log_range.0.ln(), config.log_range.1.ln());
    let starts: Vec<DVector<f64>> = std::iter::once(DVector::zeros(dim))
        .chain(
            (0..config.multistarts)
                .map(|_| DVector::from_iterator(dim, (0..dim).map(|_| rng.gen_range(lo..=hi)))),
        )
        .collect();

    let system = LogSystem::new(m);
    let snapped: Vec<Vec<State<T>>> = starts
        .par_iter()
        .map(|u0| match system.solve(u0.clone()) {
            Some(u) => {
                let x: Vec<f64> = u.iter().map(|v| v.exp()).collect();
                snap(&x, &lattice, config.max_denominator)
            }
            None => Vec::new(),
        })
        .collect();

    let mut seen = HashSet::new();
    let mut candidates = vec![State::ones(dim)];
    seen.insert(State::ones(dim));
    for s in snapped.into_iter().flatten() {
        if seen.insert(s.clone()) {
            candidates.push(s);
        }
    }

    let found = candidates.par_iter().enumerate().find_map_first(|(i, x)| {
        // Balanced states are steady states; skip the LP otherwise.
        let steady = m
            .flux_from_state(x)
            .map(|f| f.is_steady_state())
            .unwrap_or(false);
        if !steady {
            return None;
        }
        match realize_ma_cb_at_state(m, x) {
            Ok(r) if r.is_found() => Some((i, r)),
            _ => None,
        }
    });
    match found {
        Some((i, mut r)) => {
            r.certificate.iterations = i + 1;
            r
        }
        None => unknown(candidates.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::realize::Status;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn small() -> SearchConfig {
        SearchConfig {
            multistarts: 20,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn lattice_of_square_sources() {
        let m = fixtures::square_sources_mass_action([q(1), q(1), q(1), q(1)]);
        assert_eq!(source_lattice(&m).unwrap(), vec![(3, 1), (2, 1)]);
    }

    #[test]
    fn unit_rates_found_at_ones() {
        let m = fixtures::square_sources_mass_action([q(1), q(1), q(1), q(1)]);
        let r = realize_ma_cb_search(&m, &small());
        assert_eq!(r.status(), Status::Found);
        assert!(r.certificate.all_passed());
        assert_eq!(r.certificate.iterations, 1);
    }

    #[test]
    fn boundary_needs_radical_state() {
        let m = fixtures::square_sources_mass_action([q(25), q(1), q(1), q(1)]);
        let r = realize_ma_cb_search(&m, &small());
        assert_eq!(r.status(), Status::Found);
        assert!(r.certificate.all_passed());
        let x = r.realization().unwrap().state.clone().unwrap();
        assert_eq!(x.to_string(), "5^(1/3),5^(1/2)");
    }

    #[test]
    fn outside_region_is_unknown() {
        let m = fixtures::square_sources_mass_action([q(26), q(1), q(1), q(1)]);
        let r = realize_ma_cb_search(&m, &small());
        assert_eq!(r.status(), Status::Unknown);
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let m = fixtures::square_sources_mass_action([q(4), q(1), q(9), q(1)]);
        let a = realize_ma_cb_search(
            &m,
            &SearchConfig {
                threads: Some(1),
                ..small()
            },
        );
        let b = realize_ma_cb_search(
            &m,
            &SearchConfig {
                threads: Some(4),
                ..small()
            },
        );
        assert_eq!(a, b);
    }
}
