//! Realization outcomes and their re-verification.

use super::equivalence::{check_dynamical_equivalence, check_flux_equivalence};
use crate::network::ReactionNetwork;
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, State, WeightKind, WeightedSystem};

/// Property a realization must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    ComplexBalanced,
    DetailedBalanced,
    WeaklyReversible,
    Reversible,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::ComplexBalanced => "complex-balanced",
            Target::DetailedBalanced => "detailed-balanced",
            Target::WeaklyReversible => "weakly reversible",
            Target::Reversible => "reversible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Found,
    Infeasible,
    Unknown,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Found => "found",
            Status::Infeasible => "infeasible",
            Status::Unknown => "unknown",
        }
    }
}

/// A realization together with the data needed to check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization<T, K> {
    pub system: WeightedSystem<T, K>,
    /// State at which the realization is balanced, for mass-action targets
    /// that involve one.
    pub state: Option<State<T>>,
    /// Per-edge scaling factors `alpha >= 1` making `alpha k'` a
    /// complex-balanced weighting of the realized network.
    pub alpha: Option<Vec<T>>,
}

// Outcomes are returned once per call, so the unboxed witness is fine.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T, K> {
    Found(Realization<T, K>),
    Infeasible,
    Unknown,
}

/// One named re-verification step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub checks: Vec<Check>,
    /// Unknowns in the final linear problem.
    pub lp_variables: usize,
    pub lp_equalities: usize,
    /// Trimming rounds for dense-support procedures, candidate states for
    /// the state search.
    pub iterations: usize,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult<T, K> {
    pub outcome: Outcome<T, K>,
    pub certificate: Certificate,
}

impl<T, K> RealizationResult<T, K> {
    pub fn status(&self) -> Status {
        match self.outcome {
            Outcome::Found(_) => Status::Found,
            Outcome::Infeasible => Status::Infeasible,
            Outcome::Unknown => Status::Unknown,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status() == Status::Found
    }

    pub fn realization(&self) -> Option<&Realization<T, K>> {
        match &self.outcome {
            Outcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

fn uses_only_sources<T: Scalar, K: WeightKind>(
    input: &ReactionNetwork<T>,
    realized: &WeightedSystem<T, K>,
) -> bool {
    let sources = input.source_vertices();
    realized
        .network()
        .vertices()
        .iter()
        .all(|y| input.vertex_index(y).is_some_and(|v| sources.contains(&v)))
}

fn target_holds<T: Scalar>(f: &FluxSystem<T>, target: Target) -> bool {
    match target {
        Target::ComplexBalanced => f.is_complex_balanced(),
        Target::DetailedBalanced => f.is_detailed_balanced(),
        Target::WeaklyReversible => f.network().is_weakly_reversible(),
        Target::Reversible => f.network().is_reversible(),
    }
}

/// Re-checks a flux realization exactly.
pub fn verify_flux_realization<T: Scalar>(
    input: &FluxSystem<T>,
    realized: &FluxSystem<T>,
    target: Target,
) -> Vec<Check> {
    vec![
        Check {
            name: "flux equivalence",
            passed: check_flux_equivalence(input, realized).unwrap_or(false),
        },
        Check {
            name: target.name(),
            passed: target_holds(realized, target),
        },
        Check {
            name: "source vertices only",
            passed: uses_only_sources(input.network(), realized),
        },
    ]
}

/// `sum_out alpha k' = sum_in alpha k'` at every vertex, with `alpha >= 1`.
pub fn alpha_balances<T: Scalar>(m: &MassActionSystem<T>, alpha: &[T]) -> bool {
    if alpha.len() != m.network().num_edges() || alpha.iter().any(|a| *a < T::one()) {
        return false;
    }
    let net = m.network();
    (0..net.num_vertices()).all(|v| {
        let flow = |e: usize| alpha[e].clone() * m.weight(e).clone();
        let inflow = net.in_edges(v).fold(T::zero(), |a, e| a + flow(e));
        let outflow = net.out_edges(v).fold(T::zero(), |a, e| a + flow(e));
        (inflow - outflow).is_zero()
    })
}

/// Re-checks a mass-action realization exactly. Balance targets are checked
/// at `realization.state`; weakly reversible targets also check `alpha`.
pub fn verify_mass_action_realization<T: Scalar>(
    input: &MassActionSystem<T>,
    realization: &Realization<T, crate::weighted::Rate>,
    target: Target,
) -> Vec<Check> {
    let realized = &realization.system;
    let mut checks = vec![Check {
        name: "dynamical equivalence",
        passed: check_dynamical_equivalence(input, realized).unwrap_or(false),
    }];
    match target {
        Target::ComplexBalanced | Target::DetailedBalanced => {
            let passed = realization.state.as_ref().is_some_and(|x| {
                realized
                    .flux_from_state(x)
                    .map(|f| target_holds(&f, target))
                    .unwrap_or(false)
            });
            checks.push(Check {
                name: target.name(),
                passed,
            });
        }
        Target::WeaklyReversible | Target::Reversible => {
            let graph = if target == Target::WeaklyReversible {
                realized.network().is_weakly_reversible()
            } else {
                realized.network().is_reversible()
            };
            checks.push(Check {
                name: target.name(),
                passed: graph,
            });
            if let Some(alpha) = &realization.alpha {
                checks.push(Check {
                    name: "scaling certificate",
                    passed: alpha_balances(realized, alpha),
                });
            }
        }
    }
    checks.push(Check {
        name: "source vertices only",
        passed: uses_only_sources(input.network(), realized),
    });
    checks
}
