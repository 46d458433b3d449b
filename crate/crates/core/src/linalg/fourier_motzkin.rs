//! Fourier–Motzkin elimination, used as an independent feasibility oracle.
//!
//! Equalities are eliminated by substitution first; the remaining
//! inequalities are projected one variable at a time. Back-substitution
//! through the recorded stages yields a witness.

use std::collections::HashMap;

use super::feasibility::{
    FeasibilityError, FeasibilityOutcome, FeasibilityProblem, SignConstraint,
};
use crate::scalar::Scalar;

/// Variable limit for [`fm_oracle`].
pub const FM_VARIABLE_LIMIT: usize = 12;

/// `coeffs . v <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Ineq<T> {
    coeffs: Vec<T>,
    rhs: T,
}

#[derive(Clone, Debug)]
struct Eq_<T> {
    coeffs: Vec<T>,
    rhs: T,
}

enum Stage<T> {
    /// `v[var] = (rhs - sum_{k != var} coeffs[k] v[k]) / coeffs[var]`.
    Substitute { var: usize, eq: Eq_<T> },
    /// Bounds on `v[var]` in terms of variables eliminated later.
    Project { var: usize, bounds: Vec<Ineq<T>> },
}

/// Decides feasibility of `problem` by Fourier–Motzkin elimination.
pub fn fm_oracle<T: Scalar>(
    problem: &FeasibilityProblem<T>,
) -> Result<FeasibilityOutcome<T>, FeasibilityError> {
    let n = problem.num_vars();
    if n > FM_VARIABLE_LIMIT {
        return Err(FeasibilityError::TooManyVariables {
            limit: FM_VARIABLE_LIMIT,
            got: n,
        });
    }
    let mut eqs: Vec<Eq_<T>> = problem
        .equalities()
        .map(|(c, b)| Eq_ {
            coeffs: c.to_vec(),
            rhs: b.clone(),
        })
        .collect();
    let mut ineqs: Vec<Ineq<T>> = Vec::new();
    for (i, s) in problem.signs().iter().enumerate() {
        let bound = match s {
            SignConstraint::Free => continue,
            SignConstraint::NonNegative => T::zero(),
            SignConstraint::AtLeastOne => -T::one(),
        };
        let mut coeffs = vec![T::zero(); n];
        coeffs[i] = -T::one();
        ineqs.push(Ineq { coeffs, rhs: bound });
    }

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut stages: Vec<Stage<T>> = Vec::with_capacity(n);

    loop {
        if !trivially_consistent(&eqs, &mut ineqs) {
            return Ok(FeasibilityOutcome::Infeasible);
        }
        if remaining.is_empty() {
            break;
        }
        // Substitute out a variable through an equality when possible.
        let pick = eqs.iter().enumerate().find_map(|(ei, e)| {
            remaining
                .iter()
                .position(|&v| !e.coeffs[v].is_zero())
                .map(|ri| (ei, ri))
        });
        if let Some((ei, ri)) = pick {
            let var = remaining.remove(ri);
            let eq = eqs.swap_remove(ei);
            for other in eqs.iter_mut() {
                substitute_eq(other, &eq, var);
            }
            for ineq in ineqs.iter_mut() {
                substitute_ineq(ineq, &eq, var);
            }
            stages.push(Stage::Substitute { var, eq });
            continue;
        }
        // Otherwise project the variable with the smallest pair product.
        let (ri, _) = remaining
            .iter()
            .enumerate()
            .map(|(ri, &v)| {
                let pos = ineqs.iter().filter(|c| c.coeffs[v].is_positive()).count();
                let neg = ineqs.iter().filter(|c| c.coeffs[v].is_negative()).count();
                (ri, pos * neg)
            })
            .min_by_key(|&(_, cost)| cost)
            .expect("remaining is nonempty");
        let var = remaining.remove(ri);
        let (bounds, rest): (Vec<_>, Vec<_>) =
            ineqs.into_iter().partition(|c| !c.coeffs[var].is_zero());
        let mut next = rest;
        let uppers = bounds.iter().filter(|c| c.coeffs[var].is_positive());
        for up in uppers {
            for lo in bounds.iter().filter(|c| c.coeffs[var].is_negative()) {
                next.push(combine(up, lo, var));
            }
        }
        ineqs = dedupe(next);
        stages.push(Stage::Project { var, bounds });
    }

    let mut point = vec![T::zero(); n];
    for stage in stages.iter().rev() {
        match stage {
            Stage::Substitute { var, eq } => {
                let rest = eq
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k != var)
                    .fold(T::zero(), |acc, (k, a)| acc + a.clone() * point[k].clone());
                point[*var] = (eq.rhs.clone() - rest) / eq.coeffs[*var].clone();
            }
            Stage::Project { var, bounds } => {
                let mut lower: Option<T> = None;
                let mut upper: Option<T> = None;
                for c in bounds {
                    let a = c.coeffs[*var].clone();
                    let rest = c
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| k != var)
                        .fold(T::zero(), |acc, (k, x)| acc + x.clone() * point[k].clone());
                    let limit = (c.rhs.clone() - rest) / a.clone();
                    if a.is_positive() {
                        upper = Some(upper.map_or(limit.clone(), |u| u.min(limit)));
                    } else {
                        lower = Some(lower.map_or(limit.clone(), |l| l.max(limit)));
                    }
                }
                point[*var] = match (lower, upper) {
                    (Some(l), _) => l,
                    (None, Some(u)) => u.min(T::zero()),
                    (None, None) => T::zero(),
                };
            }
        }
    }
    debug_assert!(
        problem.is_satisfied_by(&point),
        "FM witness must satisfy the problem"
    );
    Ok(FeasibilityOutcome::Feasible(point))
}

/// Drops constant constraints, returning false if one is violated.
fn trivially_consistent<T: Scalar>(eqs: &[Eq_<T>], ineqs: &mut Vec<Ineq<T>>) -> bool {
    for e in eqs {
        if e.coeffs.iter().all(T::is_zero) && !e.rhs.is_zero() {
            return false;
        }
    }
    let mut ok = true;
    ineqs.retain(|c| {
        if c.coeffs.iter().all(T::is_zero) {
            if c.rhs.is_negative() {
                ok = false;
            }
            false
        } else {
            true
        }
    });
    ok
}

fn substitute_eq<T: Scalar>(target: &mut Eq_<T>, pivot: &Eq_<T>, var: usize) {
    let a = target.coeffs[var].clone();
    if a.is_zero() {
        return;
    }
    let f = a / pivot.coeffs[var].clone();
    for (t, p) in target.coeffs.iter_mut().zip(&pivot.coeffs) {
        *t = t.clone() - f.clone() * p.clone();
    }
    target.rhs = target.rhs.clone() - f * pivot.rhs.clone();
    target.coeffs[var] = T::zero();
}

fn substitute_ineq<T: Scalar>(target: &mut Ineq<T>, pivot: &Eq_<T>, var: usize) {
    let a = target.coeffs[var].clone();
    if a.is_zero() {
        return;
    }
    let f = a / pivot.coeffs[var].clone();
    for (t, p) in target.coeffs.iter_mut().zip(&pivot.coeffs) {
        *t = t.clone() - f.clone() * p.clone();
    }
    target.rhs = target.rhs.clone() - f * pivot.rhs.clone();
    target.coeffs[var] = T::zero();
}

/// Positive combination of an upper and a lower bound on `var` that cancels it.
fn combine<T: Scalar>(up: &Ineq<T>, lo: &Ineq<T>, var: usize) -> Ineq<T> {
    let wu = -lo.coeffs[var].clone();
    let wl = up.coeffs[var].clone();
    let mut coeffs: Vec<T> = up
        .coeffs
        .iter()
        .zip(&lo.coeffs)
        .map(|(a, b)| wu.clone() * a.clone() + wl.clone() * b.clone())
        .collect();
    coeffs[var] = T::zero();
    Ineq {
        coeffs,
        rhs: wu * up.rhs.clone() + wl * lo.rhs.clone(),
    }
}

/// Scales each constraint so its first nonzero coefficient has magnitude one
/// and keeps the tightest right-hand side per direction.
fn dedupe<T: Scalar>(ineqs: Vec<Ineq<T>>) -> Vec<Ineq<T>> {
    let mut best: HashMap<Vec<T>, T> = HashMap::new();
    let mut order: Vec<Vec<T>> = Vec::new();
    for c in ineqs {
        let Some(lead) = c.coeffs.iter().find(|v| !v.is_zero()).map(|v| v.abs()) else {
            // Constant constraint, keep as is for the consistency check.
            let key = c.coeffs.clone();
            match best.get_mut(&key) {
                Some(r) if c.rhs < *r => *r = c.rhs,
                Some(_) => {}
                None => {
                    order.push(key.clone());
                    best.insert(key, c.rhs);
                }
            }
            continue;
        };
        let coeffs: Vec<T> = c.coeffs.iter().map(|v| v.clone() / lead.clone()).collect();
        let rhs = c.rhs / lead;
        match best.get_mut(&coeffs) {
            Some(r) => {
                if rhs < *r {
                    *r = rhs;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, rhs);
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let rhs = best.remove(&coeffs).expect("key recorded");
            Ineq { coeffs, rhs }
        })
        .collect()
}
