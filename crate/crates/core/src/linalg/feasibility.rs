//! Linear feasibility over exact scalars.
//!
//! Problems are posed as `A v = b` plus one sign constraint per variable.
//! [`solve_feasibility`] runs phase one of the simplex method with Bland's
//! rule, so it always terminates and never reports unboundedness.

use thiserror::Error;

use crate::scalar::Scalar;

/// Sign constraint on a single variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignConstraint {
    Free,
    NonNegative,
    /// `v >= 1`. Used for homogeneous strict positivity.
    AtLeastOne,
}

/// `A v = b` with per-variable sign constraints and an optional objective
/// to maximize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityProblem<T> {
    num_vars: usize,
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    signs: Vec<SignConstraint>,
    objective: Option<Vec<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityOutcome<T> {
    Feasible(Vec<T>),
    Infeasible,
}

impl<T> FeasibilityOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[T]> {
        match self {
            FeasibilityOutcome::Feasible(w) => Some(w),
            FeasibilityOutcome::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptimizeOutcome<T> {
    Optimal { point: Vec<T>, value: T },
    Unbounded,
    Infeasible,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeasibilityError {
    #[error("problem is infeasible")]
    Infeasible,
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("Fourier-Motzkin oracle limited to {limit} variables, got {got}")]
    TooManyVariables { limit: usize, got: usize },
}

impl<T: Scalar> FeasibilityProblem<T> {
    /// `num_vars` nonnegative variables and no constraints.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
            signs: vec![SignConstraint::NonNegative; num_vars],
            objective: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_equalities(&self) -> usize {
        self.rows.len()
    }

    pub fn equalities(&self) -> impl Iterator<Item = (&[T], &T)> {
        self.rows.iter().map(Vec::as_slice).zip(&self.rhs)
    }

    pub fn signs(&self) -> &[SignConstraint] {
        &self.signs
    }

    pub fn objective(&self) -> Option<&[T]> {
        self.objective.as_deref()
    }

    pub fn set_sign(&mut self, var: usize, sign: SignConstraint) {
        self.signs[var] = sign;
    }

    pub fn add_equality(&mut self, coeffs: Vec<T>, rhs: T) {
        assert_eq!(coeffs.len(), self.num_vars, "equality has wrong arity");
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Adds `sum coeff * v[var] = rhs` from sparse terms.
    pub fn add_sparse_equality(&mut self, terms: &[(usize, T)], rhs: T) {
        let mut row = vec![T::zero(); self.num_vars];
        for (var, c) in terms {
            row[*var] = row[*var].clone() + c.clone();
        }
        self.add_equality(row, rhs);
    }

    /// Pins `v[var] = value`.
    pub fn fix(&mut self, var: usize, value: T) {
        self.add_sparse_equality(&[(var, T::one())], value);
    }

    /// Sets a linear objective to maximize.
    pub fn set_objective(&mut self, coeffs: Vec<T>) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.objective = Some(coeffs);
    }

    /// Appends a fresh variable with zero coefficients everywhere.
    pub fn push_var(&mut self, sign: SignConstraint) -> usize {
        for row in &mut self.rows {
            row.push(T::zero());
        }
        if let Some(obj) = &mut self.objective {
            obj.push(T::zero());
        }
        self.signs.push(sign);
        self.num_vars += 1;
        self.num_vars - 1
    }

    /// Whether `point` satisfies every constraint exactly.
    pub fn is_satisfied_by(&self, point: &[T]) -> bool {
        if point.len() != self.num_vars {
            return false;
        }
        let signs_ok = point.iter().zip(&self.signs).all(|(v, s)| match s {
            SignConstraint::Free => true,
            SignConstraint::NonNegative => !v.is_negative(),
            SignConstraint::AtLeastOne => *v >= T::one(),
        });
        signs_ok && self.residual(point).iter().all(T::is_zero)
    }

    /// `A v - b`.
    pub fn residual(&self, point: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                row.iter()
                    .zip(point)
                    .fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone())
                    - b.clone()
            })
            .collect()
    }
}

/// Decides feasibility exactly; a returned witness satisfies all constraints.
pub fn solve_feasibility<T: Scalar>(problem: &FeasibilityProblem<T>) -> FeasibilityOutcome<T> {
    if problem.num_vars == 0 {
        return if problem.rhs.iter().all(T::is_zero) {
            FeasibilityOutcome::Feasible(Vec::new())
        } else {
            FeasibilityOutcome::Infeasible
        };
    }
    let std = StandardForm::from_problem(problem, None);
    match std.phase_one() {
        Some(tab) => FeasibilityOutcome::Feasible(std.recover(&tab.primal())),
        None => FeasibilityOutcome::Infeasible,
    }
}

/// Maximizes the problem's objective (zero objective when unset).
pub fn optimize<T: Scalar>(problem: &FeasibilityProblem<T>) -> OptimizeOutcome<T> {
    let objective = problem
        .objective
        .clone()
        .unwrap_or_else(|| vec![T::zero(); problem.num_vars]);
    if problem.num_vars == 0 {
        return match solve_feasibility(problem) {
            FeasibilityOutcome::Feasible(p) => OptimizeOutcome::Optimal {
                point: p,
                value: T::zero(),
            },
            FeasibilityOutcome::Infeasible => OptimizeOutcome::Infeasible,
        };
    }
    let std = StandardForm::from_problem(problem, Some(&objective));
    let Some(mut tab) = std.phase_one() else {
        return OptimizeOutcome::Infeasible;
    };
    if !tab.phase_two(&std.cost) {
        return OptimizeOutcome::Unbounded;
    }
    let point = std.recover(&tab.primal());
    let value = objective
        .iter()
        .zip(&point)
        .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
    OptimizeOutcome::Optimal { point, value }
}

/// Largest attainable value of `min(v[var], cap)` over the feasible set.
pub fn maximize_coordinate<T: Scalar>(
    problem: &FeasibilityProblem<T>,
    var: usize,
    cap: T,
) -> Result<T, FeasibilityError> {
    maximize_coordinate_with_point(problem, var, cap).map(|(v, _)| v)
}

/// As [`maximize_coordinate`], also returning a feasible point attaining it
/// (or exceeding `cap` in that coordinate).
pub fn maximize_coordinate_with_point<T: Scalar>(
    problem: &FeasibilityProblem<T>,
    var: usize,
    cap: T,
) -> Result<(T, Vec<T>), FeasibilityError> {
    if var >= problem.num_vars {
        return Err(FeasibilityError::VariableOutOfRange {
            index: var,
            num_vars: problem.num_vars,
        });
    }
    let mut capped = problem.clone();
    let slack = capped.push_var(SignConstraint::NonNegative);
    capped.add_sparse_equality(&[(var, T::one()), (slack, T::one())], cap.clone());
    let mut obj = vec![T::zero(); capped.num_vars];
    obj[var] = T::one();
    capped.set_objective(obj);
    match optimize(&capped) {
        OptimizeOutcome::Optimal { mut point, value } => {
            point.truncate(problem.num_vars);
            Ok((value, point))
        }
        // The cap bounds the objective, so unboundedness cannot occur.
        OptimizeOutcome::Unbounded => unreachable!("capped objective is bounded"),
        OptimizeOutcome::Infeasible => match solve_feasibility(problem) {
            FeasibilityOutcome::Feasible(point) => Ok((cap, point)),
            FeasibilityOutcome::Infeasible => Err(FeasibilityError::Infeasible),
        },
    }
}

/// How an original variable maps onto nonnegative standard-form columns.
#[derive(Clone, Debug)]
enum VarMap {
    Shifted { col: usize, offset: bool },
    Split { pos: usize, neg: usize },
}

/// `min cost . x` subject to `A x = b`, `x >= 0`, `b >= 0`.
struct StandardForm<T> {
    maps: Vec<VarMap>,
    a: Vec<Vec<T>>,
    b: Vec<T>,
    cost: Vec<T>,
}

impl<T: Scalar> StandardForm<T> {
    fn from_problem(p: &FeasibilityProblem<T>, maximize: Option<&[T]>) -> Self {
        let mut maps = Vec::with_capacity(p.num_vars);
        let mut ncols = 0;
        for s in &p.signs {
            match s {
                SignConstraint::Free => {
                    maps.push(VarMap::Split {
                        pos: ncols,
                        neg: ncols + 1,
                    });
                    ncols += 2;
                }
                SignConstraint::NonNegative => {
                    maps.push(VarMap::Shifted {
                        col: ncols,
                        offset: false,
                    });
                    ncols += 1;
                }
                SignConstraint::AtLeastOne => {
                    maps.push(VarMap::Shifted {
                        col: ncols,
                        offset: true,
                    });
                    ncols += 1;
                }
            }
        }
        let lift = |row: &[T]| -> (Vec<T>, T) {
            let mut out = vec![T::zero(); ncols];
            let mut shift = T::zero();
            for (coef, map) in row.iter().zip(&maps) {
                match map {
                    VarMap::Shifted { col, offset } => {
                        out[*col] = coef.clone();
                        if *offset {
                            shift = shift + coef.clone();
                        }
                    }
                    VarMap::Split { pos, neg } => {
                        out[*pos] = coef.clone();
                        out[*neg] = -coef.clone();
                    }
                }
            }
            (out, shift)
        };
        let mut a = Vec::with_capacity(p.rows.len());
        let mut b = Vec::with_capacity(p.rows.len());
        for (row, rhs) in p.rows.iter().zip(&p.rhs) {
            let (mut r, shift) = lift(row);
            let mut rhs = rhs.clone() - shift;
            if rhs.is_negative() {
                r.iter_mut().for_each(|v| *v = -v.clone());
                rhs = -rhs;
            }
            a.push(r);
            b.push(rhs);
        }
        let cost = match maximize {
            Some(obj) => lift(obj).0.into_iter().map(|c| -c).collect(),
            None => vec![T::zero(); ncols],
        };
        Self { maps, a, b, cost }
    }

    fn phase_one(&self) -> Option<Tableau<T>> {
        let mut tab = Tableau::with_artificials(&self.a, &self.b, self.cost.len());
        let art_cost: Vec<T> = (0..tab.ncols)
            .map(|j| {
                if j >= tab.nstruct {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        let bounded = tab.run(&art_cost);
        debug_assert!(bounded, "phase one is bounded below by zero");
        if !tab.objective_value(&art_cost).is_zero() {
            return None;
        }
        tab.expel_artificials();
        Some(tab)
    }

    fn recover(&self, x: &[T]) -> Vec<T> {
        self.maps
            .iter()
            .map(|m| match m {
                VarMap::Shifted { col, offset } => {
                    if *offset {
                        x[*col].clone() + T::one()
                    } else {
                        x[*col].clone()
                    }
                }
                VarMap::Split { pos, neg } => x[*pos].clone() - x[*neg].clone(),
            })
            .collect()
    }
}

/// Dense simplex tableau: structural columns followed by artificials.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    nstruct: usize,
    ncols: usize,
    /// Artificial columns are barred from re-entering once phase one ends.
    allow_artificial: bool,
}

impl<T: Scalar> Tableau<T> {
    /// `nstruct` is passed explicitly since `a` may have no rows.
    fn with_artificials(a: &[Vec<T>], b: &[T], nstruct: usize) -> Self {
        let m = a.len();
        let ncols = nstruct + m;
        let rows = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
                row
            })
            .collect();
        Self {
            rows,
            rhs: b.to_vec(),
            basis: (nstruct..ncols).collect(),
            nstruct,
            ncols,
            allow_artificial: true,
        }
    }

    fn objective_value(&self, cost: &[T]) -> T {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(T::zero(), |acc, (&j, v)| acc + cost[j].clone() * v.clone())
    }

    fn reduced_cost(&self, cost: &[T], j: usize) -> T {
        let mut r = cost[j].clone();
        for (i, &bj) in self.basis.iter().enumerate() {
            if !cost[bj].is_zero() && !self.rows[i][j].is_zero() {
                r = r - cost[bj].clone() * self.rows[i][j].clone();
            }
        }
        r
    }

    /// Minimizes `cost` with Bland's rule; false when unbounded.
    fn run(&mut self, cost: &[T]) -> bool {
        let limit = if self.allow_artificial {
            self.ncols
        } else {
            self.nstruct
        };
        loop {
            let entering = (0..limit)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(e) = entering else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if a.is_positive() {
                    let ratio = self.rhs[i].clone() / a.clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((leave, _)) = best else {
                return false;
            };
            self.pivot(leave, e);
        }
    }

    fn phase_two(&mut self, cost: &[T]) -> bool {
        self.allow_artificial = false;
        let mut full = cost.to_vec();
        full.resize(self.ncols, T::zero());
        self.run(&full)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = T::one() / self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        self.rhs[r] = self.rhs[r].clone() * inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - f.clone() * p.clone();
                }
            }
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
        self.basis[r] = c;
    }

    /// Pivots zero-valued artificials out of the basis; rows that cannot be
    /// pivoted are redundant and removed.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.nstruct {
                match (0..self.nstruct).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn primal(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.nstruct];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.nstruct {
                x[j] = self.rhs[i].clone();
            }
        }
        x
    }
}
