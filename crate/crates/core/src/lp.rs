//! Exact linear programming over rationals.
//!
//! Programs are kept in equality form: find `x ≥ 0` with `A x = b`,
//! optionally maximizing a linear objective `c · x`. Coefficients, right
//! hand sides and solutions are all exact rationals, so feasibility and
//! optimality are decided with no tolerances.
//!
//! Two independent decision routes are provided:
//!
//! * [`simplex_solve`] — a dense two-phase primal simplex with Bland's
//!   least-index pivoting rule, which guarantees termination.
//! * [`brute_force_solve`] — an oracle-grade route that enumerates
//!   candidate basic solutions (all constraint-rank-sized column subsets,
//!   solving each square system exactly) whenever that enumeration is small
//!   enough, and otherwise decides by least-index criss-cross pivoting, a
//!   finite method with no phase structure. Infeasibility found by the
//!   criss-cross route is certified: the returned verdict is accepted only
//!   after the separating row has been re-verified by substitution.
//!
//! Both routes re-check any solution against the original program before
//! reporting it.

use crate::rational::Rational;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// One equality constraint `coeffs · x = rhs` (dense coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// An equality-form linear program with nonnegative unknowns and an
/// optional objective to maximize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    constraints: Vec<Constraint>,
    objective: Option<Vec<Rational>>,
}

/// How a solve ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    /// A feasible point was found (no objective was given).
    Feasible,
    /// An optimal point was found for the given objective.
    Optimal,
    /// The constraints admit no nonnegative solution.
    Infeasible,
}

/// Result of a solve. `solution` is present iff the status is not
/// [`LpStatus::Infeasible`], and satisfies every constraint exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub solution: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    /// The objective can be made arbitrarily large. Probability-mass
    /// programs are always bounded, so callers treat this as an internal
    /// inconsistency.
    #[error("objective is unbounded")]
    Unbounded,
    /// The brute-force route refuses programs beyond its scale guard.
    #[error("program exceeds oracle scale ({vars} unknowns, {constraints} constraints)")]
    OracleScale { vars: usize, constraints: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Scale guards for [`brute_force_solve`].
pub const MAX_ORACLE_VARS: usize = 1 << 12;
pub const MAX_ORACLE_CONSTRAINTS: usize = 64;

/// Largest number of column subsets the literal enumeration will visit
/// before [`brute_force_solve`] switches to criss-cross pivoting.
const SUBSET_BUDGET: u128 = 1_000_000;

/// Safety cap on pivot steps. Both pivoting rules terminate finitely; the
/// cap only turns a hypothetical bug into an error instead of a hang.
const MAX_PIVOTS: usize = 1 << 22;

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> Option<&[Rational]> {
        self.objective.as_deref()
    }

    /// Appends a fresh unknown (coefficient zero in existing constraints
    /// and objective) and returns its index.
    pub fn add_variable(&mut self) -> usize {
        let idx = self.num_vars;
        self.num_vars += 1;
        for c in &mut self.constraints {
            c.coeffs.push(Rational::zero());
        }
        if let Some(obj) = &mut self.objective {
            obj.push(Rational::zero());
        }
        idx
    }

    /// Appends the constraint `Σ coeffs · x = rhs`. Sparse input; repeated
    /// indices accumulate.
    pub fn add_constraint(&mut self, coeffs: &[(usize, Rational)], rhs: Rational) {
        let mut dense = vec![Rational::zero(); self.num_vars];
        for (j, v) in coeffs {
            assert!(*j < self.num_vars, "constraint references unknown x{j}");
            dense[*j] += v;
        }
        self.constraints.push(Constraint { coeffs: dense, rhs });
    }

    /// Sets the objective `maximize Σ coeffs · x`.
    pub fn set_objective(&mut self, coeffs: &[(usize, Rational)]) {
        let mut dense = vec![Rational::zero(); self.num_vars];
        for (j, v) in coeffs {
            assert!(*j < self.num_vars, "objective references unknown x{j}");
            dense[*j] += v;
        }
        self.objective = Some(dense);
    }

    /// Exact check that `x` is nonnegative and satisfies every constraint.
    pub fn check_solution(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars || x.iter().any(Signed::is_negative) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let mut acc = Rational::zero();
            for (a, v) in c.coeffs.iter().zip(x) {
                if !a.is_zero() && !v.is_zero() {
                    acc += a * v;
                }
            }
            acc == c.rhs
        })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        match &self.objective {
            None => Rational::zero(),
            Some(c) => {
                let mut acc = Rational::zero();
                for (a, v) in c.iter().zip(x) {
                    if !a.is_zero() && !v.is_zero() {
                        acc += a * v;
                    }
                }
                acc
            }
        }
    }
}

impl fmt::Display for LinearProgram {
    /// Debug dump: one `<coef>*x<i> + ... = <rhs>` line per constraint.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(obj) = &self.objective {
            write!(f, "maximize:")?;
            for (j, c) in obj.iter().enumerate() {
                if !c.is_zero() {
                    write!(f, " {c}*x{j}")?;
                }
            }
            writeln!(f)?;
        }
        for con in &self.constraints {
            let mut first = true;
            for (j, c) in con.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    if !first {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}*x{j}")?;
                    first = false;
                }
            }
            if first {
                write!(f, "0")?;
            }
            writeln!(f, " = {}", con.rhs)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Two-phase primal simplex, Bland's rule.
// ---------------------------------------------------------------------------

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

enum SimplexStop {
    Unbounded,
    PivotCap,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let pv = self.a[row][col].clone();
        debug_assert!(!pv.is_zero());
        if !pv.is_one() {
            for v in &mut self.a[row] {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
            self.b[row] /= &pv;
        }
        for k in 0..self.a.len() {
            if k == row {
                continue;
            }
            let f = self.a[k][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.width {
                if !self.a[row][j].is_zero() {
                    let delta = &f * &self.a[row][j];
                    self.a[k][j] -= delta;
                }
            }
            if !self.b[row].is_zero() {
                let delta = &f * &self.b[row];
                self.b[k] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland-rule simplex minimizing `cost · x` from the current
    /// basic feasible tableau.
    fn minimize(&mut self, cost: &[Rational]) -> Result<(), SimplexStop> {
        for _ in 0..MAX_PIVOTS {
            let basis_cost: Vec<Rational> = self.basis.iter().map(|&j| cost[j].clone()).collect();
            let mut entering = None;
            'cols: for j in 0..self.width {
                let mut rc = cost[j].clone();
                for (i, y) in basis_cost.iter().enumerate() {
                    if !y.is_zero() && !self.a[i][j].is_zero() {
                        rc -= y * &self.a[i][j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break 'cols;
                }
            }
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((best_i, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Err(SimplexStop::Unbounded);
            };
            self.pivot(row, col);
        }
        Err(SimplexStop::PivotCap)
    }

    fn objective_of_basis(&self, cost: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &j) in self.basis.iter().enumerate() {
            if !cost[j].is_zero() && !self.b[i].is_zero() {
                acc += &cost[j] * &self.b[i];
            }
        }
        acc
    }
}

/// Solves the program with a dense exact two-phase simplex.
///
/// Phase 1 minimizes the total mass of one artificial variable per row;
/// the program is infeasible iff that minimum is positive. Bland's rule
/// makes the pivot sequence deterministic and terminating. Any solution
/// returned has been re-verified against the constraints by substitution.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    let width = n + m;

    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, con) in lp.constraints.iter().enumerate() {
        let flip = con.rhs.is_negative();
        let mut row: Vec<Rational> = if flip {
            con.coeffs.iter().map(|v| -v).collect()
        } else {
            con.coeffs.clone()
        };
        row.resize(width, Rational::zero());
        row[n + i] = Rational::one();
        a.push(row);
        b.push(if flip { -&con.rhs } else { con.rhs.clone() });
    }
    let mut tab = Tableau {
        a,
        b,
        basis: (n..width).collect(),
        width,
    };

    let mut phase1_cost = vec![Rational::zero(); width];
    for c in phase1_cost.iter_mut().skip(n) {
        *c = Rational::one();
    }
    tab.minimize(&phase1_cost).map_err(|stop| match stop {
        SimplexStop::Unbounded => LpError::Internal("phase 1 reported an unbounded ray".into()),
        SimplexStop::PivotCap => LpError::Internal("simplex exceeded the pivot cap".into()),
    })?;
    if tab.objective_of_basis(&phase1_cost).is_positive() {
        return Ok(LpOutcome {
            status: LpStatus::Infeasible,
            solution: None,
            objective_value: None,
        });
    }

    // Drive artificials out of the basis; rows that cannot be pivoted on a
    // structural column are redundant and dropped.
    let mut row = 0;
    while row < tab.a.len() {
        if tab.basis[row] >= n {
            match (0..n).find(|&j| !tab.a[row][j].is_zero()) {
                Some(j) => tab.pivot(row, j),
                None => {
                    tab.a.remove(row);
                    tab.b.remove(row);
                    tab.basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }
    for r in &mut tab.a {
        r.truncate(n);
    }
    tab.width = n;

    if let Some(c) = &lp.objective {
        let phase2_cost: Vec<Rational> = c.iter().map(|v| -v).collect();
        tab.minimize(&phase2_cost).map_err(|stop| match stop {
            SimplexStop::Unbounded => LpError::Unbounded,
            SimplexStop::PivotCap => LpError::Internal("simplex exceeded the pivot cap".into()),
        })?;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &j) in tab.basis.iter().enumerate() {
        x[j] = tab.b[i].clone();
    }
    if !lp.check_solution(&x) {
        return Err(LpError::Internal(
            "simplex produced a solution violating the constraints".into(),
        ));
    }
    let (status, objective_value) = match &lp.objective {
        Some(_) => (LpStatus::Optimal, Some(lp.objective_value(&x))),
        None => (LpStatus::Feasible, None),
    };
    Ok(LpOutcome {
        status,
        solution: Some(x),
        objective_value,
    })
}

// ---------------------------------------------------------------------------
// Brute-force route: presolve + literal basic-solution enumeration, with
// least-index criss-cross pivoting beyond the enumeration budget.
// ---------------------------------------------------------------------------

struct Presolved {
    /// Indices of original columns that survived zero-forcing.
    kept: Vec<usize>,
    /// Rows over the kept columns.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    infeasible: bool,
}

/// Removes trivially decided parts: empty rows (infeasible when their rhs
/// is nonzero) and variables forced to zero by a zero-rhs row of uniform
/// sign. Both reductions preserve the feasible set restricted to the
/// remaining columns.
fn presolve(lp: &LinearProgram) -> Presolved {
    let n = lp.num_vars;
    let mut col_alive = vec![true; n];
    let mut rows: Vec<(Vec<Rational>, Rational, bool)> = lp
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone(), true))
        .collect();

    loop {
        let mut changed = false;
        for (coeffs, rhs, alive) in rows.iter_mut() {
            if !*alive {
                continue;
            }
            let live: Vec<usize> = (0..n)
                .filter(|&j| col_alive[j] && !coeffs[j].is_zero())
                .collect();
            if live.is_empty() {
                if rhs.is_zero() {
                    *alive = false;
                    changed = true;
                    continue;
                }
                return Presolved {
                    kept: Vec::new(),
                    rows: Vec::new(),
                    rhs: Vec::new(),
                    infeasible: true,
                };
            }
            if rhs.is_zero() {
                let all_pos = live.iter().all(|&j| coeffs[j].is_positive());
                let all_neg = live.iter().all(|&j| coeffs[j].is_negative());
                if all_pos || all_neg {
                    for &j in &live {
                        col_alive[j] = false;
                    }
                    *alive = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&j| col_alive[j]).collect();
    let mut out_rows = Vec::new();
    let mut out_rhs = Vec::new();
    for (coeffs, rhs, alive) in rows {
        if alive {
            out_rows.push(kept.iter().map(|&j| coeffs[j].clone()).collect());
            out_rhs.push(rhs);
        }
    }
    Presolved {
        kept,
        rows: out_rows,
        rhs: out_rhs,
        infeasible: false,
    }
}

struct Reduced {
    /// Row-reduced rows over the kept columns; full row rank.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Each reduced row as a combination of the presolved rows.
    transform: Vec<Vec<Rational>>,
    /// Pivot column of each reduced row: an initial basis.
    pivots: Vec<usize>,
    infeasible: bool,
}

fn row_reduce(rows: &[Vec<Rational>], rhs: &[Rational]) -> Reduced {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); m];
            row[i] = Rational::one();
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        b.swap(rank, pr);
        t.swap(rank, pr);
        let pv = a[rank][col].clone();
        if !pv.is_one() {
            for v in &mut a[rank] {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
            b[rank] /= &pv;
            for v in &mut t[rank] {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
        }
        for i in 0..m {
            if i == rank || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                if !a[rank][j].is_zero() {
                    let delta = &f * &a[rank][j];
                    a[i][j] -= delta;
                }
            }
            if !b[rank].is_zero() {
                let delta = &f * &b[rank];
                b[i] -= delta;
            }
            for j in 0..m {
                if !t[rank][j].is_zero() {
                    let delta = &f * &t[rank][j];
                    t[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }

    for i in rank..m {
        if !b[i].is_zero() {
            return Reduced {
                rows: Vec::new(),
                rhs: Vec::new(),
                transform: Vec::new(),
                pivots: Vec::new(),
                infeasible: true,
            };
        }
    }
    a.truncate(rank);
    b.truncate(rank);
    t.truncate(rank);
    Reduced {
        rows: a,
        rhs: b,
        transform: t,
        pivots,
        infeasible: false,
    }
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    // The prefix C(n, i) is monotone for i up to min(k, n - k).
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// Sufficient condition for a bounded feasible set: every column carries a
/// positive coefficient in some all-nonnegative row. Any recession
/// direction must then vanish coordinate by coordinate.
fn boundedness_certified(rows: &[Vec<Rational>], n: usize) -> bool {
    let nonneg_rows: Vec<&Vec<Rational>> = rows
        .iter()
        .filter(|r| r.iter().all(|v| !v.is_negative()))
        .collect();
    (0..n).all(|j| nonneg_rows.iter().any(|r| r[j].is_positive()))
}

/// Solves the square system `A[:, subset] y = b` by Gaussian elimination.
fn solve_square(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    subset: &[usize],
) -> Option<Vec<Rational>> {
    let r = subset.len();
    let mut m: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = subset.iter().map(|&c| rows[i][c].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..r {
        let pr = (col..r).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pr);
        let pv = m[col][col].clone();
        if !pv.is_one() {
            for v in &mut m[col] {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
        }
        for i in (col + 1)..r {
            let f = m[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in col..=r {
                if !m[col][j].is_zero() {
                    let delta = &f * &m[col][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    let mut y = vec![Rational::zero(); r];
    for i in (0..r).rev() {
        let mut acc = m[i][r].clone();
        for j in (i + 1)..r {
            if !m[i][j].is_zero() && !y[j].is_zero() {
                acc -= &m[i][j] * &y[j];
            }
        }
        y[i] = acc;
    }
    Some(y)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - (k - i) {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Literal enumeration of candidate basic solutions: every rank-sized
/// column subset, the square rational solve, nonnegativity, and a full
/// check against the original program. With an objective, all feasible
/// candidates are visited and the best is returned.
fn enumerate_basic_solutions(
    lp: &LinearProgram,
    kept: &[usize],
    reduced: &Reduced,
) -> Result<LpOutcome, LpError> {
    let r = reduced.rows.len();
    let nk = kept.len();
    let to_full = |y: &[Rational], subset: &[usize]| {
        let mut x = vec![Rational::zero(); lp.num_vars];
        for (yi, &col) in y.iter().zip(subset) {
            x[kept[col]] = yi.clone();
        }
        x
    };

    let mut subset: Vec<usize> = (0..r).collect();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    loop {
        if let Some(y) = solve_square(&reduced.rows, &reduced.rhs, &subset) {
            if y.iter().all(|v| !v.is_negative()) {
                let x = to_full(&y, &subset);
                if lp.check_solution(&x) {
                    match &lp.objective {
                        None => return finish_outcome(lp, x),
                        Some(_) => {
                            let v = lp.objective_value(&x);
                            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                                best = Some((v, x));
                            }
                        }
                    }
                }
            }
        }
        if !next_combination(&mut subset, nk) {
            break;
        }
    }
    match best {
        Some((v, x)) => Ok(LpOutcome {
            status: LpStatus::Optimal,
            solution: Some(x),
            objective_value: Some(v),
        }),
        None => Ok(LpOutcome {
            status: LpStatus::Infeasible,
            solution: None,
            objective_value: None,
        }),
    }
}

fn finish_outcome(lp: &LinearProgram, x: Vec<Rational>) -> Result<LpOutcome, LpError> {
    match &lp.objective {
        Some(_) => {
            let v = lp.objective_value(&x);
            Ok(LpOutcome {
                status: LpStatus::Optimal,
                solution: Some(x),
                objective_value: Some(v),
            })
        }
        None => Ok(LpOutcome {
            status: LpStatus::Feasible,
            solution: Some(x),
            objective_value: None,
        }),
    }
}

/// Least-index criss-cross pivoting on the reduced dictionary. Unlike the
/// two-phase simplex it starts from any basis, visits infeasible
/// dictionaries, and needs no artificial variables; the least-index rule
/// guarantees finite termination. Infeasibility produces a separating row
/// that is re-verified against the presolved constraints by substitution.
fn criss_cross(
    lp: &LinearProgram,
    kept: &[usize],
    presolved_rows: &[Vec<Rational>],
    presolved_rhs: &[Rational],
    reduced: &Reduced,
) -> Result<LpOutcome, LpError> {
    let r = reduced.rows.len();
    let nk = kept.len();
    let mut a = reduced.rows.to_vec();
    let mut b = reduced.rhs.to_vec();
    let mut t = reduced.transform.to_vec();
    let mut basis = reduced.pivots.clone();

    let cmin: Vec<Rational> = match &lp.objective {
        Some(c) => kept.iter().map(|&j| -&c[j]).collect(),
        None => vec![Rational::zero(); nk],
    };
    let has_objective = lp.objective.is_some();

    for _ in 0..MAX_PIVOTS {
        let basis_cost: Vec<Rational> = basis.iter().map(|&j| cmin[j].clone()).collect();
        let reduced_cost = |j: usize, a: &[Vec<Rational>]| {
            let mut rc = cmin[j].clone();
            for (i, y) in basis_cost.iter().enumerate() {
                if !y.is_zero() && !a[i][j].is_zero() {
                    rc -= y * &a[i][j];
                }
            }
            rc
        };

        // Least-index candidate among primal-infeasible basics and
        // dual-infeasible nonbasics.
        let mut candidate: Option<(usize, Result<usize, usize>)> = None;
        for (i, &bj) in basis.iter().enumerate() {
            if b[i].is_negative() && candidate.as_ref().is_none_or(|(k, _)| bj < *k) {
                candidate = Some((bj, Ok(i)));
            }
        }
        if has_objective {
            for j in 0..nk {
                if candidate.as_ref().is_some_and(|(k, _)| *k <= j) {
                    continue;
                }
                if basis.contains(&j) {
                    continue;
                }
                if reduced_cost(j, &a).is_negative() {
                    candidate = Some((j, Err(j)));
                }
            }
        }

        let Some((_, kind)) = candidate else {
            let mut x = vec![Rational::zero(); lp.num_vars];
            for (i, &j) in basis.iter().enumerate() {
                x[kept[j]] = b[i].clone();
            }
            if !lp.check_solution(&x) {
                return Err(LpError::Internal(
                    "criss-cross produced a solution violating the constraints".into(),
                ));
            }
            return finish_outcome(lp, x);
        };

        let (row, col) = match kind {
            Ok(i) => {
                let col = (0..nk).find(|&j| a[i][j].is_negative());
                match col {
                    Some(j) => (i, j),
                    None => {
                        verify_farkas(&t[i], &b[i], presolved_rows, presolved_rhs)?;
                        return Ok(LpOutcome {
                            status: LpStatus::Infeasible,
                            solution: None,
                            objective_value: None,
                        });
                    }
                }
            }
            Err(j) => {
                let mut pick: Option<usize> = None;
                for i in 0..r {
                    if a[i][j].is_positive() && pick.is_none_or(|p| basis[i] < basis[p]) {
                        pick = Some(i);
                    }
                }
                match pick {
                    Some(i) => (i, j),
                    None => return Err(LpError::Unbounded),
                }
            }
        };

        let pv = a[row][col].clone();
        if !pv.is_one() {
            for v in &mut a[row] {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
            for v in &mut t[row] {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
            b[row] /= &pv;
        }
        for i in 0..r {
            if i == row || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..nk {
                if !a[row][j].is_zero() {
                    let delta = &f * &a[row][j];
                    a[i][j] -= delta;
                }
            }
            for j in 0..t[row].len() {
                if !t[row][j].is_zero() {
                    let delta = &f * &t[row][j];
                    t[i][j] -= delta;
                }
            }
            if !b[row].is_zero() {
                let delta = &f * &b[row];
                b[i] -= delta;
            }
        }
        basis[row] = col;
    }
    Err(LpError::Internal(
        "criss-cross exceeded the pivot cap".into(),
    ))
}

/// Confirms a Farkas certificate: `y · A ≥ 0` componentwise while
/// `y · b < 0`, which makes `A x = b, x ≥ 0` impossible.
fn verify_farkas(
    y: &[Rational],
    row_rhs: &Rational,
    rows: &[Vec<Rational>],
    rhs: &[Rational],
) -> Result<(), LpError> {
    if !row_rhs.is_negative() {
        return Err(LpError::Internal(
            "infeasibility certificate has nonnegative rhs".into(),
        ));
    }
    let n = rows.first().map_or(0, Vec::len);
    for j in 0..n {
        let mut acc = Rational::zero();
        for (yi, row) in y.iter().zip(rows) {
            if !yi.is_zero() && !row[j].is_zero() {
                acc += yi * &row[j];
            }
        }
        if acc.is_negative() {
            return Err(LpError::Internal(
                "infeasibility certificate fails verification".into(),
            ));
        }
    }
    let mut acc = Rational::zero();
    for (yi, bi) in y.iter().zip(rhs) {
        if !yi.is_zero() && !bi.is_zero() {
            acc += yi * bi;
        }
    }
    if acc != *row_rhs {
        return Err(LpError::Internal(
            "infeasibility certificate fails verification".into(),
        ));
    }
    Ok(())
}

/// Decides the program by a route independent of [`simplex_solve`].
///
/// After exact presolving and row reduction, the program is decided by
/// literal enumeration of candidate basic solutions when the subset count
/// fits the budget, and by least-index criss-cross pivoting otherwise.
/// With an objective present, the same routes maximize it. Scale guards
/// refuse programs with more than 2^12 unknowns or 64 constraints.
pub fn brute_force_solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    if n > MAX_ORACLE_VARS || m > MAX_ORACLE_CONSTRAINTS {
        return Err(LpError::OracleScale {
            vars: n,
            constraints: m,
        });
    }

    let infeasible = LpOutcome {
        status: LpStatus::Infeasible,
        solution: None,
        objective_value: None,
    };

    let pre = presolve(lp);
    if pre.infeasible {
        return Ok(infeasible);
    }
    let reduced = row_reduce(&pre.rows, &pre.rhs);
    if reduced.infeasible {
        return Ok(infeasible);
    }

    if reduced.rows.is_empty() {
        // No effective constraints remain: the origin is feasible, and the
        // objective is unbounded as soon as it rewards any surviving column.
        if let Some(c) = &lp.objective {
            if pre.kept.iter().any(|&j| c[j].is_positive()) {
                return Err(LpError::Unbounded);
            }
        }
        let x = vec![Rational::zero(); n];
        if !lp.check_solution(&x) {
            return Err(LpError::Internal(
                "empty reduced system but zero is not feasible".into(),
            ));
        }
        return finish_outcome(lp, x);
    }

    let enumerable = binomial_capped(pre.kept.len(), reduced.rows.len(), SUBSET_BUDGET)
        .is_some_and(|count| count <= SUBSET_BUDGET);
    let safe_to_enumerate = match &lp.objective {
        None => enumerable,
        // Optimizing over vertices is only sound on a bounded feasible set.
        Some(_) => enumerable && boundedness_certified(&pre.rows, pre.kept.len()),
    };

    if safe_to_enumerate {
        enumerate_basic_solutions(lp, &pre.kept, &reduced)
    } else {
        criss_cross(lp, &pre.kept, &pre.rows, &pre.rhs, &reduced)
    }
}
