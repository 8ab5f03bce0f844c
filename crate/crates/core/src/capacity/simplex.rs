//! A self-contained two-phase revised simplex solver.
//!
//! Solves `min c·x  s.t.  A x {<=,=,>=} b, 0 <= x (<= u)` with a dense
//! explicit basis inverse, updated by Gauss-Jordan pivots. The scalar type is
//! pluggable: [`f64`] for speed (with small pivot/feasibility tolerances) and
//! [`BigRational`](num_rational::BigRational) for exact arithmetic with zero
//! tolerances, which the test suite uses to cross-check the float path.
//!
//! Pivoting is Dantzig's rule (most negative reduced cost, lowest index on
//! ties) until the objective stalls, then permanently Bland's rule, which
//! guarantees termination. Artificial variables are never allowed to re-enter
//! the basis, and an extra ratio-test pass evicts zero-level basic artificials
//! the moment the entering column crosses their row, so they cannot creep back
//! above zero in phase 2.

// The dense kernels below index several flat row-major arrays in lockstep;
// explicit row/column indices read better than zipped iterators there.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CapacityError;
use crate::numeric::Rational;

/// Scalar field the simplex runs over.
pub trait LpScalar:
    Clone
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(value: Rational) -> Self;
    fn abs_value(&self) -> Self;
    /// Smallest magnitude accepted as a pivot element.
    fn pivot_tolerance() -> Self;
    /// Threshold below which a value counts as zero for feasibility and
    /// optimality decisions.
    fn feasibility_tolerance() -> Self;
    fn to_f64(&self) -> f64;
}

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(value: Rational) -> Self {
        *value.numer() as f64 / *value.denom() as f64
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn pivot_tolerance() -> Self {
        1e-10
    }
    fn feasibility_tolerance() -> Self {
        1e-9
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl LpScalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn from_rational(value: Rational) -> Self {
        BigRational::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
    }
    fn abs_value(&self) -> Self {
        Signed::abs(self)
    }
    fn pivot_tolerance() -> Self {
        <BigRational as Zero>::zero()
    }
    fn feasibility_tolerance() -> Self {
        <BigRational as Zero>::zero()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Row sense in a linear program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

/// One constraint row: a sparse left-hand side, a sense, and a right-hand
/// side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub rel: Rel,
    pub rhs: Rational,
}

/// A linear program in exact rational data: minimize `objective · x` subject
/// to the rows, `x >= 0`, and optional per-variable upper bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    rows: Vec<LpRow>,
    upper_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            rows: Vec::new(),
            upper_bounds: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[LpRow] {
        &self.rows
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn set_objective(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rational)>, rel: Rel, rhs: Rational) {
        self.rows.push(LpRow { coeffs, rel, rhs });
    }

    pub fn set_upper_bound(&mut self, var: usize, bound: Rational) {
        self.upper_bounds[var] = Some(bound);
    }

    /// Rows plus upper bounds as explicit rows, duplicate coefficients merged
    /// and zero coefficients dropped, every right-hand side made nonnegative
    /// by negating rows (which flips `Le` and `Ge`).
    fn canonical_rows(&self) -> Result<Vec<LpRow>, CapacityError> {
        let mut canonical = Vec::with_capacity(self.rows.len());
        let bound_rows = self
            .upper_bounds
            .iter()
            .enumerate()
            .filter_map(|(var, ub)| {
                ub.map(|bound| LpRow {
                    coeffs: vec![(var, Rational::from_integer(1))],
                    rel: Rel::Le,
                    rhs: bound,
                })
            });
        for row in self.rows.iter().cloned().chain(bound_rows) {
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (var, coeff) in row.coeffs {
                if var >= self.num_vars {
                    return Err(CapacityError::VariableOutOfRange {
                        var,
                        num_vars: self.num_vars,
                    });
                }
                *merged.entry(var).or_insert_with(Rational::zero) += coeff;
            }
            let mut coeffs: Vec<(usize, Rational)> = merged
                .into_iter()
                .filter(|(_, coeff)| !coeff.is_zero())
                .collect();
            let mut rel = row.rel;
            let mut rhs = row.rhs;
            if rhs < Rational::zero() {
                for (_, coeff) in &mut coeffs {
                    *coeff = -*coeff;
                }
                rhs = -rhs;
                rel = match rel {
                    Rel::Le => Rel::Ge,
                    Rel::Ge => Rel::Le,
                    Rel::Eq => Rel::Eq,
                };
            }
            canonical.push(LpRow { coeffs, rel, rhs });
        }
        Ok(canonical)
    }
}

/// Terminal state of a simplex run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The solver gave up: iteration cap hit, or the final solution failed
    /// the residual check against the original rows.
    NumericalFailure,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::NumericalFailure => "numerical failure",
        };
        f.write_str(name)
    }
}

/// Result of a simplex run. `values` holds the structural variables (empty
/// unless optimal) and `objective` the recomputed `c·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<S> {
    pub status: LpStatus,
    pub values: Vec<S>,
    pub objective: S,
    pub iterations: usize,
}

impl<S: LpScalar> LpSolution<S> {
    fn terminal(status: LpStatus, iterations: usize) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective: S::zero(),
            iterations,
        }
    }
}

/// How many stalled (non-improving) iterations Dantzig pricing tolerates
/// before the solver switches permanently to Bland's rule.
const STALL_LIMIT: usize = 256;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

enum LoopEnd {
    PhaseOptimal,
    Unbounded,
    IterationCap,
}

struct Simplex<S> {
    m: usize,
    /// Sparse columns of the standard-form matrix.
    cols: Vec<Vec<(usize, S)>>,
    is_artificial: Vec<bool>,
    /// Phase-2 cost of each column (zero for slack/surplus/artificial).
    cost2: Vec<S>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// Dense basis inverse, row-major `m x m`.
    binv: Vec<S>,
    /// Current basic variable values, aligned with `basis`.
    xb: Vec<S>,
    iterations: usize,
    iteration_cap: usize,
    bland: bool,
    stall: usize,
    last_objective: Option<S>,
}

impl<S: LpScalar> Simplex<S> {
    fn new(rows: &[LpRow], num_structural: usize, objective: &[Rational]) -> Self {
        let m = rows.len();
        let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); num_structural];
        for (r, row) in rows.iter().enumerate() {
            for &(var, coeff) in &row.coeffs {
                cols[var].push((r, S::from_rational(coeff)));
            }
        }
        let mut is_artificial = vec![false; num_structural];
        let mut cost2: Vec<S> = objective.iter().map(|&c| S::from_rational(c)).collect();
        let mut basis = vec![usize::MAX; m];
        // One slack or surplus column per row, then artificials for rows that
        // need them (Ge and Eq). Slacks start basic; so do artificials.
        let mut artificial_rows = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            match row.rel {
                Rel::Le => {
                    cols.push(vec![(r, S::one())]);
                    is_artificial.push(false);
                    cost2.push(S::zero());
                    basis[r] = cols.len() - 1;
                }
                Rel::Ge => {
                    cols.push(vec![(r, -S::one())]);
                    is_artificial.push(false);
                    cost2.push(S::zero());
                    artificial_rows.push(r);
                }
                Rel::Eq => artificial_rows.push(r),
            }
        }
        for r in artificial_rows {
            cols.push(vec![(r, S::one())]);
            is_artificial.push(true);
            cost2.push(S::zero());
            basis[r] = cols.len() - 1;
        }
        let num_cols = cols.len();
        let mut in_basis = vec![false; num_cols];
        for &j in &basis {
            in_basis[j] = true;
        }
        let mut binv = vec![S::zero(); m * m];
        for r in 0..m {
            binv[r * m + r] = S::one();
        }
        let xb: Vec<S> = rows.iter().map(|row| S::from_rational(row.rhs)).collect();
        let iteration_cap = 50 * (m + num_cols) + 10_000;
        Simplex {
            m,
            cols,
            is_artificial,
            cost2,
            basis,
            in_basis,
            binv,
            xb,
            iterations: 0,
            iteration_cap,
            bland: false,
            stall: 0,
            last_objective: None,
        }
    }

    fn phase_cost(&self, col: usize, phase: Phase) -> S {
        match phase {
            Phase::One => {
                if self.is_artificial[col] {
                    S::one()
                } else {
                    S::zero()
                }
            }
            Phase::Two => self.cost2[col].clone(),
        }
    }

    fn current_objective(&self, phase: Phase) -> S {
        let mut z = S::zero();
        for (r, &j) in self.basis.iter().enumerate() {
            z = z + self.phase_cost(j, phase) * self.xb[r].clone();
        }
        z
    }

    /// `y = c_B · B^-1`, the simplex multipliers for the current phase.
    fn multipliers(&self, phase: Phase) -> Vec<S> {
        let mut y = vec![S::zero(); self.m];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = self.phase_cost(j, phase);
            if c != S::zero() {
                for k in 0..self.m {
                    y[k] = y[k].clone() + c.clone() * self.binv[r * self.m + k].clone();
                }
            }
        }
        y
    }

    fn reduced_cost(&self, col: usize, y: &[S], phase: Phase) -> S {
        let mut d = self.phase_cost(col, phase);
        for &(r, ref a) in &self.cols[col] {
            d = d - y[r].clone() * a.clone();
        }
        d
    }

    /// Chooses the entering column, or `None` at the phase optimum.
    fn entering(&self, y: &[S], phase: Phase) -> Option<usize> {
        let tol = S::feasibility_tolerance();
        let mut best: Option<(usize, S)> = None;
        for j in 0..self.cols.len() {
            if self.in_basis[j] || self.is_artificial[j] {
                continue;
            }
            let d = self.reduced_cost(j, y, phase);
            if d >= -tol.clone() {
                continue;
            }
            if self.bland {
                return Some(j);
            }
            match &best {
                Some((_, incumbent)) if d >= *incumbent => {}
                _ => best = Some((j, d)),
            }
        }
        best.map(|(j, _)| j)
    }

    /// `w = B^-1 · A_j`.
    fn pivot_column(&self, col: usize) -> Vec<S> {
        let mut w = vec![S::zero(); self.m];
        for &(r, ref a) in &self.cols[col] {
            for i in 0..self.m {
                w[i] = w[i].clone() + self.binv[i * self.m + r].clone() * a.clone();
            }
        }
        w
    }

    /// Leaving row: first a zero-level basic artificial crossed by the
    /// entering column (evicted at a degenerate step so artificials can never
    /// grow back), otherwise the usual minimum-ratio row. `None` means the
    /// entering column is unblocked.
    fn leaving(&self, w: &[S]) -> Option<usize> {
        let pivot_tol = S::pivot_tolerance();
        let feas_tol = S::feasibility_tolerance();
        for r in 0..self.m {
            if self.is_artificial[self.basis[r]]
                && self.xb[r] <= feas_tol
                && w[r].abs_value() > pivot_tol
            {
                return Some(r);
            }
        }
        let mut best: Option<(usize, S)> = None;
        for r in 0..self.m {
            if w[r] <= pivot_tol {
                continue;
            }
            let numer = if self.xb[r] < S::zero() {
                S::zero()
            } else {
                self.xb[r].clone()
            };
            let ratio = numer / w[r].clone();
            let better = match &best {
                None => true,
                Some((incumbent_row, incumbent)) => {
                    ratio < *incumbent
                        || (ratio == *incumbent && self.basis[r] < self.basis[*incumbent_row])
                }
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    /// Gauss-Jordan update of the basis inverse and basic values for column
    /// `col` entering at row `r`.
    fn pivot(&mut self, col: usize, r: usize, w: &[S]) {
        let theta = self.xb[r].clone() / w[r].clone();
        for i in 0..self.m {
            if i != r {
                self.xb[i] = self.xb[i].clone() - theta.clone() * w[i].clone();
            }
        }
        self.xb[r] = theta;
        let inv_pivot = S::one() / w[r].clone();
        for k in 0..self.m {
            self.binv[r * self.m + k] = self.binv[r * self.m + k].clone() * inv_pivot.clone();
        }
        for i in 0..self.m {
            if i == r || w[i] == S::zero() {
                continue;
            }
            let factor = w[i].clone();
            for k in 0..self.m {
                let delta = factor.clone() * self.binv[r * self.m + k].clone();
                self.binv[i * self.m + k] = self.binv[i * self.m + k].clone() - delta;
            }
        }
        self.in_basis[self.basis[r]] = false;
        self.in_basis[col] = true;
        self.basis[r] = col;
    }

    fn track_stall(&mut self, phase: Phase) {
        let z = self.current_objective(phase);
        match &self.last_objective {
            Some(previous) if z < *previous => self.stall = 0,
            Some(_) => self.stall += 1,
            None => {}
        }
        self.last_objective = Some(z);
        if self.stall > STALL_LIMIT {
            self.bland = true;
        }
    }

    fn run_phase(&mut self, phase: Phase) -> LoopEnd {
        self.last_objective = None;
        self.stall = 0;
        loop {
            if self.iterations >= self.iteration_cap {
                return LoopEnd::IterationCap;
            }
            let y = self.multipliers(phase);
            let Some(col) = self.entering(&y, phase) else {
                return LoopEnd::PhaseOptimal;
            };
            let w = self.pivot_column(col);
            let Some(row) = self.leaving(&w) else {
                return LoopEnd::Unbounded;
            };
            self.pivot(col, row, &w);
            self.iterations += 1;
            self.track_stall(phase);
        }
    }

    /// After phase 1, pivots zero-level artificials out of the basis wherever
    /// a usable non-artificial column exists; rows with none are redundant and
    /// keep their artificial parked at zero.
    fn evict_artificials(&mut self) {
        let pivot_tol = S::pivot_tolerance();
        for r in 0..self.m {
            if !self.is_artificial[self.basis[r]] {
                continue;
            }
            let replacement = (0..self.cols.len()).find(|&j| {
                if self.in_basis[j] || self.is_artificial[j] {
                    return false;
                }
                let mut entry = S::zero();
                for &(row, ref a) in &self.cols[j] {
                    entry = entry + self.binv[r * self.m + row].clone() * a.clone();
                }
                entry.abs_value() > pivot_tol
            });
            if let Some(col) = replacement {
                let w = self.pivot_column(col);
                self.pivot(col, r, &w);
            }
        }
    }

    fn structural_values(&self, num_structural: usize) -> Vec<S> {
        let mut values = vec![S::zero(); num_structural];
        for (r, &j) in self.basis.iter().enumerate() {
            if j < num_structural {
                values[j] = self.xb[r].clone();
            }
        }
        for v in &mut values {
            if *v < S::zero() {
                *v = S::zero();
            }
        }
        values
    }
}

/// Checks the candidate solution against every canonical row, with a
/// tolerance scaled by the right-hand side (exact arithmetic has zero
/// tolerance, so this is an identity check there).
fn residuals_ok<S: LpScalar>(rows: &[LpRow], values: &[S]) -> bool {
    let tol = S::feasibility_tolerance();
    for row in rows {
        let mut lhs = S::zero();
        for &(var, coeff) in &row.coeffs {
            lhs = lhs + S::from_rational(coeff) * values[var].clone();
        }
        let rhs = S::from_rational(row.rhs);
        let slack = tol.clone() * (S::one() + rhs.abs_value());
        let ok = match row.rel {
            Rel::Le => lhs <= rhs + slack,
            Rel::Ge => lhs >= rhs - slack,
            Rel::Eq => (lhs - rhs).abs_value() <= slack,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Solves the linear program with the two-phase revised simplex method.
///
/// `Err` is reserved for malformed input (a coefficient naming a variable the
/// program does not have); everything the solver discovers about the program
/// itself — optimality, infeasibility, unboundedness, numerical trouble — is
/// reported in the solution's status.
pub fn solve_lp<S: LpScalar>(lp: &LinearProgram) -> Result<LpSolution<S>, CapacityError> {
    let rows = lp.canonical_rows()?;
    let mut simplex = Simplex::<S>::new(&rows, lp.num_vars, &lp.objective);

    let needs_phase1 = rows.iter().any(|row| row.rel != Rel::Le);
    if needs_phase1 {
        match simplex.run_phase(Phase::One) {
            LoopEnd::PhaseOptimal => {}
            // Phase 1 minimizes a sum of nonnegative variables; an unbounded
            // ray here means the arithmetic went wrong.
            LoopEnd::Unbounded | LoopEnd::IterationCap => {
                return Ok(LpSolution::terminal(
                    LpStatus::NumericalFailure,
                    simplex.iterations,
                ));
            }
        }
        let z1 = simplex.current_objective(Phase::One);
        let b_norm = rows.iter().fold(S::zero(), |acc, row| {
            acc + S::from_rational(row.rhs).abs_value()
        });
        if z1 > S::feasibility_tolerance() * (S::one() + b_norm) {
            return Ok(LpSolution::terminal(
                LpStatus::Infeasible,
                simplex.iterations,
            ));
        }
        simplex.evict_artificials();
    }

    match simplex.run_phase(Phase::Two) {
        LoopEnd::PhaseOptimal => {}
        LoopEnd::Unbounded => {
            return Ok(LpSolution::terminal(
                LpStatus::Unbounded,
                simplex.iterations,
            ));
        }
        LoopEnd::IterationCap => {
            return Ok(LpSolution::terminal(
                LpStatus::NumericalFailure,
                simplex.iterations,
            ));
        }
    }

    let values = simplex.structural_values(lp.num_vars);
    if !residuals_ok(&rows, &values) {
        return Ok(LpSolution::terminal(
            LpStatus::NumericalFailure,
            simplex.iterations,
        ));
    }
    let mut objective = S::zero();
    for (j, &c) in lp.objective.iter().enumerate() {
        if !c.is_zero() {
            objective = objective + S::from_rational(c) * values[j].clone();
        }
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective,
        iterations: simplex.iterations,
    })
}
