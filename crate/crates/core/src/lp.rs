//! Constrained ℓ1 minimisation, `min ‖γ‖₁ subject to ‖Aγ − b‖_∞ ≤ λ`.
//!
//! Each pair of inequalities `b_k − λ ≤ (Aγ)_k ≤ b_k + λ` is one ranged row,
//! so the program is solved as a bounded linear program with `p` rows:
//!
//! ```text
//! min  1ᵀγ⁺ + 1ᵀγ⁻
//! s.t. Aγ⁺ − Aγ⁻ + s = 0,   γ± ≥ 0,   −b − λ ≤ s ≤ −b + λ
//! ```
//!
//! Every cost is non-negative, so the basis of row variables `s` is dual
//! feasible and the revised dual simplex runs from it without a phase-one
//! problem. The basis inverse is kept explicitly and refactored periodically.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// The data of one constrained ℓ1 program.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Program {
    a: DMatrix<f64>,
    b: DVector<f64>,
    lambda: f64,
}

impl L1Program {
    pub fn new(a: DMatrix<f64>, b: DVector<f64>, lambda: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::invalid(format!(
                "A must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if a.nrows() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: b.len(),
            });
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::invalid(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::invalid("program data must be finite"));
        }
        Ok(L1Program { a, b, lambda })
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    /// `‖Aγ − b‖_∞`.
    pub fn residual_inf(&self, gamma: &DVector<f64>) -> f64 {
        (&self.a * gamma - &self.b).amax()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// The pivot budget ran out; the returned point is feasible but not
    /// certified optimal.
    FeasibleSuboptimal,
    InfeasibleNumerically,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSolution {
    pub gamma: DVector<f64>,
    /// `‖γ‖₁`
    pub objective: f64,
    /// `‖Aγ − b‖_∞`
    pub residual_inf: f64,
    pub status: LpStatus,
    pub pivots: usize,
}

impl DirectionSolution {
    /// Number of non-zero entries of `γ`.
    pub fn support_size(&self) -> usize {
        self.gamma.iter().filter(|v| **v != 0.0).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions {
    /// Pivot budget; `None` means `50 · (rows + columns)`.
    pub max_pivots: Option<usize>,
    /// Rebuild the basis inverse from scratch after this many pivots.
    pub refactor_every: usize,
    /// Primal feasibility tolerance, in units of the normalised program.
    pub feasibility_tol: f64,
    /// Smallest pivot magnitude accepted by the ratio test.
    pub pivot_tol: f64,
    /// Consecutive dual-degenerate pivots before switching to Bland's rule.
    pub bland_after: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            max_pivots: None,
            refactor_every: 80,
            feasibility_tol: 1e-11,
            pivot_tol: 1e-9,
            bland_after: 30,
        }
    }
}

/// Absolute slack allowed on `‖Aγ − b‖_∞ ≤ λ` for a solution to count as
/// optimal, for programs whose largest entry is at most one.
pub const FEASIBILITY_SLACK: f64 = 1e-8;

pub fn solve_constrained_l1(prog: &L1Program) -> Result<DirectionSolution> {
    solve_constrained_l1_with(prog, &LpOptions::default())
}

pub fn solve_constrained_l1_with(prog: &L1Program, opts: &LpOptions) -> Result<DirectionSolution> {
    let scale = program_scale(&prog.a, &prog.b);
    let mut lp = DualSimplex::new(&prog.a / scale, *opts);
    solve_at(&prog.a, &prog.b, prog.lambda, scale, &mut lp)
}

/// Solves the program for every `λ` in `lambdas`, sharing one `(A, b)`.
///
/// The reduced costs do not depend on `λ`, so the optimal basis for one `λ`
/// stays dual feasible for the next; the path is walked from the largest
/// `λ` down and each solve starts from the previous basis. Results come back
/// in the order of `lambdas`. A solve that loses the basis restarts from the
/// row-variable basis.
pub fn solve_constrained_l1_path(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    lambdas: &[f64],
    opts: &LpOptions,
) -> Result<Vec<Result<DirectionSolution>>> {
    L1Program::new(a.clone(), b.clone(), 0.0)?;
    if let Some(bad) = lambdas.iter().find(|l| !(**l >= 0.0) || !l.is_finite()) {
        return Err(Error::invalid(format!(
            "lambda must be finite and non-negative, got {bad}"
        )));
    }
    let scale = program_scale(a, b);
    let scaled = a / scale;
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&i, &j| lambdas[j].total_cmp(&lambdas[i]));

    let mut out: Vec<Option<Result<DirectionSolution>>> =
        (0..lambdas.len()).map(|_| None).collect();
    let mut lp = DualSimplex::new(scaled.clone(), *opts);
    for i in order {
        let sol = solve_at(a, b, lambdas[i], scale, &mut lp);
        if sol.is_err() {
            lp = DualSimplex::new(scaled.clone(), *opts);
        }
        out[i] = Some(sol);
    }
    Ok(out
        .into_iter()
        .map(|s| s.expect("every lambda is solved"))
        .collect())
}

// (cA, cb, cλ) has the same feasible set, so the solver works on the
// program normalised to unit largest entry
fn program_scale(a: &DMatrix<f64>, b: &DVector<f64>) -> f64 {
    let scale = a.amax().max(b.amax());
    if scale > 0.0 {
        scale
    } else {
        1.0
    }
}

fn solve_at(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    lambda: f64,
    scale: f64,
    lp: &mut DualSimplex,
) -> Result<DirectionSolution> {
    let p = b.len();
    let lower: Vec<f64> = b.iter().map(|v| (-v - lambda) / scale).collect();
    let upper: Vec<f64> = b.iter().map(|v| (-v + lambda) / scale).collect();
    lp.set_bounds(lower, upper)?;
    let start = lp.pivots;
    let outcome = lp.run()?;
    let pivots = lp.pivots - start;
    let slack = FEASIBILITY_SLACK * scale.max(1.0);

    let finish = |gamma: DVector<f64>, status: LpStatus| {
        let residual_inf = (a * &gamma - b).amax();
        let status = match status {
            LpStatus::Optimal if residual_inf > lambda + slack => LpStatus::InfeasibleNumerically,
            s => s,
        };
        DirectionSolution {
            objective: gamma.lp_norm(1),
            gamma,
            residual_inf,
            status,
            pivots,
        }
    };

    match outcome {
        SimplexOutcome::Optimal => Ok(finish(lp.gamma(), LpStatus::Optimal)),
        SimplexOutcome::Infeasible => {
            Ok(finish(DVector::zeros(p), LpStatus::InfeasibleNumerically))
        }
        SimplexOutcome::PivotLimit => match a.clone().lu().solve(b) {
            Some(gamma) if gamma.iter().all(|v| v.is_finite()) => {
                let sol = finish(gamma, LpStatus::FeasibleSuboptimal);
                if sol.residual_inf <= lambda + slack {
                    Ok(sol)
                } else {
                    Ok(DirectionSolution {
                        status: LpStatus::InfeasibleNumerically,
                        ..sol
                    })
                }
            }
            _ => Ok(finish(DVector::zeros(p), LpStatus::InfeasibleNumerically)),
        },
    }
}

/// `count` log-spaced values from `0.01·‖b‖_∞` up to `‖b‖_∞`, ascending.
pub fn default_lambda_grid(b: &DVector<f64>, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::invalid("lambda grid needs at least two points"));
    }
    let top = b.amax();
    if !(top > 0.0) || !top.is_finite() {
        return Err(Error::Degenerate(
            "center difference is zero; the classes are indistinguishable".into(),
        ));
    }
    let lo = 0.01 * top;
    let ratio = (top / lo).ln();
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|k| match k {
            0 => lo,
            k if k == count - 1 => top,
            k => lo * (ratio * k as f64 / last).exp(),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SimplexOutcome {
    Optimal,
    Infeasible,
    PivotLimit,
}

/// Reduced costs this close to zero count as zero in the Harris ratio test.
const DUAL_TOL: f64 = 1e-12;

/// Bounded dual simplex over `p` rows.
///
/// Variables `0..p` are `γ⁺`, `p..2p` are `γ⁻` (both `[0, ∞)`, cost one) and
/// `2p..3p` are the row variables `s` with finite bounds and cost zero.
struct DualSimplex {
    a: DMatrix<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    opts: LpOptions,
    p: usize,
    /// basic variable of each row
    basis: Vec<usize>,
    /// row of each variable, if basic
    position: Vec<Option<usize>>,
    /// nonbasic row variables resting at their upper bound
    at_upper: Vec<bool>,
    /// basis inverse, row-major
    binv: Vec<f64>,
    xb: Vec<f64>,
    /// reduced costs, zero on basic variables
    d: Vec<f64>,
    pivots: usize,
    since_refactor: usize,
}

impl DualSimplex {
    fn new(a: DMatrix<f64>, opts: LpOptions) -> Self {
        let p = a.nrows();
        let basis: Vec<usize> = (2 * p..3 * p).collect();
        let mut position = vec![None; 3 * p];
        for (r, &v) in basis.iter().enumerate() {
            position[v] = Some(r);
        }
        let mut binv = vec![0.0; p * p];
        for i in 0..p {
            binv[i * p + i] = 1.0;
        }
        let mut d = vec![1.0; 3 * p];
        d[2 * p..].fill(0.0);
        DualSimplex {
            a,
            lower: vec![0.0; p],
            upper: vec![0.0; p],
            opts,
            p,
            basis,
            position,
            at_upper: vec![false; 3 * p],
            binv,
            xb: vec![0.0; p],
            d,
            pivots: 0,
            since_refactor: 0,
        }
    }

    /// Moves the row bounds; nonbasic row variables follow their bound, so
    /// a basis that has pivoted needs its basic values recomputed.
    fn set_bounds(&mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<()> {
        self.lower = lower;
        self.upper = upper;
        if self.pivots > 0 {
            self.refactor()?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<SimplexOutcome> {
        let budget = self.pivots + self.opts.max_pivots.unwrap_or(50 * 4 * self.p);
        let mut degenerate_run = 0usize;
        let mut rho = vec![0.0; self.p];
        let mut alpha_row = vec![0.0; 3 * self.p];
        loop {
            let bland = degenerate_run >= self.opts.bland_after;
            let Some((r, dir)) = self.leaving_row(bland) else {
                if self.since_refactor > 0 {
                    self.refactor()?;
                    if self.leaving_row(bland).is_some() {
                        continue;
                    }
                }
                return Ok(SimplexOutcome::Optimal);
            };
            if self.pivots >= budget {
                return Ok(SimplexOutcome::PivotLimit);
            }
            self.pivot_row(r, &mut rho, &mut alpha_row);
            let Some(q) = self.entering(dir, &alpha_row, bland) else {
                if self.since_refactor > 0 {
                    self.refactor()?;
                    continue;
                }
                return Ok(SimplexOutcome::Infeasible);
            };
            let theta = self.d[q] / alpha_row[q];
            degenerate_run = if theta.abs() <= DUAL_TOL {
                degenerate_run + 1
            } else {
                0
            };
            self.update(r, q, dir, &alpha_row);
            self.pivots += 1;
            self.since_refactor += 1;
            if self.since_refactor >= self.opts.refactor_every {
                self.refactor()?;
            }
        }
    }

    fn bounds(&self, var: usize) -> (f64, f64) {
        match var.checked_sub(2 * self.p) {
            Some(k) => (self.lower[k], self.upper[k]),
            None => (0.0, f64::INFINITY),
        }
    }

    /// Row with the largest bound violation and the direction its basic
    /// variable must move (+1 up to the lower bound, −1 down to the upper).
    /// Under Bland's rule, the violated row with the smallest variable index.
    fn leaving_row(&self, bland: bool) -> Option<(usize, f64)> {
        let tol = self.opts.feasibility_tol;
        let mut best: Option<(usize, f64, f64)> = None;
        for (r, &x) in self.xb.iter().enumerate() {
            let (lo, hi) = self.bounds(self.basis[r]);
            let (viol, dir) = if x < lo - tol {
                (lo - x, 1.0)
            } else if x > hi + tol {
                (x - hi, -1.0)
            } else {
                continue;
            };
            let better = match best {
                None => true,
                Some((br, _, bv)) if bland => {
                    self.basis[r] < self.basis[br] || (self.basis[r] == self.basis[br] && viol > bv)
                }
                Some((_, _, bv)) => viol > bv,
            };
            if better {
                best = Some((r, dir, viol));
            }
        }
        best.map(|(r, dir, _)| (r, dir))
    }

    /// Row `r` of `B⁻¹N` for every variable (basic entries are left as junk
    /// and never read).
    fn pivot_row(&self, r: usize, rho: &mut [f64], alpha: &mut [f64]) {
        let p = self.p;
        rho.copy_from_slice(&self.binv[r * p..(r + 1) * p]);
        for j in 0..p {
            let v: f64 = self
                .a
                .column(j)
                .iter()
                .zip(rho.iter())
                .map(|(x, y)| x * y)
                .sum();
            alpha[j] = v;
            alpha[p + j] = -v;
            alpha[2 * p + j] = rho[j];
        }
    }

    fn is_candidate(&self, j: usize, dir: f64, alpha: f64) -> bool {
        if self.position[j].is_some() {
            return false;
        }
        let (lo, hi) = self.bounds(j);
        if lo == hi {
            return false;
        }
        let tol = self.opts.pivot_tol;
        if self.at_upper[j] {
            dir * alpha > tol
        } else {
            dir * alpha < -tol
        }
    }

    /// Harris two-pass ratio test; Bland's rule takes the smallest index
    /// among the minimising ratios.
    fn entering(&self, dir: f64, alpha: &[f64], bland: bool) -> Option<usize> {
        let mut bound = f64::INFINITY;
        let mut exact = f64::INFINITY;
        for (j, &aj) in alpha.iter().enumerate() {
            if self.is_candidate(j, dir, aj) {
                bound = bound.min((self.d[j].abs() + DUAL_TOL) / aj.abs());
                exact = exact.min(self.d[j].abs() / aj.abs());
            }
        }
        if !bound.is_finite() {
            return None;
        }
        let mut chosen: Option<usize> = None;
        for (j, &aj) in alpha.iter().enumerate() {
            if !self.is_candidate(j, dir, aj) {
                continue;
            }
            let ratio = self.d[j].abs() / aj.abs();
            if bland {
                if ratio <= exact + DUAL_TOL / aj.abs() {
                    return Some(j);
                }
            } else if ratio <= bound && chosen.is_none_or(|c| aj.abs() > alpha[c].abs()) {
                chosen = Some(j);
            }
        }
        chosen
    }

    fn column(&self, var: usize, out: &mut [f64]) {
        let p = self.p;
        if var >= 2 * p {
            let k = var - 2 * p;
            for (i, o) in out.iter_mut().enumerate() {
                *o = self.binv[i * p + k];
            }
            return;
        }
        let (j, sign) = if var < p { (var, 1.0) } else { (var - p, -1.0) };
        let col = self.a.column(j);
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.binv[i * p..(i + 1) * p];
            *o = sign * row.iter().zip(col.iter()).map(|(x, y)| x * y).sum::<f64>();
        }
    }

    fn update(&mut self, r: usize, q: usize, dir: f64, alpha_row: &[f64]) {
        let p = self.p;
        let mut col = vec![0.0; p];
        self.column(q, &mut col);
        let arq = col[r];

        let leaving = self.basis[r];
        let (lo, hi) = self.bounds(leaving);
        let target = if dir > 0.0 { lo } else { hi };
        let entering_value = self.nonbasic_value(q);
        let step = (self.xb[r] - target) / arq;
        for (x, c) in self.xb.iter_mut().zip(&col) {
            *x -= step * c;
        }
        self.xb[r] = entering_value + step;

        let theta = self.d[q] / alpha_row[q];
        for j in 0..3 * p {
            if self.position[j].is_none() && j != q {
                let v = self.d[j] - theta * alpha_row[j];
                // drift past zero is rounding; keep the basis dual feasible
                self.d[j] = if self.at_upper[j] {
                    v.min(0.0)
                } else {
                    v.max(0.0)
                };
            }
        }
        self.d[q] = 0.0;
        self.d[leaving] = if dir > 0.0 {
            (-theta).max(0.0)
        } else {
            (-theta).min(0.0)
        };

        let pivot_row: Vec<f64> = self.binv[r * p..(r + 1) * p]
            .iter()
            .map(|v| v / arq)
            .collect();
        for i in 0..p {
            let f = col[i];
            if i == r || f == 0.0 {
                continue;
            }
            let row = &mut self.binv[i * p..(i + 1) * p];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
        self.binv[r * p..(r + 1) * p].copy_from_slice(&pivot_row);

        self.at_upper[q] = false;
        self.at_upper[leaving] = dir < 0.0;
        self.position[leaving] = None;
        self.position[q] = Some(r);
        self.basis[r] = q;
    }

    fn nonbasic_value(&self, var: usize) -> f64 {
        let (lo, hi) = self.bounds(var);
        if self.at_upper[var] {
            hi
        } else {
            lo
        }
    }

    /// Rebuilds `B⁻¹`, the basic values and the reduced costs from scratch.
    fn refactor(&mut self) -> Result<()> {
        let p = self.p;
        let mut b = DMatrix::<f64>::zeros(p, p);
        for (r, &var) in self.basis.iter().enumerate() {
            if var >= 2 * p {
                b[(var - 2 * p, r)] = 1.0;
            } else if var >= p {
                b.set_column(r, &(-self.a.column(var - p)));
            } else {
                b.set_column(r, &self.a.column(var));
            }
        }
        let inv = b.lu().try_inverse().ok_or_else(|| Error::SingularBasis {
            pivots: self.pivots,
            detail: "basis matrix lost rank during refactorisation".into(),
        })?;
        for i in 0..p {
            for k in 0..p {
                self.binv[i * p + k] = inv[(i, k)];
            }
        }

        // structurals rest at zero, so only nonbasic row variables move x_B
        let mut rhs = DVector::<f64>::zeros(p);
        for k in 0..p {
            if self.position[2 * p + k].is_none() {
                rhs[k] = -self.nonbasic_value(2 * p + k);
            }
        }
        let xb = &inv * rhs;
        self.xb.copy_from_slice(xb.as_slice());

        let cb = DVector::from_iterator(
            p,
            self.basis
                .iter()
                .map(|&v| if v < 2 * p { 1.0 } else { 0.0 }),
        );
        let y = inv.tr_mul(&cb);
        let aty = self.a.tr_mul(&y);
        for j in 0..p {
            self.d[j] = 1.0 - aty[j];
            self.d[p + j] = 1.0 + aty[j];
            self.d[2 * p + j] = -y[j];
        }
        for j in 0..3 * p {
            if self.position[j].is_some() {
                self.d[j] = 0.0;
            } else if self.at_upper[j] {
                self.d[j] = self.d[j].min(0.0);
            } else {
                self.d[j] = self.d[j].max(0.0);
            }
        }
        self.since_refactor = 0;
        Ok(())
    }

    fn gamma(&self) -> DVector<f64> {
        let p = self.p;
        let mut gamma = DVector::zeros(p);
        for (r, &var) in self.basis.iter().enumerate() {
            if var < p {
                gamma[var] += self.xb[r];
            } else if var < 2 * p {
                gamma[var - p] -= self.xb[r];
            }
        }
        gamma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_dimensional_soft_threshold() {
        let prog = L1Program::new(
            DMatrix::from_element(1, 1, 2.0),
            DVector::from_element(1, 1.0),
            0.4,
        )
        .unwrap();
        let sol = solve_constrained_l1(&prog).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_abs_diff_eq!(sol.gamma[0], 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.objective, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn negative_target_thresholds_towards_zero() {
        let prog = L1Program::new(
            DMatrix::from_element(1, 1, 4.0),
            DVector::from_element(1, -2.0),
            0.5,
        )
        .unwrap();
        let sol = solve_constrained_l1(&prog).unwrap();
        assert_abs_diff_eq!(sol.gamma[0], -0.375, epsilon = 1e-12);
    }

    #[test]
    fn zero_is_returned_when_already_feasible() {
        let a = DMatrix::from_row_slice(2, 2, &[3.0, 1.0, -1.0, 2.0]);
        let b = DVector::from_vec(vec![0.5, -0.7]);
        let sol = solve_constrained_l1(&L1Program::new(a, b, 0.7).unwrap()).unwrap();
        assert_eq!(sol.gamma, DVector::zeros(2));
        assert_eq!(sol.objective, 0.0);
        assert_eq!(sol.pivots, 0);
        assert_eq!(sol.status, LpStatus::Optimal);
    }

    #[test]
    fn zero_lambda_recovers_linear_solve() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0]);
        let b = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let exact = a.clone().lu().solve(&b).unwrap();
        let sol = solve_constrained_l1(&L1Program::new(a, b, 0.0).unwrap()).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_abs_diff_eq!(sol.gamma, exact, epsilon = 1e-10);
    }

    #[test]
    fn singular_program_without_feasible_point_is_flagged() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, -1.0]);
        let sol = solve_constrained_l1(&L1Program::new(a, b, 0.1).unwrap()).unwrap();
        assert_eq!(sol.status, LpStatus::InfeasibleNumerically);
    }

    #[test]
    fn pivot_limit_falls_back_to_feasible_point() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0]);
        let b = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let prog = L1Program::new(a, b, 0.05).unwrap();
        let opts = LpOptions {
            max_pivots: Some(1),
            ..LpOptions::default()
        };
        let sol = solve_constrained_l1_with(&prog, &opts).unwrap();
        assert_eq!(sol.status, LpStatus::FeasibleSuboptimal);
        assert!(sol.residual_inf <= 0.05);
    }

    #[test]
    fn path_matches_independent_solves() {
        let a = DMatrix::from_row_slice(
            4,
            4,
            &[
                4.0, 1.0, 0.5, 0.0, 1.0, 3.0, 0.2, 0.4, 0.5, 0.2, 2.0, 0.1, 0.0, 0.4, 0.1, 1.5,
            ],
        );
        let b = DVector::from_vec(vec![1.0, -0.6, 0.3, 0.9]);
        let lambdas = [0.05, 0.9, 0.0, 0.3, 0.12];
        let path = solve_constrained_l1_path(&a, &b, &lambdas, &LpOptions::default()).unwrap();
        for (sol, &l) in path.iter().zip(&lambdas) {
            let sol = sol.as_ref().unwrap();
            let alone =
                solve_constrained_l1(&L1Program::new(a.clone(), b.clone(), l).unwrap()).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal);
            assert_abs_diff_eq!(sol.objective, alone.objective, epsilon = 1e-10);
            assert!(sol.residual_inf <= l + 1e-10);
        }
    }

    #[test]
    fn rejects_malformed_programs() {
        assert!(L1Program::new(DMatrix::zeros(2, 3), DVector::zeros(2), 0.1).is_err());
        assert!(L1Program::new(DMatrix::zeros(2, 2), DVector::zeros(3), 0.1).is_err());
        assert!(L1Program::new(DMatrix::zeros(2, 2), DVector::zeros(2), -0.1).is_err());
        assert!(L1Program::new(
            DMatrix::zeros(2, 2),
            DVector::from_element(2, f64::NAN),
            0.1
        )
        .is_err());
    }

    #[test]
    fn lambda_grid_examples() {
        let g = default_lambda_grid(&DVector::from_vec(vec![0.5, -1.0]), 3).unwrap();
        assert_eq!(g.len(), 3);
        assert_abs_diff_eq!(g[0], 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(g[1], 0.1, epsilon = 1e-14);
        assert_eq!(g[2], 1.0);
        let g = default_lambda_grid(&DVector::from_vec(vec![2.0]), 2).unwrap();
        assert_abs_diff_eq!(g[0], 0.02, epsilon = 1e-15);
        assert_eq!(g[1], 2.0);
        assert!(matches!(
            default_lambda_grid(&DVector::zeros(3), 5),
            Err(Error::Degenerate(_))
        ));
        assert!(default_lambda_grid(&DVector::from_vec(vec![1.0]), 1).is_err());
    }

    #[test]
    fn lambda_grid_is_ascending() {
        let g = default_lambda_grid(&DVector::from_vec(vec![3.7, 0.2]), 20).unwrap();
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
