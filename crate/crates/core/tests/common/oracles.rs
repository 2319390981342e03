//! Independent reference solutions used by the integration and acceptance
//! tests. Nothing here calls into the library's solvers.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

/// `min ‖γ‖₁ s.t. ‖Aγ − b‖_∞ ≤ λ` by brute-force vertex enumeration.
///
/// Works in `(γ, u) ∈ R^{2p}` with `min Σu` subject to the `4p` rows
/// `γ − u ≤ 0`, `−γ − u ≤ 0`, `Aγ ≤ b + λ`, `−Aγ ≤ λ − b`. The region is
/// pointed (`u ≥ |γ|` rules out lines), so the optimum sits at a vertex:
/// every choice of `2p` rows made tight is solved and the cheapest feasible
/// point kept. Returns `None` when no vertex is feasible.
pub fn l1_vertex_oracle(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    lambda: f64,
) -> Option<(f64, DVector<f64>)> {
    let p = b.len();
    let (g, h) = constraint_rows(a, b, lambda);
    let tol = 1e-9 * (1.0 + a.amax() + b.amax() + lambda);
    let mut best: Option<(f64, DVector<f64>)> = None;
    for subset in combinations(4 * p, 2 * p) {
        let mut m = DMatrix::<f64>::zeros(2 * p, 2 * p);
        let mut rhs = DVector::<f64>::zeros(2 * p);
        for (r, &row) in subset.iter().enumerate() {
            m.set_row(r, &g.row(row));
            rhs[r] = h[row];
        }
        let Some(x) = m.lu().solve(&rhs) else {
            continue;
        };
        if !x.iter().all(|v| v.is_finite()) || (&g * &x - &h).max() > tol {
            continue;
        }
        let cost = x.rows(p, p).sum();
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, x.rows(0, p).into_owned()));
        }
    }
    best
}

fn constraint_rows(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    lambda: f64,
) -> (DMatrix<f64>, DVector<f64>) {
    let p = b.len();
    let mut g = DMatrix::<f64>::zeros(4 * p, 2 * p);
    let mut h = DVector::<f64>::zeros(4 * p);
    for k in 0..p {
        g[(k, k)] = 1.0;
        g[(k, p + k)] = -1.0;
        g[(p + k, k)] = -1.0;
        g[(p + k, p + k)] = -1.0;
        for j in 0..p {
            g[(2 * p + k, j)] = a[(k, j)];
            g[(3 * p + k, j)] = -a[(k, j)];
        }
        h[2 * p + k] = b[k] + lambda;
        h[3 * p + k] = lambda - b[k];
    }
    (g, h)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// `Φ(x)` by composite Simpson integration of the standard normal density
/// from 0, accurate to well below 1e-12 for |x| ≤ 8.
pub fn normal_cdf(x: f64) -> f64 {
    let steps = 20_000;
    let h = x.abs() / steps as f64;
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut sum = phi(0.0) + phi(x.abs());
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * phi(i as f64 * h);
    }
    let half = sum * h / 3.0;
    if x >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// `δᵀΣ⁻¹δ` for the compound-symmetric `Σ = (1 − r)I + r11ᵀ` by the
/// Sherman–Morrison formula `Σ⁻¹ = (I − r/(1 − r + pr)·11ᵀ)/(1 − r)`.
pub fn compound_symmetry_signal(delta: &DVector<f64>, r: f64) -> f64 {
    let p = delta.len() as f64;
    let s = delta.sum();
    (delta.norm_squared() - r / (1.0 - r + p * r) * s * s) / (1.0 - r)
}

/// A random well-posed program of dimension `p`: half the time a
/// covariance-like SPD matrix, otherwise a diagonally weighted general one.
pub fn random_program<R: rand::Rng>(rng: &mut R, p: usize) -> (DMatrix<f64>, DVector<f64>, f64) {
    let m = DMatrix::from_fn(p, p, |_, _| rng.random_range(-1.0..1.0));
    let a = if rng.random_bool(0.5) {
        m.tr_mul(&m) / p as f64 + DMatrix::identity(p, p) * 0.2
    } else {
        m + DMatrix::identity(p, p) * 2.0
    };
    let b = DVector::from_fn(p, |_, _| rng.random_range(-1.0..1.0));
    let lambda = b.amax() * rng.random_range(0.02..1.1);
    (a, b, lambda)
}
