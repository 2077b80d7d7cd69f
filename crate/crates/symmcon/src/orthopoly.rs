//! Normalized three-term recurrences for the classical weights and the
//! Golub–Welsch construction of Gauss rules from the same coefficients.
//!
//! Everything here works with the orthonormal form of the recurrence,
//!
//! ```text
//! b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),
//! ```
//!
//! whose `(a_k, b_k)` are exactly the entries of the Jacobi matrix used for
//! quadrature. Evaluation propagates full [`Jet`]s, so derivatives come from
//! differentiating the recurrence, never from finite differences, and stay
//! stable far past the factorial-overflow range of closed-form normalizers.

use crate::jet::Jet;
use nalgebra::DMatrix;

/// Recurrence coefficients of an orthonormal polynomial system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum RecKind {
    /// Weight `(1-x)^alpha (1+x)^beta` on (-1, 1), normalized to unit mass.
    Jacobi { alpha: f64, beta: f64 },
    /// Weight `t^alpha e^{-t}` on (0, inf); mass Gamma(alpha+1).
    Laguerre { alpha: f64 },
    /// Weight `e^{-x^2}` on R; mass sqrt(pi).
    Hermite,
}

impl RecKind {
    /// Diagonal entry `a_k` of the Jacobi matrix.
    pub fn diag(&self, k: usize) -> f64 {
        match *self {
            RecKind::Jacobi { alpha, beta } => {
                if k == 0 {
                    (beta - alpha) / (alpha + beta + 2.0)
                } else {
                    let s = 2.0 * k as f64 + alpha + beta;
                    (beta * beta - alpha * alpha) / (s * (s + 2.0))
                }
            }
            RecKind::Laguerre { alpha } => 2.0 * k as f64 + alpha + 1.0,
            RecKind::Hermite => 0.0,
        }
    }

    /// Off-diagonal entry `b_k`, `k >= 1`; `b_0` multiplies the vanishing
    /// `p_{-1}` term and is returned as 0.
    pub fn offdiag(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        match *self {
            RecKind::Jacobi { alpha, beta } => {
                let kf = k as f64;
                if k == 1 {
                    // the (k+alpha+beta)/(2k+alpha+beta-1) factor cancels at k=1,
                    // which keeps alpha+beta = -1 (Chebyshev) finite
                    let s = alpha + beta + 2.0;
                    (4.0 * (alpha + 1.0) * (beta + 1.0) / (s * s * (s + 1.0))).sqrt()
                } else {
                    let s = 2.0 * kf + alpha + beta;
                    (4.0 * kf * (kf + alpha) * (kf + beta) * (kf + alpha + beta)
                        / (s * s * (s + 1.0) * (s - 1.0)))
                        .sqrt()
                }
            }
            RecKind::Laguerre { alpha } => {
                let kf = k as f64;
                (kf * (kf + alpha)).sqrt()
            }
            RecKind::Hermite => (k as f64 / 2.0).sqrt(),
        }
    }
}

/// Jet of the `k`-th orthonormal recurrence member at `x`, seeded with the
/// jet `p0` of the zeroth member (a constant for polynomial systems, the
/// ground-state function for Hermite functions).
pub(crate) fn eval_jet(rec: &RecKind, k: usize, x: f64, p0: Jet) -> Jet {
    let xj = Jet::var(x);
    let mut prev = Jet::ZERO;
    let mut cur = p0;
    for j in 0..k {
        let a = rec.diag(j);
        let b = rec.offdiag(j);
        let bnext = rec.offdiag(j + 1);
        let next = ((xj - Jet::constant(a)) * cur - prev.scale(b)).scale(1.0 / bnext);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jets of members `0..=k_max` in a single upward pass.
pub(crate) fn eval_all_jets(rec: &RecKind, k_max: usize, x: f64, p0: Jet) -> Vec<Jet> {
    let xj = Jet::var(x);
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(p0);
    let mut prev = Jet::ZERO;
    let mut cur = p0;
    for j in 0..k_max {
        let a = rec.diag(j);
        let b = rec.offdiag(j);
        let bnext = rec.offdiag(j + 1);
        let next = ((xj - Jet::constant(a)) * cur - prev.scale(b)).scale(1.0 / bnext);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Gauss nodes and weights for the measure behind `rec`: eigenvalues of the
/// m-by-m Jacobi matrix and `mass * v_0^2` from the first eigenvector
/// components. Nodes are returned in ascending order.
pub(crate) fn golub_welsch(rec: &RecKind, m: usize, mass: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "quadrature needs at least one node");
    let mut t = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        t[(j, j)] = rec.diag(j);
        if j + 1 < m {
            let b = rec.offdiag(j + 1);
            t[(j, j + 1)] = b;
            t[(j + 1, j)] = b;
        }
    }
    let eig = t.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    pairs.into_iter().unzip()
}

/// Like [`golub_welsch`] but returns `ln(weight)` instead of the weight, for
/// rules whose raw weights underflow before an exponential compensation
/// factor is applied.
pub(crate) fn golub_welsch_ln(rec: &RecKind, m: usize, ln_mass: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "quadrature needs at least one node");
    let mut t = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        t[(j, j)] = rec.diag(j);
        if j + 1 < m {
            let b = rec.offdiag(j + 1);
            t[(j, j + 1)] = b;
            t[(j + 1, j)] = b;
        }
    }
    let eig = t.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)].abs();
            (eig.eigenvalues[i], ln_mass + 2.0 * v0.ln())
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    pairs.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_rule_matches_reference() {
        // Jacobi(0,0) with unit mass is the Gauss-Legendre rule scaled by 1/2.
        let (x, w) = golub_welsch(&RecKind::Jacobi { alpha: 0.0, beta: 0.0 }, 5, 1.0);
        let x_ref = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664,
        ];
        let w_ref = [
            0.236_926_885_056_189_08,
            0.478_628_670_499_366_47,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_47,
            0.236_926_885_056_189_08,
        ];
        for i in 0..5 {
            assert_abs_diff_eq!(x[i], x_ref[i], epsilon = 1e-13);
            assert_abs_diff_eq!(w[i], w_ref[i] / 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn chebyshev_rule_is_closed_form() {
        // Jacobi(-1/2,-1/2), unit mass: nodes cos((2i-1)pi/2m), weights 1/m.
        let m = 9;
        let (x, w) = golub_welsch(
            &RecKind::Jacobi { alpha: -0.5, beta: -0.5 },
            m,
            1.0,
        );
        for i in 0..m {
            let theta = (2.0 * (m - i) as f64 - 1.0) * std::f64::consts::PI / (2.0 * m as f64);
            assert_abs_diff_eq!(x[i], theta.cos(), epsilon = 1e-13);
            assert_abs_diff_eq!(w[i], 1.0 / m as f64, epsilon = 1e-13);
        }
    }

    #[test]
    fn chebyshev_polynomials_from_recurrence() {
        // orthonormal w.r.t. the unit-mass Chebyshev measure: p_k(cos t) = sqrt(2) cos(k t)
        let rec = RecKind::Jacobi { alpha: -0.5, beta: -0.5 };
        let t: f64 = 0.3;
        for k in 1..=16usize {
            let j = eval_jet(&rec, k, t.cos(), Jet::constant(1.0));
            let expect = std::f64::consts::SQRT_2 * (k as f64 * t).cos();
            assert_abs_diff_eq!(j.value(), expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermite_function_recurrence_is_normalized() {
        // check h_n against the explicit n = 2 form
        let x = 1.3f64;
        let h0 = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
        let p0 = Jet([h0, -x * h0, (x * x - 1.0) * h0, (3.0 * x - x * x * x) * h0]);
        let h2 = eval_jet(&RecKind::Hermite, 2, x, p0);
        // h_2 = (2 sqrt(2))^{-1/2} pi^{-1/4} (4x^2-2) e^{-x^2/2} / sqrt(2) ... use
        // h_2 = (4x^2 - 2) e^{-x^2/2} / (pi^{1/4} sqrt(8))
        let expect = (4.0 * x * x - 2.0) * (-x * x / 2.0).exp()
            / (std::f64::consts::PI.powf(0.25) * 8.0f64.sqrt());
        assert_abs_diff_eq!(h2.value(), expect, epsilon = 1e-14);
    }

    #[test]
    fn batch_matches_single() {
        let rec = RecKind::Laguerre { alpha: 0.5 };
        let all = eval_all_jets(&rec, 12, 2.2, Jet::constant(1.0));
        for (k, jet) in all.iter().enumerate() {
            assert_eq!(*jet, eval_jet(&rec, k, 2.2, Jet::constant(1.0)));
        }
    }
}
