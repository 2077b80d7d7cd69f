//! Truncated Taylor data (value and the first three derivatives) used to
//! propagate analytic derivatives through recurrences and coefficient algebra.
//!
//! All eigenfunction evaluation in this crate returns a [`Jet`] so that first
//! and second derivatives are exact recurrence combinations rather than finite
//! differences.

use std::ops::{Add, Mul, Neg, Sub};

/// Value and derivatives `[f, f', f'', f''']` of a scalar function at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet(pub [f64; 4]);

impl Jet {
    pub const ZERO: Jet = Jet([0.0; 4]);

    pub const fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0])
    }

    /// The identity function at `x`.
    pub const fn var(x: f64) -> Self {
        Jet([x, 1.0, 0.0, 0.0])
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `m`-th derivative, `m <= 3`.
    pub fn d(&self, m: usize) -> f64 {
        self.0[m]
    }

    /// Jet of `f'`; only valid to order 2 (the top slot is zero-filled).
    pub fn derivative(&self) -> Jet {
        Jet([self.0[1], self.0[2], self.0[3], 0.0])
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet([s * self.0[0], s * self.0[1], s * self.0[2], s * self.0[3]])
    }

    /// Jet of `x -> f(-x)` evaluated from the jet of `f` at `-x`:
    /// derivatives pick up alternating signs.
    pub fn reflect(&self) -> Jet {
        Jet([self.0[0], -self.0[1], self.0[2], -self.0[3]])
    }

    /// Faa di Bruno to order 3: the jet of `f(u(x))` from the jet of `f` at
    /// `u(x)` (`outer`, derivatives with respect to `u`) and the jet of `u`
    /// at `x` (`inner`).
    pub fn compose(outer: Jet, inner: Jet) -> Jet {
        let [f0, f1, f2, f3] = outer.0;
        let [_, u1, u2, u3] = inner.0;
        Jet([
            f0,
            f1 * u1,
            f2 * u1 * u1 + f1 * u2,
            f3 * u1 * u1 * u1 + 3.0 * f2 * u1 * u2 + f1 * u3,
        ])
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Leibniz product to order 3.
impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Jet([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3,
        ])
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sin_jet(x: f64) -> Jet {
        Jet([x.sin(), x.cos(), -x.sin(), -x.cos()])
    }

    #[test]
    fn product_rule_matches_closed_form() {
        // (x sin x)'' = 2 cos x - x sin x, (x sin x)''' = -3 sin x - x cos x
        let x = 0.7;
        let j = Jet::var(x) * sin_jet(x);
        assert_abs_diff_eq!(j.d(2), 2.0 * x.cos() - x * x.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(j.d(3), -3.0 * x.sin() - x * x.cos(), epsilon = 1e-15);
    }

    #[test]
    fn compose_square_matches_closed_form() {
        // g(t) = sin t, t = x^2: d^3/dx^3 sin(x^2) = -12 x sin(x^2) ... check numerically
        let x = 0.9;
        let t = x * x;
        let inner = Jet([t, 2.0 * x, 2.0, 0.0]);
        let j = Jet::compose(sin_jet(t), inner);
        let d3 = 12.0 * x * (-t.sin()) * x * x + /* from formula below */ 0.0;
        // direct: f(x) = sin(x^2); f' = 2x cos t; f'' = 2 cos t - 4x^2 sin t;
        // f''' = -4x sin t - 8x sin t - 8x^3 cos t = -12x sin t - 8x^3 cos t
        let _ = d3;
        assert_abs_diff_eq!(j.d(1), 2.0 * x * t.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(j.d(2), 2.0 * t.cos() - 4.0 * x * x * t.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            j.d(3),
            -12.0 * x * t.sin() - 8.0 * x * x * x * t.cos(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn reflect_gives_even_odd_extensions() {
        // even extension of sin at x<0: value sin|x|, derivative -cos|x|
        let y = 0.4;
        let r = sin_jet(y).reflect();
        assert_abs_diff_eq!(r.value(), y.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.d(1), -y.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.d(2), -y.sin(), epsilon = 1e-15);
    }
}
