//! The symmetrized one-dimensional system on `X_SYM = (-c, 0) u (0, c)`.
//!
//! The weight extends evenly, `p` evenly and `q` oddly. The extended
//! orthonormal basis interleaves the original eigenfunctions with their
//! first-order derivatives,
//!
//! ```text
//! Phi_{2k}   = phi_k / sqrt(2)                                   (even extension)
//! Phi_{2k-1} = -(lambda_k - a)^{-1/2} (delta phi_k) / sqrt(2)    (odd extension)
//! ```
//!
//! so `Phi_{2k}` is even, `Phi_{2k-1}` is odd, and the differential-difference
//! derivative
//!
//! ```text
//! D f = p f' + q (f + f~)/2 + [p w'/w + p' - q] (f - f~)/2,    f~(x) = f(-x)
//! ```
//!
//! is skew-symmetric and acts on the basis as the ladder
//! `D Phi_n = (-1)^{n+1} sqrt(lambda_<n> - a) Phi_{n - (-1)^n}`. The extended
//! Laplacian `L_sym = a - D^2` has `Phi_n` as eigenfunctions with eigenvalue
//! `lambda_<n>`.
//!
//! For augmented (sine-type) families the genuine members are odd functions:
//! they sit at the odd indices (`Phi_{2k-1} = sin kx` in the sine case) and
//! all even-indexed members vanish identically, which makes the extended
//! system incomplete by construction; `analyze` of an even function is the
//! zero vector.
//!
//! The complex form pairs neighbours,
//! `Psi_n = (Phi_{2|n|} + i sgn(n) Phi_{2|n|-1}) / sqrt(2)` for `n != 0`.
//! With the displayed formula `Psi_0` would come out with norm `1/sqrt(2)`
//! even though the system is asserted orthonormal; we set `Psi_0 = Phi_0`,
//! which has unit norm and reproduces `exp(i n x)/sqrt(2)` in the
//! trigonometric case.

use crate::error::{Error, Result};
use crate::family::{Coeffs, FamilySpec};
use crate::index::{angle_index, CoeffVector};
use crate::jet::Jet;
use num_complex::Complex64;

/// The symmetrized basis over one coordinate.
#[derive(Clone, Copy, Debug)]
pub struct SymmetrizedBasis {
    fam: FamilySpec,
}

impl SymmetrizedBasis {
    pub fn new(fam: FamilySpec) -> Self {
        SymmetrizedBasis { fam }
    }

    pub fn family(&self) -> &FamilySpec {
        &self.fam
    }

    fn check_sym_domain(&self, x: f64) -> Result<()> {
        if x == 0.0 {
            return Err(Error::OriginExcluded);
        }
        if !(x.is_finite() && x.abs() < self.fam.interval_end()) {
            return Err(Error::OutOfDomain {
                x,
                lo: -self.fam.interval_end(),
                hi: self.fam.interval_end(),
            });
        }
        Ok(())
    }

    /// Eigenvalue `lambda_<n>` of the extended Laplacian on `Phi_n`.
    pub fn lambda_ext(&self, n: usize) -> f64 {
        self.fam.eigenvalue(angle_index(n))
    }

    /// `lambda_<n> - a`, the squared ladder amplitude at extended index `n`.
    pub fn excitation_ext(&self, n: usize) -> f64 {
        self.fam.excitation(angle_index(n))
    }

    /// Jet (valid to order 2) of `Phi_n` at `x` in `X_SYM`.
    pub fn phi_ext_jet(&self, n: usize, x: f64) -> Result<Jet> {
        self.check_sym_domain(x)?;
        let y = x.abs();
        let half = FamilySpec::half_norm();
        let jet = if self.fam.is_augmented() {
            if n % 2 == 0 {
                Jet::ZERO
            } else {
                // genuine member, odd extension
                let k = (n + 1) / 2;
                let j = self.fam.phi_jet(k, y)?.scale(half);
                if x > 0.0 {
                    j
                } else {
                    -j.reflect()
                }
            }
        } else if n % 2 == 0 {
            let j = self.fam.phi_jet(n / 2, y)?.scale(half);
            if x > 0.0 {
                j
            } else {
                j.reflect()
            }
        } else {
            let k = (n + 1) / 2;
            let coef = -half / self.fam.excitation(k).sqrt();
            let j = self.fam.delta_phi_jet(k, y)?.scale(coef);
            if x > 0.0 {
                j
            } else {
                -j.reflect()
            }
        };
        Ok(jet)
    }

    /// `Phi_n(x)`.
    pub fn eval_phi_ext(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.phi_ext_jet(n, x)?.value())
    }

    /// `Psi_n(x)` for a signed index.
    pub fn eval_psi(&self, n: i64, x: f64) -> Result<Complex64> {
        if n == 0 {
            return Ok(Complex64::new(self.eval_phi_ext(0, x)?, 0.0));
        }
        let m = n.unsigned_abs() as usize;
        let even = self.eval_phi_ext(2 * m, x)?;
        let odd = self.eval_phi_ext(2 * m - 1, x)?;
        let s = if n > 0 { 1.0 } else { -1.0 };
        Ok(Complex64::new(even, s * odd) * FamilySpec::half_norm())
    }

    /// Extended coefficients at `x` in `X_SYM`, with the parity rules
    /// (`p`, `w` even; `q` odd) applied.
    pub fn ext_coeffs(&self, x: f64) -> Result<ExtCoeffs> {
        self.check_sym_domain(x)?;
        let co = self.fam.coeffs(x.abs())?;
        Ok(ExtCoeffs::from_half_line(&co, x < 0.0))
    }

    /// The differential-difference derivative `D f` at `x`; `f` supplies a
    /// jet at any requested point of `X_SYM` (it is queried at `x` and `-x`).
    pub fn apply_d_pointwise<F>(&self, f: F, x: f64) -> Result<f64>
    where
        F: Fn(f64) -> Jet,
    {
        let co = self.ext_coeffs(x)?;
        let fx = f(x);
        let fr = f(-x).value();
        let even_part = (fx.value() + fr) / 2.0;
        let odd_part = (fx.value() - fr) / 2.0;
        Ok(co.p * fx.d(1) + co.q * even_part + (co.p * co.lw1 + co.dp - co.q) * odd_part)
    }

    /// The extended Laplacian `(a - D^2) f` at `x`, in explicit
    /// differential-difference form; `f` must supply a jet valid to order 2.
    pub fn apply_l_pointwise<F>(&self, f: F, x: f64) -> Result<f64>
    where
        F: Fn(f64) -> Jet,
    {
        let co = self.ext_coeffs(x)?;
        let fx = f(x);
        let fr = f(-x).value();
        let even_part = (fx.value() + fr) / 2.0;
        let odd_part = (fx.value() - fr) / 2.0;
        let a = self.fam.a();
        // bracket B = p w'/w + p' - q and its derivative
        let db = co.dp * co.lw1 + co.p * co.lw2 + co.ddp - co.dq;
        let second = co.p * co.p * fx.d(2)
            + (2.0 * co.p * co.dp + co.p * co.p * co.lw1) * fx.d(1)
            + (co.q * (co.p * co.lw1 + co.dp) - co.q * co.q) * fx.value()
            + co.p * co.dq * even_part
            + co.p * db * odd_part;
        Ok(a * fx.value() - second)
    }

    /// Ladder action of `D` on the basis: `D Phi_n = coeff * Phi_target`,
    /// or `None` when the image vanishes (`n = 0` with `a = lambda_0`).
    pub fn ladder(&self, n: usize) -> Option<(usize, f64)> {
        let amp = self.excitation_ext(n).sqrt();
        if n % 2 == 0 {
            if n == 0 {
                // D Phi_0 = -sqrt(lambda_0 - a) Phi_{-1} = 0
                return None;
            }
            Some((n - 1, -amp))
        } else {
            Some((n + 1, amp))
        }
    }

    /// Spectral application of `D` to a one-dimensional coefficient vector.
    /// The output box grows by one index of headroom; the loss flag is set if
    /// the new top coefficient exceeds 1e-12 (a later restriction back to the
    /// input box would then lose mass).
    pub fn apply_d_spectral_1d(&self, coeffs: &CoeffVector) -> Result<CoeffVector> {
        if coeffs.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: coeffs.dim() });
        }
        let n_max = coeffs.n_max();
        let mut out = CoeffVector::zeros(1, n_max + 1);
        out.set_truncation_loss(coeffs.truncation_loss());
        for n in 0..=n_max {
            let c = coeffs.get(&[n]);
            if c == 0.0 {
                continue;
            }
            if let Some((target, amp)) = self.ladder(n) {
                let cur = out.get(&[target]);
                out.set(&[target], cur + amp * c);
            }
        }
        if out.get(&[n_max + 1]).abs() > 1e-12 {
            out.set_truncation_loss(true);
        }
        Ok(out)
    }
}

/// Coefficient values of the extended operators at a point of `X_SYM`.
#[derive(Clone, Copy, Debug)]
pub struct ExtCoeffs {
    pub p: f64,
    pub dp: f64,
    pub ddp: f64,
    pub q: f64,
    pub dq: f64,
    pub lw1: f64,
    pub lw2: f64,
}

impl ExtCoeffs {
    fn from_half_line(co: &Coeffs, reflected: bool) -> Self {
        let mut e = ExtCoeffs {
            p: co.p.value(),
            dp: co.p.d(1),
            ddp: co.p.d(2),
            q: co.q.value(),
            dq: co.q.d(1),
            lw1: co.lw1,
            lw2: co.lw2,
        };
        if reflected {
            // p, w even; q odd: odd functions flip, their derivatives do not,
            // and vice versa.
            e.dp = -e.dp;
            e.q = -e.q;
            e.lw1 = -e.lw1;
        }
        e
    }
}
