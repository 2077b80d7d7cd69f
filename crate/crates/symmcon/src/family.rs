//! One-dimensional eigensystems on an interval X = (0, c): an orthonormal
//! basis of eigenfunctions `phi_k` of a second order operator
//!
//! ```text
//! L = a + delta* delta,      delta = p(x) d/dx + q(x),
//! ```
//!
//! where `delta*` is the formal adjoint of `delta` in L^2(X, w dx). The
//! constant `a` equals the bottom eigenvalue, so `delta` annihilates `phi_0`
//! (for the augmented sine-type convention `lambda_0 = 0` and `phi_0 = 0`
//! formally instead).
//!
//! Concrete systems:
//!
//! * `Trigonometric`: cosines on (0, pi), weight 1/pi, `L = -d^2/dx^2`.
//! * `HermiteEven`: even Hermite functions scaled to (0, inf), Lebesgue
//!   weight, `L = -d^2/dx^2 + x^2`, `delta = d/dx + x`.
//! * `LaguerreConv(alpha)`: Laguerre functions of convolution type on
//!   (0, inf) with weight `x^{2 alpha + 1}`.
//! * `JacobiTrig(alpha, beta)`: Jacobi trigonometric polynomials on (0, pi)
//!   with weight `(sin t/2)^{2 alpha + 1} (cos t/2)^{2 beta + 1}`, here
//!   normalized to unit mass so that `alpha = beta = -1/2` reproduces the
//!   trigonometric system exactly.
//! * `OrnsteinUhlenbeckEven`: even Hermite polynomials on (0, inf) with
//!   weight `e^{-x^2}`, `L = -d^2/dx^2 + 2x d/dx`.
//! * `SineAugmented`: the sine system `sqrt(2) sin kx` under the formal
//!   `lambda_0 = 0`, `phi_0 = 0` convention.
//!
//! Evaluation goes through normalized three-term recurrences; factorial-ratio
//! normalizers never appear, so indices well past k = 85 stay finite.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::orthopoly::{self, RecKind};
use statrs::function::gamma::ln_gamma;

const PI: f64 = std::f64::consts::PI;
const SQRT_2: f64 = std::f64::consts::SQRT_2;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Which eigensystem a [`FamilySpec`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyKind {
    Trigonometric,
    HermiteEven,
    LaguerreConv { alpha: f64 },
    JacobiTrig { alpha: f64, beta: f64 },
    OrnsteinUhlenbeckEven,
    SineAugmented,
}

impl FamilyKind {
    /// Short stable name used in reports and file output.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Trigonometric => "trig",
            FamilyKind::HermiteEven => "hermite",
            FamilyKind::LaguerreConv { .. } => "laguerre",
            FamilyKind::JacobiTrig { .. } => "jacobi",
            FamilyKind::OrnsteinUhlenbeckEven => "ou",
            FamilyKind::SineAugmented => "sine",
        }
    }
}

/// First-order coefficient data of the family at a point of (0, c): jets of
/// `p` and `q` plus the logarithmic weight derivatives `w'/w` and `(w'/w)'`.
#[derive(Clone, Copy, Debug)]
pub struct Coeffs {
    pub p: Jet,
    pub q: Jet,
    pub lw1: f64,
    pub lw2: f64,
}

/// Which of the two first-order operators to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaSide {
    /// `delta = p d/dx + q`
    Delta,
    /// `delta* = -p d/dx + (q - p w'/w - p')`
    DeltaStar,
}

/// A fully validated one-dimensional eigensystem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    kind: FamilyKind,
    c: f64,
    a: f64,
    augmented: bool,
}

fn check_type_parameter(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= -1.0 + 1e-12 {
        return Err(Error::InvalidTypeParameter { name, value });
    }
    Ok(())
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Result<Self> {
        let (c, a, augmented) = match kind {
            FamilyKind::Trigonometric => (PI, 0.0, false),
            FamilyKind::HermiteEven => (f64::INFINITY, 1.0, false),
            FamilyKind::LaguerreConv { alpha } => {
                check_type_parameter("alpha", alpha)?;
                (f64::INFINITY, 2.0 * alpha + 2.0, false)
            }
            FamilyKind::JacobiTrig { alpha, beta } => {
                check_type_parameter("alpha", alpha)?;
                check_type_parameter("beta", beta)?;
                let s = (alpha + beta + 1.0) / 2.0;
                (PI, s * s, false)
            }
            FamilyKind::OrnsteinUhlenbeckEven => (f64::INFINITY, 0.0, false),
            FamilyKind::SineAugmented => (PI, 0.0, true),
        };
        Ok(FamilySpec { kind, c, a, augmented })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// Right endpoint of X = (0, c); infinite for the half-line families.
    pub fn interval_end(&self) -> f64 {
        self.c
    }

    /// Constant in the decomposition `L = a + delta* delta`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Whether the formal `lambda_0 = 0`, `phi_0 = 0` convention is in force.
    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if !(x.is_finite() && x > 0.0 && x < self.c) {
            return Err(Error::OutOfDomain { x, lo: 0.0, hi: self.c });
        }
        Ok(())
    }

    /// k-th eigenvalue; strictly increasing in k.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let kf = k as f64;
        match self.kind {
            FamilyKind::Trigonometric => kf * kf,
            FamilyKind::HermiteEven => 4.0 * kf + 1.0,
            FamilyKind::LaguerreConv { alpha } => 4.0 * kf + 2.0 * alpha + 2.0,
            FamilyKind::JacobiTrig { alpha, beta } => {
                let s = (alpha + beta + 1.0) / 2.0;
                (kf + s) * (kf + s)
            }
            FamilyKind::OrnsteinUhlenbeckEven => 4.0 * kf,
            FamilyKind::SineAugmented => kf * kf,
        }
    }

    /// `lambda_k - a` in cancellation-free closed form; zero exactly at k = 0.
    pub fn excitation(&self, k: usize) -> f64 {
        let kf = k as f64;
        match self.kind {
            FamilyKind::Trigonometric | FamilyKind::SineAugmented => kf * kf,
            FamilyKind::HermiteEven
            | FamilyKind::LaguerreConv { .. }
            | FamilyKind::OrnsteinUhlenbeckEven => 4.0 * kf,
            FamilyKind::JacobiTrig { alpha, beta } => kf * (kf + alpha + beta + 1.0),
        }
    }

    /// Coefficient data at `x` in (0, c).
    pub fn coeffs(&self, x: f64) -> Result<Coeffs> {
        self.check_domain(x)?;
        let one = Jet::constant(1.0);
        Ok(match self.kind {
            FamilyKind::Trigonometric | FamilyKind::SineAugmented => Coeffs {
                p: one,
                q: Jet::ZERO,
                lw1: 0.0,
                lw2: 0.0,
            },
            FamilyKind::HermiteEven => Coeffs {
                p: one,
                q: Jet::var(x),
                lw1: 0.0,
                lw2: 0.0,
            },
            FamilyKind::LaguerreConv { alpha } => Coeffs {
                p: one,
                q: Jet::var(x),
                lw1: (2.0 * alpha + 1.0) / x,
                lw2: -(2.0 * alpha + 1.0) / (x * x),
            },
            FamilyKind::JacobiTrig { alpha, beta } => {
                let half = x / 2.0;
                let (s, c) = (half.sin(), half.cos());
                Coeffs {
                    p: one,
                    q: Jet::ZERO,
                    lw1: (alpha + 0.5) * c / s - (beta + 0.5) * s / c,
                    lw2: -(alpha + 0.5) / (2.0 * s * s) - (beta + 0.5) / (2.0 * c * c),
                }
            }
            FamilyKind::OrnsteinUhlenbeckEven => Coeffs {
                p: one,
                q: Jet::ZERO,
                lw1: -2.0 * x,
                lw2: -2.0,
            },
        })
    }

    /// Density `w(x)` of the measure on (0, c).
    pub fn weight(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(match self.kind {
            FamilyKind::Trigonometric | FamilyKind::SineAugmented => 1.0 / PI,
            FamilyKind::HermiteEven => 1.0,
            FamilyKind::LaguerreConv { alpha } => x.powf(2.0 * alpha + 1.0),
            FamilyKind::JacobiTrig { alpha, beta } => {
                // unit-mass normalization: divide by B(alpha+1, beta+1)
                let ln_b = ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(alpha + beta + 2.0);
                let half = x / 2.0;
                ((2.0 * alpha + 1.0) * half.sin().ln() + (2.0 * beta + 1.0) * half.cos().ln()
                    - ln_b)
                    .exp()
            }
            FamilyKind::OrnsteinUhlenbeckEven => (-x * x).exp(),
        })
    }

    /// Jet of `e^{-x^2/2}` times a constant.
    fn gauss_jet(x: f64, scale: f64) -> Jet {
        let g = scale * (-x * x / 2.0).exp();
        Jet([g, -x * g, (x * x - 1.0) * g, (3.0 * x - x * x * x) * g])
    }

    /// Value and first three derivatives of `phi_k` at `x` in (0, c).
    pub fn phi_jet(&self, k: usize, x: f64) -> Result<Jet> {
        self.check_domain(x)?;
        Ok(match self.kind {
            FamilyKind::Trigonometric => {
                if k == 0 {
                    Jet::constant(1.0)
                } else {
                    let kf = k as f64;
                    let (s, c) = (kf * x).sin_cos();
                    Jet([c, -kf * s, -kf * kf * c, kf * kf * kf * s]).scale(SQRT_2)
                }
            }
            FamilyKind::SineAugmented => {
                if k == 0 {
                    Jet::ZERO
                } else {
                    let kf = k as f64;
                    let (s, c) = (kf * x).sin_cos();
                    Jet([s, kf * c, -kf * kf * s, -kf * kf * kf * c]).scale(SQRT_2)
                }
            }
            FamilyKind::HermiteEven => {
                let p0 = Self::gauss_jet(x, PI.powf(-0.25));
                orthopoly::eval_jet(&RecKind::Hermite, 2 * k, x, p0).scale(SQRT_2)
            }
            FamilyKind::OrnsteinUhlenbeckEven => {
                let p0 = Jet::constant(PI.powf(-0.25));
                orthopoly::eval_jet(&RecKind::Hermite, 2 * k, x, p0).scale(SQRT_2)
            }
            FamilyKind::LaguerreConv { alpha } => {
                let rec = RecKind::Laguerre { alpha };
                let inner = orthopoly::eval_jet(&rec, k, x * x, Jet::constant(1.0));
                let t_of_x = Jet([x * x, 2.0 * x, 2.0, 0.0]);
                // sqrt(2 / Gamma(alpha + 1)) in log space
                let norm = (0.5 * (std::f64::consts::LN_2 - ln_gamma(alpha + 1.0))).exp();
                Jet::compose(inner, t_of_x) * Self::gauss_jet(x, norm)
            }
            FamilyKind::JacobiTrig { alpha, beta } => {
                let rec = RecKind::Jacobi { alpha, beta };
                let inner = orthopoly::eval_jet(&rec, k, x.cos(), Jet::constant(1.0));
                let (s, c) = x.sin_cos();
                Jet::compose(inner, Jet([c, -s, -c, s]))
            }
        })
    }

    /// `phi_k(x)`; zero at k = 0 for augmented families.
    pub fn eval_phi(&self, k: usize, x: f64) -> Result<f64> {
        Ok(self.phi_jet(k, x)?.value())
    }

    /// Analytic `phi_k'(x)` from the recurrence derivatives.
    pub fn eval_phi_deriv(&self, k: usize, x: f64) -> Result<f64> {
        Ok(self.phi_jet(k, x)?.d(1))
    }

    /// Jet (valid to order 2) of `delta phi_k = p phi_k' + q phi_k`.
    pub fn delta_phi_jet(&self, k: usize, x: f64) -> Result<Jet> {
        let phi = self.phi_jet(k, x)?;
        let co = self.coeffs(x)?;
        Ok(co.p * phi.derivative() + co.q * phi)
    }

    /// `delta phi_k` through the family's lowering identity, where one exists
    /// in terms of a shifted system. This is an independent evaluation path
    /// from [`Self::delta_phi_jet`] and is cross-checked against it in tests.
    pub fn delta_phi_lowering(&self, k: usize, x: f64) -> Result<Option<f64>> {
        self.check_domain(x)?;
        if k == 0 {
            return Ok(Some(0.0));
        }
        let kf = k as f64;
        Ok(match self.kind {
            FamilyKind::HermiteEven => {
                let p0 = Self::gauss_jet(x, PI.powf(-0.25));
                let h = orthopoly::eval_jet(&RecKind::Hermite, 2 * k - 1, x, p0);
                Some(2.0 * (2.0 * kf).sqrt() * h.value())
            }
            FamilyKind::OrnsteinUhlenbeckEven => {
                let p0 = Jet::constant(PI.powf(-0.25));
                let h = orthopoly::eval_jet(&RecKind::Hermite, 2 * k - 1, x, p0);
                Some(2.0 * (2.0 * kf).sqrt() * h.value())
            }
            FamilyKind::LaguerreConv { alpha } => {
                // the recurrence normalization has positive leading
                // coefficients, absorbing the classical (-1)^k of Laguerre
                // polynomials; the lowering step then carries a plus sign
                let rec = RecKind::Laguerre { alpha: alpha + 1.0 };
                let inner = orthopoly::eval_jet(&rec, k - 1, x * x, Jet::constant(1.0));
                let norm = (-0.5 * ln_gamma(alpha + 2.0)).exp();
                Some(2.0 * (2.0 * kf).sqrt() * x * inner.value() * norm * (-x * x / 2.0).exp())
            }
            FamilyKind::JacobiTrig { alpha, beta } => {
                let s = alpha + beta;
                let rec = RecKind::Jacobi { alpha: alpha + 1.0, beta: beta + 1.0 };
                let inner = orthopoly::eval_jet(&rec, k - 1, x.cos(), Jet::constant(1.0));
                let factor = 0.5
                    * (kf * (kf + s + 1.0)).sqrt()
                    * ((s + 2.0) * (s + 3.0) / ((alpha + 1.0) * (beta + 1.0))).sqrt();
                Some(-x.sin() * factor * inner.value())
            }
            FamilyKind::Trigonometric => Some(-SQRT_2 * kf * (kf * x).sin()),
            FamilyKind::SineAugmented => Some(SQRT_2 * kf * (kf * x).cos()),
        })
    }

    /// Apply `delta` or `delta*` at `x` to a function given by its value `f`
    /// and derivative `df`.
    pub fn delta_apply(&self, side: DeltaSide, x: f64, f: f64, df: f64) -> Result<f64> {
        let co = self.coeffs(x)?;
        Ok(match side {
            DeltaSide::Delta => co.p.value() * df + co.q.value() * f,
            DeltaSide::DeltaStar => {
                -co.p.value() * df + (co.q.value() - co.p.value() * co.lw1 - co.p.d(1)) * f
            }
        })
    }

    /// Value of the commutator `[delta, delta*] = 2 p q' - p (p w'/w + p')'`
    /// at `x`; the operator `M = L + [delta, delta*]` acts on the
    /// differentiated system.
    pub fn commutator(&self, x: f64) -> Result<f64> {
        let co = self.coeffs(x)?;
        let p = co.p.value();
        // (p w'/w + p')' = p' w'/w + p (w'/w)' + p''
        let inner = co.p.d(1) * co.lw1 + p * co.lw2 + co.p.d(2);
        Ok(2.0 * p * co.q.d(1) - p * inner)
    }

    /// `1/sqrt(2)`, the normalization shared by the even extension.
    pub(crate) fn half_norm() -> f64 {
        FRAC_1_SQRT_2
    }
}
