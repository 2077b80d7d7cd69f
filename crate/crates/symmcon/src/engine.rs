//! Coefficient-space spectral operators on the truncated symmetrized
//! expansion: the projection past the null space, fractional powers of the
//! extended Laplacian, per-axis derivative ladders, Riesz transforms of any
//! order, the Poisson semigroup and its conjugates, and the projected
//! higher-order derivatives of the initial (all-even) setting.
//!
//! Everything acts on a fixed truncation box `{0..=N}^d`. A single ladder
//! application keeps the box and flags truncation loss if significant mass
//! would cross the top. Iterated operators instead pad the box internally by
//! the total ladder count and restrict afterwards, so compositions with zero
//! net index shift (for instance `sum_j R_j^2`) are exact at the boundary.

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::index::{angle_index, lambda_multi, CoeffVector, LevelTable};
use crate::symmetrize::SymmetrizedBasis;
use num_complex::Complex64;

const LOSS_TOL: f64 = 1e-12;

/// Spectral operator engine over a fixed basis, dimension and truncation.
#[derive(Clone, Debug)]
pub struct OperatorEngine {
    basis: SymmetrizedBasis,
    dim: usize,
    n_max: usize,
    levels: LevelTable,
}

impl OperatorEngine {
    pub fn new(basis: SymmetrizedBasis, dim: usize, n_max: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        let levels = LevelTable::build(basis.family(), dim, n_max);
        OperatorEngine { basis, dim, n_max, levels }
    }

    pub fn basis(&self) -> &SymmetrizedBasis {
        &self.basis
    }

    pub fn family(&self) -> &FamilySpec {
        self.basis.family()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn levels(&self) -> &LevelTable {
        &self.levels
    }

    /// The constant `A = d * a` of the product decomposition; equals the
    /// bottom of the spectrum when `a` is the first eigenvalue.
    pub fn big_a(&self) -> f64 {
        self.dim as f64 * self.family().a()
    }

    /// Eigenvalue of the extended Laplacian at multi-index `n`.
    pub fn lambda(&self, n: &[usize]) -> f64 {
        lambda_multi(self.family(), n)
    }

    pub fn zeros(&self) -> CoeffVector {
        CoeffVector::zeros(self.dim, self.n_max)
    }

    pub fn basis_vector(&self, n: &[usize]) -> CoeffVector {
        CoeffVector::basis_vector(self.dim, self.n_max, n)
    }

    fn check_box(&self, c: &CoeffVector) -> Result<()> {
        if c.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: c.dim() });
        }
        if c.n_max() != self.n_max {
            return Err(Error::BoxMismatch { left: c.n_max(), right: self.n_max });
        }
        Ok(())
    }

    fn check_axis(&self, j: usize) -> Result<()> {
        if j >= self.dim {
            return Err(Error::AxisOutOfRange { axis: j, dim: self.dim });
        }
        Ok(())
    }

    /// Multiply every coefficient by `m(lambda_<n>)`.
    fn multiplier<F>(&self, c: &CoeffVector, f: F) -> CoeffVector
    where
        F: Fn(f64) -> f64,
    {
        let mut out = c.clone();
        let fam = *self.family();
        for n in c.indices() {
            let lam = lambda_multi(&fam, &n);
            let v = out.get(&n);
            out.set(&n, v * f(lam));
        }
        out
    }

    /// Orthogonal projection onto the complement of the null space: zeroes
    /// the coefficients with `lambda_<n> = 0` (only the all-zero index can
    /// qualify).
    pub fn pi0(&self, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        Ok(self.pi0_any(c))
    }

    fn pi0_any(&self, c: &CoeffVector) -> CoeffVector {
        self.multiplier(c, |lam| if lam == 0.0 { 0.0 } else { 1.0 })
    }

    /// Spectral power `L^s` on coefficients. Nonpositive powers are guarded
    /// by the null-space projection, so `s = 0` is exactly the projection and
    /// `s < 0` acts only on its range.
    pub fn frac_power(&self, s: f64, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        Ok(self.frac_power_any(s, c))
    }

    fn frac_power_any(&self, s: f64, c: &CoeffVector) -> CoeffVector {
        let guarded = if s <= 0.0 { self.pi0_any(c) } else { c.clone() };
        self.multiplier(&guarded, |lam| if lam == 0.0 { 0.0 } else { lam.powf(s) })
    }

    /// One application of the axis-`j` derivative ladder on the fixed box:
    /// the coefficient at `n` moves to `n - (-1)^{n_j} e_j` with amplitude
    /// `(-1)^{n_j + 1} sqrt(lambda_<n_j> - a)`. Mass pushed above the box top
    /// is dropped and flagged when it exceeds 1e-12.
    pub fn apply_dj(&self, j: usize, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        self.check_axis(j)?;
        Ok(self.apply_dj_any(j, c))
    }

    fn apply_dj_any(&self, j: usize, c: &CoeffVector) -> CoeffVector {
        let fam = *self.family();
        let mut out = CoeffVector::zeros(c.dim(), c.n_max());
        out.set_truncation_loss(c.truncation_loss());
        for n in c.indices() {
            let v = c.get(&n);
            if v == 0.0 {
                continue;
            }
            let nj = n[j];
            let amp = fam.excitation(angle_index(nj)).sqrt();
            if nj % 2 == 0 {
                if nj == 0 {
                    continue; // amplitude is exactly zero when a = lambda_0
                }
                let mut m = n.clone();
                m[j] = nj - 1;
                let cur = out.get(&m);
                out.set(&m, cur - amp * v);
            } else if nj + 1 <= c.n_max() {
                let mut m = n.clone();
                m[j] = nj + 1;
                let cur = out.get(&m);
                out.set(&m, cur + amp * v);
            } else if (amp * v).abs() > LOSS_TOL {
                out.set_truncation_loss(true);
            }
        }
        out
    }

    /// `D^l = D_1^{l_1} ... D_d^{l_d}` computed in a box padded by `|l|` and
    /// restricted back, so boundary indices ladder exactly.
    pub fn apply_d_multi(&self, l: &[usize], c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        if l.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: l.len() });
        }
        let total: usize = l.iter().sum();
        let mut g = c.pad_to(self.n_max + total);
        for (j, &lj) in l.iter().enumerate() {
            for _ in 0..lj {
                g = self.apply_dj_any(j, &g);
            }
        }
        Ok(g.restrict_to(self.n_max, LOSS_TOL))
    }

    /// Riesz transform of order `|l|`: projection, then `L^{-|l|/2}`, then
    /// the iterated axis ladders.
    pub fn riesz(&self, l: &[usize], c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        if l.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: l.len() });
        }
        let total: usize = l.iter().sum();
        if total == 0 {
            return Err(Error::ZeroRieszOrder);
        }
        let padded = c.pad_to(self.n_max + total);
        let mut g = self.frac_power_any(-(total as f64) / 2.0, &padded);
        for (j, &lj) in l.iter().enumerate() {
            for _ in 0..lj {
                g = self.apply_dj_any(j, &g);
            }
        }
        Ok(g.restrict_to(self.n_max, LOSS_TOL))
    }

    /// All multi-indices of total order `order` in `dim` axes.
    pub fn orders(dim: usize, order: usize) -> Vec<Vec<usize>> {
        fn rec(dim: usize, order: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if dim == 1 {
                prefix.push(order);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for head in 0..=order {
                prefix.push(head);
                rec(dim - 1, order - head, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, order, &mut Vec::new(), &mut out);
        out
    }

    /// `|| (sum_{|l| = order} |R^l f|^2)^{1/2} ||`, which by orthonormality
    /// equals the root of the summed squared coefficient norms.
    pub fn riesz_norm_map(&self, order: usize, c: &CoeffVector) -> Result<f64> {
        self.check_box(c)?;
        if order == 0 {
            return Err(Error::ZeroRieszOrder);
        }
        let mut total = 0.0;
        for l in Self::orders(self.dim, order) {
            let g = self.riesz(&l, c)?;
            let norm = g.norm();
            total += norm * norm;
        }
        Ok(total.sqrt())
    }

    /// Poisson semigroup `exp(-t sqrt(L))`.
    pub fn poisson(&self, t: f64, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.multiplier(c, |lam| (-t * lam.sqrt()).exp()))
    }

    /// Analytic time derivative of the Poisson semigroup,
    /// `-sqrt(lambda) exp(-t sqrt(lambda))` on each coefficient.
    pub fn poisson_dt(&self, t: f64, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.multiplier(c, |lam| -lam.sqrt() * (-t * lam.sqrt()).exp()))
    }

    /// Conjugate Poisson integral `U_t^j = P_t R_j`.
    pub fn conjugate_poisson(&self, j: usize, t: f64, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_axis(j)?;
        let mut l = vec![0usize; self.dim];
        l[j] = 1;
        let r = self.riesz(&l, c)?;
        self.poisson(t, &r)
    }

    /// `sum_j R_j^2`, which on the projected range equals `-Id + A L^{-1}`.
    pub fn riesz_square_sum(&self, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        let mut acc = self.zeros();
        for j in 0..self.dim {
            let mut l = vec![0usize; self.dim];
            l[j] = 2;
            acc = acc.add(&self.riesz(&l, c)?)?;
        }
        Ok(acc)
    }

    /// Projected higher-order derivative of the initial setting: the input
    /// must be supported on the all-even sub-basis (an even extension of a
    /// function on the original cube); the alternating `delta`/`delta*`
    /// chains are realized by laddering the even extension.
    pub fn projected_derivative(&self, orders: &[usize], c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        if orders.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: orders.len() });
        }
        let scale = c.norm().max(1.0);
        for n in c.indices() {
            let v = c.get(&n);
            if v.abs() > 1e-9 * scale && n.iter().any(|&ni| ni % 2 == 1) {
                return Err(Error::NotEvenSupported { index: n, mass: v });
            }
        }
        let mut even = c.clone();
        for n in c.indices() {
            if n.iter().any(|&ni| ni % 2 == 1) {
                even.set(&n, 0.0);
            }
        }
        self.apply_d_multi(orders, &even)
    }

    /// Spectral projection onto the `m`-th distinct eigenvalue.
    pub fn project_level(&self, m: usize, c: &CoeffVector) -> Result<CoeffVector> {
        self.check_box(c)?;
        self.levels.project(m, c)
    }
}

/// Complex-picture coefficients over signed indices `-n_max ..= n_max`
/// (one-dimensional setting).
#[derive(Clone, Debug)]
pub struct PsiCoeffs {
    n_max: usize,
    data: Vec<Complex64>,
}

impl PsiCoeffs {
    pub fn zeros(n_max: usize) -> Self {
        PsiCoeffs { n_max, data: vec![Complex64::new(0.0, 0.0); 2 * n_max + 1] }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn slot(&self, n: i64) -> usize {
        (n + self.n_max as i64) as usize
    }

    pub fn get(&self, n: i64) -> Complex64 {
        self.data[self.slot(n)]
    }

    pub fn set(&mut self, n: i64, v: Complex64) {
        let s = self.slot(n);
        self.data[s] = v;
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let k = self.n_max as i64;
        -k..=k
    }
}

/// Change of basis from the real picture (even box top `2K`) to the complex
/// one: `psi_0 = c_0`, `psi_{+-k} = (c_{2k} -+ i c_{2k-1}) / sqrt(2)`.
pub fn phi_to_psi(c: &CoeffVector) -> Result<PsiCoeffs> {
    if c.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: c.dim() });
    }
    if c.n_max() % 2 != 0 {
        return Err(Error::InvalidConfig(
            "complex picture needs an even box top (pairs of members)".into(),
        ));
    }
    let k_max = c.n_max() / 2;
    let mut out = PsiCoeffs::zeros(k_max);
    out.set(0, Complex64::new(c.get(&[0]), 0.0));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for k in 1..=k_max {
        let even = c.get(&[2 * k]);
        let odd = c.get(&[2 * k - 1]);
        out.set(k as i64, Complex64::new(even * s, -odd * s));
        out.set(-(k as i64), Complex64::new(even * s, odd * s));
    }
    Ok(out)
}

/// Inverse change of basis. Returns the real coefficients together with the
/// largest imaginary residue dropped (zero for Hermitian-symmetric input).
pub fn psi_to_phi(p: &PsiCoeffs) -> (CoeffVector, f64) {
    let k_max = p.n_max();
    let mut out = CoeffVector::zeros(1, 2 * k_max);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut residue: f64 = p.get(0).im.abs();
    out.set(&[0], p.get(0).re);
    for k in 1..=k_max {
        let plus = p.get(k as i64);
        let minus = p.get(-(k as i64));
        let even = (plus + minus) * s;
        let odd = Complex64::i() * (plus - minus) * s;
        out.set(&[2 * k], even.re);
        out.set(&[2 * k - 1], odd.re);
        residue = residue.max(even.im.abs()).max(odd.im.abs());
    }
    (out, residue)
}

impl OperatorEngine {
    fn check_psi(&self, p: &PsiCoeffs) -> Result<()> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.dim });
        }
        if 2 * p.n_max() != self.n_max {
            return Err(Error::BoxMismatch { left: 2 * p.n_max(), right: self.n_max });
        }
        Ok(())
    }

    /// `D` in the complex picture: the diagonal multiplier
    /// `i sgn(n) sqrt(lambda_|n| - a)`.
    pub fn apply_d_psi(&self, p: &PsiCoeffs) -> Result<PsiCoeffs> {
        self.check_psi(p)?;
        let fam = *self.family();
        let mut out = PsiCoeffs::zeros(p.n_max());
        for n in p.indices() {
            let k = n.unsigned_abs() as usize;
            let amp = fam.excitation(k).sqrt() * n.signum() as f64;
            out.set(n, p.get(n) * Complex64::new(0.0, amp));
        }
        Ok(out)
    }

    /// First-order Riesz transform in the complex picture:
    /// `i sgn(n) sqrt((lambda_|n| - a) / lambda_|n|)` on each coefficient.
    pub fn riesz_psi(&self, p: &PsiCoeffs) -> Result<PsiCoeffs> {
        self.check_psi(p)?;
        let fam = *self.family();
        let mut out = PsiCoeffs::zeros(p.n_max());
        for n in p.indices() {
            let k = n.unsigned_abs() as usize;
            let lam = fam.eigenvalue(k);
            if lam == 0.0 {
                continue;
            }
            let amp = (fam.excitation(k) / lam).sqrt() * n.signum() as f64;
            out.set(n, p.get(n) * Complex64::new(0.0, amp));
        }
        Ok(out)
    }

    /// Poisson semigroup in the complex picture.
    pub fn poisson_psi(&self, t: f64, p: &PsiCoeffs) -> Result<PsiCoeffs> {
        self.check_psi(p)?;
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        let fam = *self.family();
        let mut out = PsiCoeffs::zeros(p.n_max());
        for n in p.indices() {
            let k = n.unsigned_abs() as usize;
            let m = (-t * fam.eigenvalue(k).sqrt()).exp();
            out.set(n, p.get(n) * m);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyKind;
    use approx::assert_abs_diff_eq;

    fn engine(kind: FamilyKind, dim: usize, n_max: usize) -> OperatorEngine {
        let fam = FamilySpec::new(kind).unwrap();
        OperatorEngine::new(SymmetrizedBasis::new(fam), dim, n_max)
    }

    #[test]
    fn pi0_examples() {
        let e = engine(FamilyKind::Trigonometric, 1, 6);
        let v = e.basis_vector(&[0]);
        assert_eq!(e.pi0(&v).unwrap().norm(), 0.0);
        let h = engine(FamilyKind::HermiteEven, 1, 6);
        let v = h.basis_vector(&[0]);
        assert_eq!(h.pi0(&v).unwrap().max_abs_diff(&v).unwrap(), 0.0);
    }

    #[test]
    fn frac_power_examples() {
        let t = engine(FamilyKind::Trigonometric, 1, 6);
        let e2 = t.basis_vector(&[2]);
        assert_eq!(t.frac_power(1.0, &e2).unwrap().get(&[2]), 1.0);
        // s = 0 acts as the guarded identity
        let e0 = t.basis_vector(&[0]);
        assert_eq!(t.frac_power(0.0, &e0).unwrap().norm(), 0.0);
        let h = engine(FamilyKind::HermiteEven, 1, 6);
        let e1 = h.basis_vector(&[1]);
        assert_abs_diff_eq!(
            h.frac_power(-0.5, &e1).unwrap().get(&[1]),
            1.0 / 5.0f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn dj_ladder_examples() {
        let e = engine(FamilyKind::Trigonometric, 2, 5);
        let v = e.basis_vector(&[2, 0]);
        let d = e.apply_dj(0, &v).unwrap();
        assert_eq!(d.get(&[1, 0]), -1.0);
        let zero = e.apply_dj(0, &e.basis_vector(&[0, 0])).unwrap();
        assert_eq!(zero.norm(), 0.0);
        // commutation of the axis ladders
        let mut v = e.zeros();
        for (i, n) in v.indices().enumerate().collect::<Vec<_>>() {
            v.set(&n, ((i * 7 + 3) % 11) as f64 / 11.0 - 0.4);
        }
        let ab = e.apply_dj(1, &e.apply_dj(0, &v).unwrap()).unwrap();
        let ba = e.apply_dj(0, &e.apply_dj(1, &v).unwrap()).unwrap();
        assert!(ab.max_abs_diff(&ba).unwrap() < 1e-13);
    }

    #[test]
    fn dj_flags_loss_at_top() {
        let e = engine(FamilyKind::Trigonometric, 1, 3);
        let top = e.basis_vector(&[3]);
        let d = e.apply_dj(0, &top).unwrap();
        assert_eq!(d.norm(), 0.0);
        assert!(d.truncation_loss());
    }

    #[test]
    fn riesz_is_classic_conjugacy_for_trig() {
        let e = engine(FamilyKind::Trigonometric, 1, 8);
        for k in 1..=3usize {
            let cos_k = e.basis_vector(&[2 * k]);
            let r = e.riesz(&[1], &cos_k).unwrap();
            assert_abs_diff_eq!(r.get(&[2 * k - 1]), -1.0, epsilon = 1e-14);
            let sin_k = e.basis_vector(&[2 * k - 1]);
            let r = e.riesz(&[1], &sin_k).unwrap();
            assert_abs_diff_eq!(r.get(&[2 * k]), 1.0, epsilon = 1e-14);
        }
        let r0 = e.riesz(&[1], &e.basis_vector(&[0])).unwrap();
        assert_eq!(r0.norm(), 0.0);
    }

    #[test]
    fn riesz_second_order_hermite() {
        let e = engine(FamilyKind::HermiteEven, 1, 8);
        let e2 = e.basis_vector(&[2]);
        let r = e.riesz(&[2], &e2).unwrap();
        assert_abs_diff_eq!(r.get(&[2]), -0.8, epsilon = 1e-14);
        assert!(!r.truncation_loss());
    }

    #[test]
    fn riesz_rejects_zero_order() {
        let e = engine(FamilyKind::Trigonometric, 2, 4);
        assert!(matches!(
            e.riesz(&[0, 0], &e.zeros()),
            Err(Error::ZeroRieszOrder)
        ));
    }

    #[test]
    fn poisson_semigroup() {
        let e = engine(FamilyKind::Trigonometric, 1, 6);
        let e2 = e.basis_vector(&[2]);
        let p = e.poisson(1.0, &e2).unwrap();
        assert_abs_diff_eq!(p.get(&[2]), (-1.0f64).exp(), epsilon = 1e-16);
        let id = e.poisson(0.0, &e2).unwrap();
        assert_eq!(id.max_abs_diff(&e2).unwrap(), 0.0);
        assert!(e.poisson(-0.1, &e2).is_err());
        // semigroup law on a spread vector
        let mut v = e.zeros();
        for (i, n) in v.indices().enumerate().collect::<Vec<_>>() {
            v.set(&n, (i as f64 * 0.31).cos());
        }
        let a = e.poisson(0.7, &e.poisson(0.4, &v).unwrap()).unwrap();
        let b = e.poisson(1.1, &v).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-14);
    }

    #[test]
    fn conjugate_poisson_on_cos() {
        let e = engine(FamilyKind::Trigonometric, 1, 6);
        let cos = e.basis_vector(&[2]);
        let u = e.conjugate_poisson(0, 1.0, &cos).unwrap();
        assert_abs_diff_eq!(u.get(&[1]), -(-1.0f64).exp(), epsilon = 1e-15);
        // t = 0 is the Riesz transform itself
        let u0 = e.conjugate_poisson(0, 0.0, &cos).unwrap();
        let r = e.riesz(&[1], &cos).unwrap();
        assert_eq!(u0.max_abs_diff(&r).unwrap(), 0.0);
    }

    #[test]
    fn riesz_square_sum_identity() {
        for (kind, dim) in [
            (FamilyKind::Trigonometric, 1),
            (FamilyKind::Trigonometric, 2),
            (FamilyKind::HermiteEven, 1),
            (FamilyKind::HermiteEven, 2),
        ] {
            let e = engine(kind, dim, 6);
            let mut v = e.zeros();
            for (i, n) in v.indices().enumerate().collect::<Vec<_>>() {
                v.set(&n, ((i * 13 + 5) % 19) as f64 / 19.0 - 0.5);
            }
            let f = e.pi0(&v).unwrap();
            let lhs = e.riesz_square_sum(&f).unwrap();
            let rhs = e
                .frac_power(-1.0, &f)
                .unwrap()
                .scale(e.big_a())
                .sub(&f)
                .unwrap();
            assert!(
                lhs.max_abs_diff(&rhs).unwrap() < 1e-12,
                "{kind:?} d={dim}: defect {}",
                lhs.max_abs_diff(&rhs).unwrap()
            );
        }
    }

    #[test]
    fn hermite_square_sum_value() {
        let e = engine(FamilyKind::HermiteEven, 1, 6);
        let e2 = e.basis_vector(&[2]);
        let s = e.riesz_square_sum(&e2).unwrap();
        assert_abs_diff_eq!(s.get(&[2]), -0.8, epsilon = 1e-14);
    }

    #[test]
    fn projected_derivative_matches_ladder() {
        let e = engine(FamilyKind::Trigonometric, 1, 8);
        // D^1 on even input equals the plain ladder
        let even = e.basis_vector(&[4]);
        let d1 = e.projected_derivative(&[1], &even).unwrap();
        let lad = e.apply_dj(0, &even).unwrap();
        assert_eq!(d1.max_abs_diff(&lad).unwrap(), 0.0);
        // D^2 cos kx = k^2 cos kx for the trigonometric system
        let d2 = e.projected_derivative(&[2], &even).unwrap();
        assert_abs_diff_eq!(d2.get(&[4]), -4.0, epsilon = 1e-13);
        // odd-supported input is rejected
        let odd = e.basis_vector(&[3]);
        assert!(matches!(
            e.projected_derivative(&[1], &odd),
            Err(Error::NotEvenSupported { .. })
        ));
    }

    #[test]
    fn projected_derivative_hermite_value() {
        let e = engine(FamilyKind::HermiteEven, 1, 8);
        let even = e.basis_vector(&[2]);
        let d2 = e.projected_derivative(&[2], &even).unwrap();
        assert_abs_diff_eq!(d2.get(&[2]), -4.0, epsilon = 1e-13);
    }

    #[test]
    fn psi_round_trip_and_multipliers() {
        let e = engine(FamilyKind::Trigonometric, 1, 8);
        let mut c = e.zeros();
        for (i, n) in c.indices().enumerate().collect::<Vec<_>>() {
            c.set(&n, ((i * 5 + 2) % 13) as f64 / 13.0 - 0.5);
        }
        let psi = phi_to_psi(&c).unwrap();
        let (back, residue) = psi_to_phi(&psi);
        assert_eq!(residue, 0.0);
        assert!(back.max_abs_diff(&c).unwrap() < 1e-15);

        // Riesz agreement through the change of basis
        let r_phi = e.riesz(&[1], &c).unwrap();
        let (r_back, res) = psi_to_phi(&e.riesz_psi(&psi).unwrap());
        assert!(res < 1e-15);
        assert!(r_phi.max_abs_diff(&r_back).unwrap() < 1e-12);

        // Poisson agreement
        let p_phi = e.poisson(0.3, &c).unwrap();
        let (p_back, res) = psi_to_phi(&e.poisson_psi(0.3, &psi).unwrap());
        assert!(res < 1e-15);
        assert!(p_phi.max_abs_diff(&p_back).unwrap() < 1e-12);
    }

    #[test]
    fn riesz_norm_contraction() {
        let e = engine(FamilyKind::LaguerreConv { alpha: 0.5 }, 2, 5);
        let mut v = e.zeros();
        for (i, n) in v.indices().enumerate().collect::<Vec<_>>() {
            v.set(&n, ((i * 11 + 1) % 23) as f64 / 23.0 - 0.5);
        }
        for order in 1..=3usize {
            let m = e.riesz_norm_map(order, &v).unwrap();
            assert!(m <= v.norm() + 1e-12, "order {order}: {m} vs {}", v.norm());
        }
        // a null-space vector maps to zero
        let t = engine(FamilyKind::Trigonometric, 2, 5);
        let killed = t.basis_vector(&[0, 0]);
        assert!(t.riesz_norm_map(1, &killed).unwrap() < 1e-14);
    }
}
