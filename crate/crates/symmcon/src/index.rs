//! Multi-index bookkeeping for the product structure on the symmetrized
//! cube: dense coefficient vectors over a truncation box `{0..=N}^d`, the
//! index map `<n> = floor((n+1)/2)`, per-index eigenvalues, and the table of
//! distinct spectral levels with their projections.

use crate::error::{Error, Result};
use crate::family::FamilySpec;

/// `<n> = floor((n+1)/2)`: the eigenvalue index behind extended index `n`.
pub fn angle_index(n: usize) -> usize {
    (n + 1) / 2
}

/// Iterate the box `{0..=n_max}^d` in lexicographic order (first axis
/// slowest), matching the flat layout of [`CoeffVector`].
pub fn box_indices(dim: usize, n_max: usize) -> impl Iterator<Item = Vec<usize>> {
    let side = n_max + 1;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0usize; dim];
        for ax in (0..dim).rev() {
            idx[ax] = flat % side;
            flat /= side;
        }
        idx
    })
}

/// Eigenvalue `lambda_<n> = sum_i lambda_<n_i>` of the extended operator on
/// the product eigenfunction with multi-index `n`.
pub fn lambda_multi(fam: &FamilySpec, n: &[usize]) -> f64 {
    n.iter().map(|&ni| fam.eigenvalue(angle_index(ni))).sum()
}

/// Dense truncated expansion coefficients over `{0..=n_max}^d`,
/// lexicographically ordered.
#[derive(Clone, Debug)]
pub struct CoeffVector {
    dim: usize,
    n_max: usize,
    data: Vec<f64>,
    truncation_loss: bool,
}

impl CoeffVector {
    pub fn zeros(dim: usize, n_max: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        let len = (n_max + 1).pow(dim as u32);
        CoeffVector {
            dim,
            n_max,
            data: vec![0.0; len],
            truncation_loss: false,
        }
    }

    pub fn from_data(dim: usize, n_max: usize, data: Vec<f64>) -> Result<Self> {
        let expected = (n_max + 1).pow(dim as u32);
        if data.len() != expected {
            return Err(Error::GridLengthMismatch { expected, got: data.len() });
        }
        Ok(CoeffVector { dim, n_max, data, truncation_loss: false })
    }

    /// The unit vector `e_n`.
    pub fn basis_vector(dim: usize, n_max: usize, n: &[usize]) -> Self {
        let mut v = Self::zeros(dim, n_max);
        let flat = v.flat_index(n).expect("basis index inside the box");
        v.data[flat] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Set when a ladder application pushed mass above the box top.
    pub fn truncation_loss(&self) -> bool {
        self.truncation_loss
    }

    pub(crate) fn set_truncation_loss(&mut self, loss: bool) {
        self.truncation_loss = loss;
    }

    pub fn flat_index(&self, n: &[usize]) -> Result<usize> {
        if n.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: n.len() });
        }
        let side = self.n_max + 1;
        let mut flat = 0usize;
        for &ni in n {
            if ni >= side {
                return Err(Error::BoxMismatch { left: ni, right: self.n_max });
            }
            flat = flat * side + ni;
        }
        Ok(flat)
    }

    pub fn get(&self, n: &[usize]) -> f64 {
        self.data[self.flat_index(n).expect("index inside the box")]
    }

    pub fn set(&mut self, n: &[usize], value: f64) {
        let flat = self.flat_index(n).expect("index inside the box");
        self.data[flat] = value;
    }

    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> {
        box_indices(self.dim, self.n_max)
    }

    /// l^2 norm, which equals the L^2(mu) norm of the expansion.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.data {
            *c *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_box(other)?;
        let mut out = self.clone();
        for (c, o) in out.data.iter_mut().zip(&other.data) {
            *c += o;
        }
        out.truncation_loss |= other.truncation_loss;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_box(other)?;
        let mut out = self.clone();
        for (c, o) in out.data.iter_mut().zip(&other.data) {
            *c -= o;
        }
        out.truncation_loss |= other.truncation_loss;
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_box(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn check_same_box(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.n_max != other.n_max {
            return Err(Error::BoxMismatch { left: self.n_max, right: other.n_max });
        }
        Ok(())
    }

    /// Copy into a box with a larger top index, zero-padding.
    pub(crate) fn pad_to(&self, n_max: usize) -> Self {
        assert!(n_max >= self.n_max);
        let mut out = Self::zeros(self.dim, n_max);
        out.truncation_loss = self.truncation_loss;
        for n in self.indices() {
            let v = self.get(&n);
            if v != 0.0 {
                out.set(&n, v);
            }
        }
        out
    }

    /// Restrict to a smaller box; mass above the top larger than `tol` sets
    /// the truncation-loss flag.
    pub(crate) fn restrict_to(&self, n_max: usize, tol: f64) -> Self {
        assert!(n_max <= self.n_max);
        let mut out = Self::zeros(self.dim, n_max);
        out.truncation_loss = self.truncation_loss;
        for n in self.indices() {
            let v = self.get(&n);
            if n.iter().all(|&ni| ni <= n_max) {
                out.set(&n, v);
            } else if v.abs() > tol {
                out.truncation_loss = true;
            }
        }
        out
    }
}

/// The distinct eigenvalues `Lambda_0 < Lambda_1 < ...` met inside a
/// truncation box, each with the flat indices of its eigenspace.
#[derive(Clone, Debug)]
pub struct LevelTable {
    dim: usize,
    n_max: usize,
    levels: Vec<f64>,
    groups: Vec<Vec<usize>>,
    merged_nearby: bool,
}

impl LevelTable {
    /// Group the box by eigenvalue. Exact equality applies whenever the
    /// per-axis eigenvalues are reproduced bit-for-bit (integer-valued
    /// families); otherwise values within a relative 1e-12 are merged and
    /// flagged.
    pub fn build(fam: &FamilySpec, dim: usize, n_max: usize) -> Self {
        let mut tagged: Vec<(f64, usize)> = Vec::new();
        let side = n_max + 1;
        for (flat, n) in box_indices(dim, n_max).enumerate() {
            tagged.push((lambda_multi(fam, &n), flat));
        }
        debug_assert_eq!(tagged.len(), side.pow(dim as u32));
        tagged.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));

        let mut levels: Vec<f64> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut merged_nearby = false;
        for (lam, flat) in tagged {
            match levels.last() {
                Some(&prev) if lam == prev => groups.last_mut().unwrap().push(flat),
                Some(&prev) if lam - prev <= 1e-12 * prev.abs().max(1.0) => {
                    merged_nearby = true;
                    groups.last_mut().unwrap().push(flat);
                }
                _ => {
                    levels.push(lam);
                    groups.push(vec![flat]);
                }
            }
        }
        for g in &mut groups {
            g.sort_unstable();
        }
        LevelTable { dim, n_max, levels, groups, merged_nearby }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, m: usize) -> Result<f64> {
        self.levels
            .get(m)
            .copied()
            .ok_or(Error::LevelOutOfRange { level: m, count: self.levels.len() })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn group(&self, m: usize) -> Result<&[usize]> {
        self.groups
            .get(m)
            .map(Vec::as_slice)
            .ok_or(Error::LevelOutOfRange { level: m, count: self.levels.len() })
    }

    /// True when two levels closer than the merge tolerance were fused.
    pub fn merged_nearby(&self) -> bool {
        self.merged_nearby
    }

    /// Spectral projection onto the `m`-th eigenspace.
    pub fn project(&self, m: usize, coeffs: &CoeffVector) -> Result<CoeffVector> {
        if coeffs.dim() != self.dim || coeffs.n_max() != self.n_max {
            return Err(Error::BoxMismatch { left: coeffs.n_max(), right: self.n_max });
        }
        let group = self.group(m)?;
        let mut out = CoeffVector::zeros(self.dim, self.n_max);
        out.set_truncation_loss(coeffs.truncation_loss());
        for &flat in group {
            out.data_mut()[flat] = coeffs.data()[flat];
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyKind, FamilySpec};

    fn trig() -> FamilySpec {
        FamilySpec::new(FamilyKind::Trigonometric).unwrap()
    }

    #[test]
    fn angle_index_values() {
        assert_eq!(angle_index(0), 0);
        assert_eq!(angle_index(1), 1);
        assert_eq!(angle_index(2), 1);
        assert_eq!(angle_index(7), 4);
    }

    #[test]
    fn lambda_multi_examples() {
        let f = trig();
        assert_eq!(lambda_multi(&f, &[3, 4]), 8.0);
        assert_eq!(lambda_multi(&f, &[0, 0]), 0.0);
        let h = FamilySpec::new(FamilyKind::HermiteEven).unwrap();
        assert_eq!(lambda_multi(&h, &[5]), 13.0);
    }

    #[test]
    fn trig_levels_1d() {
        let table = LevelTable::build(&trig(), 1, 4);
        assert_eq!(table.levels(), &[0.0, 1.0, 4.0]);
        assert_eq!(table.group(0).unwrap(), &[0]);
        assert_eq!(table.group(1).unwrap(), &[1, 2]);
        assert_eq!(table.group(2).unwrap(), &[3, 4]);
        assert!(!table.merged_nearby());
    }

    #[test]
    fn trig_levels_2d_match_enumeration() {
        let f = trig();
        let table = LevelTable::build(&f, 2, 2);
        assert_eq!(table.levels(), &[0.0, 1.0, 2.0]);
        // level 1 group: all n with lambda = 1
        let expect: Vec<usize> = box_indices(2, 2)
            .enumerate()
            .filter(|(_, n)| lambda_multi(&f, n) == 1.0)
            .map(|(flat, _)| flat)
            .collect();
        assert_eq!(table.group(1).unwrap(), expect.as_slice());
        let v = CoeffVector::zeros(2, 2);
        assert_eq!(v.data().len(), 9);
    }

    #[test]
    fn hermite_levels_1d() {
        let h = FamilySpec::new(FamilyKind::HermiteEven).unwrap();
        let table = LevelTable::build(&h, 1, 2);
        assert_eq!(table.levels(), &[1.0, 5.0]);
        assert_eq!(table.group(0).unwrap(), &[0]);
        assert_eq!(table.group(1).unwrap(), &[1, 2]);
    }

    #[test]
    fn groups_partition_the_box() {
        let f = trig();
        let table = LevelTable::build(&f, 2, 5);
        let mut seen = vec![false; 36];
        for m in 0..table.len() {
            for &flat in table.group(m).unwrap() {
                assert!(!seen[flat]);
                seen[flat] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn projection_partition_and_idempotence() {
        let f = trig();
        let table = LevelTable::build(&f, 2, 3);
        let mut v = CoeffVector::zeros(2, 3);
        for (i, c) in v.data_mut().iter_mut().enumerate() {
            *c = (i as f64 * 0.37).sin();
        }
        let mut total = CoeffVector::zeros(2, 3);
        for m in 0..table.len() {
            let p = table.project(m, &v).unwrap();
            let pp = table.project(m, &p).unwrap();
            assert_eq!(p.max_abs_diff(&pp).unwrap(), 0.0);
            total = total.add(&p).unwrap();
        }
        assert_eq!(total.max_abs_diff(&v).unwrap(), 0.0);
    }

    #[test]
    fn ladder_preserves_levels() {
        let f = FamilySpec::new(FamilyKind::LaguerreConv { alpha: 0.5 }).unwrap();
        for n in box_indices(2, 6) {
            for j in 0..2 {
                if n[j] == 0 {
                    continue;
                }
                let mut m = n.clone();
                if n[j] % 2 == 0 {
                    m[j] -= 1;
                } else {
                    m[j] += 1;
                }
                assert_eq!(lambda_multi(&f, &n), lambda_multi(&f, &m));
            }
        }
    }

    #[test]
    fn restrict_flags_loss() {
        let mut v = CoeffVector::zeros(1, 5);
        v.set(&[5], 0.5);
        v.set(&[2], 1.0);
        let r = v.restrict_to(4, 1e-12);
        assert!(r.truncation_loss());
        assert_eq!(r.get(&[2]), 1.0);
        let r2 = v.restrict_to(5, 1e-12);
        assert!(!r2.truncation_loss());
    }
}
