//! Family-adapted Gauss quadrature on the symmetrized interval and its
//! d-fold product, plus the analyze/synthesize transforms between node
//! samples and expansion coefficients.
//!
//! Each rule is built on the half line / half interval and reflected, so the
//! node set is exactly symmetric under `x -> -x` (with equal weights) and
//! never contains 0. The underlying rules:
//!
//! * trigonometric and Jacobi families: Gauss-Jacobi in `cos t` mapped to
//!   (0, pi);
//! * Hermite functions: Gauss-Hermite with the `e^{-x^2}` weight compensated
//!   (in log space) so grid values are plain function samples;
//! * Ornstein-Uhlenbeck: Gauss-Hermite as-is (the weight is the measure);
//! * Laguerre: Gauss-Laguerre in `t = x^2`, nodes mapped to `x = sqrt(t)`,
//!   weight compensated in log space.
//!
//! With a rule of (total) size `2M`, inner products of basis members are
//! exact up to polynomial degree `2M - 1` in the underlying variable.

use crate::error::{Error, Result};
use crate::family::{FamilyKind, FamilySpec};
use crate::index::{box_indices, CoeffVector};
use crate::orthopoly::{self, RecKind};
use crate::symmetrize::SymmetrizedBasis;
use statrs::function::gamma::ln_gamma;

/// Key identifying the rule a [`GridFunction`] was sampled on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RuleId {
    kind: FamilyKind,
    size: usize,
    dim: usize,
}

/// Symmetric Gauss rule on `X_SYM`: nodes ascending, reflection-closed,
/// weights positive.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    kind: FamilyKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Build the family's rule with (at least) `size` total nodes on
    /// `X_SYM`; an odd request is rounded up to the next even size.
    pub fn build(fam: &FamilySpec, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidConfig("quadrature size must be >= 1".into()));
        }
        let half = size.div_ceil(2);
        let (half_nodes, half_weights) = match fam.kind() {
            FamilyKind::Trigonometric | FamilyKind::SineAugmented => {
                // unit-mass Chebyshev measure in cos t pushed to (0, pi)
                let rec = RecKind::Jacobi { alpha: -0.5, beta: -0.5 };
                let (x, w) = orthopoly::golub_welsch(&rec, half, 1.0);
                let mut nodes: Vec<f64> = x.iter().map(|&xi| xi.clamp(-1.0, 1.0).acos()).collect();
                nodes.reverse();
                let mut weights = w;
                weights.reverse();
                (nodes, weights)
            }
            FamilyKind::JacobiTrig { alpha, beta } => {
                let rec = RecKind::Jacobi { alpha, beta };
                let (x, w) = orthopoly::golub_welsch(&rec, half, 1.0);
                let mut nodes: Vec<f64> = x.iter().map(|&xi| xi.clamp(-1.0, 1.0).acos()).collect();
                nodes.reverse();
                let mut weights = w;
                weights.reverse();
                (nodes, weights)
            }
            FamilyKind::OrnsteinUhlenbeckEven => {
                let (x, w) = orthopoly::golub_welsch(
                    &RecKind::Hermite,
                    2 * half,
                    std::f64::consts::PI.sqrt(),
                );
                // keep the positive half; the mirror is added below
                let nodes = x[half..].to_vec();
                let weights = w[half..].to_vec();
                (nodes, weights)
            }
            FamilyKind::HermiteEven => {
                let (x, lw) = orthopoly::golub_welsch_ln(
                    &RecKind::Hermite,
                    2 * half,
                    0.5 * std::f64::consts::PI.ln(),
                );
                let nodes = x[half..].to_vec();
                let weights: Vec<f64> = nodes
                    .iter()
                    .zip(&lw[half..])
                    .map(|(&xi, &lwi)| (lwi + xi * xi).exp())
                    .collect();
                (nodes, weights)
            }
            FamilyKind::LaguerreConv { alpha } => {
                let (t, lw) = orthopoly::golub_welsch_ln(
                    &RecKind::Laguerre { alpha },
                    half,
                    ln_gamma(alpha + 1.0),
                );
                let nodes: Vec<f64> = t.iter().map(|&ti| ti.max(0.0).sqrt()).collect();
                let weights: Vec<f64> = t
                    .iter()
                    .zip(&lw)
                    .map(|(&ti, &lwi)| (lwi + ti - std::f64::consts::LN_2).exp())
                    .collect();
                (nodes, weights)
            }
        };
        // reflect: nodes exactly mirrored, equal weights
        let m = half_nodes.len();
        let mut nodes = Vec::with_capacity(2 * m);
        let mut weights = Vec::with_capacity(2 * m);
        for i in (0..m).rev() {
            nodes.push(-half_nodes[i]);
            weights.push(half_weights[i]);
        }
        nodes.extend_from_slice(&half_nodes);
        weights.extend_from_slice(&half_weights);
        Ok(QuadratureRule { kind: fam.kind(), nodes, weights })
    }

    /// Total number of nodes on `X_SYM`.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights restricted to `(0, c)`, for integrals over the
    /// original half interval.
    pub fn positive_half(&self) -> (&[f64], &[f64]) {
        let m = self.nodes.len() / 2;
        (&self.nodes[m..], &self.weights[m..])
    }
}

/// Tensor-product quadrature grid on `X_SYM^d`.
#[derive(Clone, Debug)]
pub struct Grid {
    rule: QuadratureRule,
    dim: usize,
}

impl Grid {
    pub fn new(rule: QuadratureRule, dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Grid { rule, dim }
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn id(&self) -> RuleId {
        RuleId { kind: self.rule.kind, size: self.rule.size(), dim: self.dim }
    }

    /// Number of tensor-product nodes.
    pub fn len(&self) -> usize {
        self.rule.size().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinates of the `flat`-th node (lexicographic, first axis slowest).
    pub fn node(&self, flat: usize) -> Vec<f64> {
        let s = self.rule.size();
        let mut idx = flat;
        let mut x = vec![0.0; self.dim];
        for ax in (0..self.dim).rev() {
            x[ax] = self.rule.nodes[idx % s];
            idx /= s;
        }
        x
    }

    /// Product weight of the `flat`-th node.
    pub fn weight(&self, flat: usize) -> f64 {
        let s = self.rule.size();
        let mut idx = flat;
        let mut w = 1.0;
        for _ in 0..self.dim {
            w *= self.rule.weights[idx % s];
            idx /= s;
        }
        w
    }

    /// Sample a function on all grid nodes.
    pub fn sample<F>(&self, f: F) -> GridFunction
    where
        F: Fn(&[f64]) -> f64,
    {
        let values = (0..self.len()).map(|i| f(&self.node(i))).collect();
        GridFunction { id: self.id(), values }
    }

    /// The mu-inner product of two grid functions.
    pub fn inner_product(&self, f: &GridFunction, g: &GridFunction) -> Result<f64> {
        if f.id != self.id() || g.id != self.id() {
            return Err(Error::RuleMismatch);
        }
        Ok((0..self.len())
            .map(|i| self.weight(i) * f.values[i] * g.values[i])
            .sum())
    }

    pub fn norm(&self, f: &GridFunction) -> Result<f64> {
        Ok(self.inner_product(f, f)?.sqrt())
    }
}

/// Function values on a [`Grid`]'s nodes.
#[derive(Clone, Debug)]
pub struct GridFunction {
    id: RuleId,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridLengthMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(GridFunction { id: grid.id(), values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rule_id(&self) -> RuleId {
        self.id
    }
}

/// Precomputed basis-on-grid tables turning node samples into truncated
/// expansion coefficients and back.
#[derive(Clone, Debug)]
pub struct GridTransform {
    basis: SymmetrizedBasis,
    grid: Grid,
    n_max: usize,
    /// `table[n * size + i] = Phi_n(x_i)` on the one-dimensional rule.
    table: Vec<f64>,
}

impl GridTransform {
    /// Requires `size >= 2 n_max + 16` so that all basis products are
    /// integrated exactly with margin.
    pub fn new(basis: SymmetrizedBasis, grid: Grid, n_max: usize) -> Result<Self> {
        let required = 2 * n_max + 16;
        if grid.rule().size() < required {
            return Err(Error::InsufficientRule {
                size: grid.rule().size(),
                n_max,
                required,
            });
        }
        let size = grid.rule().size();
        let mut table = vec![0.0; (n_max + 1) * size];
        for n in 0..=n_max {
            for (i, &x) in grid.rule().nodes().iter().enumerate() {
                table[n * size + i] = basis.eval_phi_ext(n, x)?;
            }
        }
        Ok(GridTransform { basis, grid, n_max, table })
    }

    pub fn basis(&self) -> &SymmetrizedBasis {
        &self.basis
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn phi_on_nodes(&self, n: usize) -> &[f64] {
        let size = self.grid.rule().size();
        &self.table[n * size..(n + 1) * size]
    }

    /// Coefficients `<f, Phi_n>` for all `n` in the box.
    pub fn analyze(&self, f: &GridFunction) -> Result<CoeffVector> {
        if f.id != self.grid.id() {
            return Err(Error::RuleMismatch);
        }
        let size = self.grid.rule().size();
        let weights = self.grid.rule().weights();
        let dim = self.grid.dim();
        // contract one axis at a time against w_i Phi_n(x_i); each pass
        // consumes the leading axis and appends the new one, so after dim
        // passes the layout is lexicographic in n
        let mut data = f.values.clone();
        for _ in 0..dim {
            data = contract_first_axis(&data, size, self.n_max + 1, |n, i| {
                weights[i] * self.table[n * size + i]
            });
        }
        CoeffVector::from_data(dim, self.n_max, data)
    }

    /// Values of the expansion on the grid nodes.
    pub fn synthesize(&self, coeffs: &CoeffVector) -> Result<GridFunction> {
        if coeffs.dim() != self.grid.dim() || coeffs.n_max() != self.n_max {
            return Err(Error::BoxMismatch { left: coeffs.n_max(), right: self.n_max });
        }
        let size = self.grid.rule().size();
        let dim = self.grid.dim();
        let mut data = coeffs.data().to_vec();
        for _ in 0..dim {
            data = contract_first_axis(&data, self.n_max + 1, size, |i, n| {
                self.table[n * size + i]
            });
        }
        GridFunction::new(&self.grid, data)
    }

    /// Evaluate the expansion at an arbitrary point of `X_SYM^d`.
    pub fn eval_expansion_at(&self, coeffs: &CoeffVector, x: &[f64]) -> Result<f64> {
        if x.len() != coeffs.dim() {
            return Err(Error::DimensionMismatch { expected: coeffs.dim(), got: x.len() });
        }
        let mut acc = 0.0;
        for n in box_indices(coeffs.dim(), coeffs.n_max()) {
            let c = coeffs.get(&n);
            if c == 0.0 {
                continue;
            }
            let mut phi = 1.0;
            for (ax, &ni) in n.iter().enumerate() {
                phi *= self.basis.eval_phi_ext(ni, x[ax])?;
            }
            acc += c * phi;
        }
        Ok(acc)
    }
}

/// Tensor contraction replacing the first axis (length `in_len`) of `data`
/// by a new axis of length `out_len`, with `coeff(o, i)` as the kernel, and
/// cycling the result so the old second axis becomes first. Applying this
/// `dim` times transforms every axis once.
fn contract_first_axis<F>(data: &[f64], in_len: usize, out_len: usize, coeff: F) -> Vec<f64>
where
    F: Fn(usize, usize) -> f64,
{
    let rest = data.len() / in_len;
    let mut out = vec![0.0; out_len * rest];
    for o in 0..out_len {
        for i in 0..in_len {
            let k = coeff(o, i);
            if k == 0.0 {
                continue;
            }
            let src = &data[i * rest..(i + 1) * rest];
            // cycle: out[r][o] layout so axes rotate through the front
            for (r, &s) in src.iter().enumerate() {
                out[r * out_len + o] += k * s;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyKind;
    use approx::assert_abs_diff_eq;

    fn make(kind: FamilyKind, size: usize) -> (SymmetrizedBasis, Grid) {
        let fam = FamilySpec::new(kind).unwrap();
        let rule = QuadratureRule::build(&fam, size).unwrap();
        (SymmetrizedBasis::new(fam), Grid::new(rule, 1))
    }

    #[test]
    fn trig_rule_mass_is_two() {
        let (_, grid) = make(FamilyKind::Trigonometric, 64);
        let total: f64 = grid.rule().weights().iter().sum();
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn nodes_are_reflection_symmetric_and_nonzero() {
        for kind in [
            FamilyKind::Trigonometric,
            FamilyKind::HermiteEven,
            FamilyKind::LaguerreConv { alpha: 0.5 },
            FamilyKind::JacobiTrig { alpha: 0.3, beta: 0.7 },
            FamilyKind::OrnsteinUhlenbeckEven,
        ] {
            let (_, grid) = make(kind, 48);
            let n = grid.rule().size();
            assert_eq!(n, 48);
            for i in 0..n {
                let j = n - 1 - i;
                assert_eq!(grid.rule().nodes()[i], -grid.rule().nodes()[j]);
                assert_eq!(grid.rule().weights()[i], grid.rule().weights()[j]);
                assert!(grid.rule().nodes()[i] != 0.0);
            }
        }
    }

    #[test]
    fn orthonormality_on_sym_interval() {
        for kind in [
            FamilyKind::Trigonometric,
            FamilyKind::HermiteEven,
            FamilyKind::LaguerreConv { alpha: 0.5 },
            FamilyKind::LaguerreConv { alpha: -0.3 },
            FamilyKind::JacobiTrig { alpha: 0.3, beta: 0.7 },
            FamilyKind::OrnsteinUhlenbeckEven,
        ] {
            let (basis, grid) = make(kind, 2 * 12 + 16);
            let t = GridTransform::new(basis, grid, 12).unwrap();
            for n in 0..=12usize {
                for m in 0..=12usize {
                    let f = GridFunction::new(t.grid(), t.phi_on_nodes(n).to_vec()).unwrap();
                    let g = GridFunction::new(t.grid(), t.phi_on_nodes(m).to_vec()).unwrap();
                    let ip = t.grid().inner_product(&f, &g).unwrap();
                    let expect = if n == m { 1.0 } else { 0.0 };
                    assert!(
                        (ip - expect).abs() < 1e-10,
                        "{kind:?} <Phi_{n}, Phi_{m}> = {ip}"
                    );
                }
            }
        }
    }

    #[test]
    fn phi0_normalized() {
        for kind in [
            FamilyKind::HermiteEven,
            FamilyKind::LaguerreConv { alpha: 0.5 },
            FamilyKind::OrnsteinUhlenbeckEven,
        ] {
            let (basis, grid) = make(kind, 40);
            let f = grid.sample(|x| basis.eval_phi_ext(0, x[0]).unwrap());
            assert_abs_diff_eq!(grid.inner_product(&f, &f).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn analyze_picks_out_coefficients() {
        let (basis, grid) = make(FamilyKind::Trigonometric, 2 * 8 + 16);
        let t = GridTransform::new(basis, grid, 8).unwrap();
        let f = t.grid().sample(|x| {
            2.0 * basis_eval(&t, 0, x[0]) + 3.0 * basis_eval(&t, 5, x[0])
        });
        let c = t.analyze(&f).unwrap();
        assert_abs_diff_eq!(c.get(&[0]), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.get(&[5]), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.get(&[3]), 0.0, epsilon = 1e-12);
        // round trip
        let back = t.synthesize(&c).unwrap();
        for (a, b) in back.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    fn basis_eval(t: &GridTransform, n: usize, x: f64) -> f64 {
        t.basis().eval_phi_ext(n, x).unwrap()
    }

    #[test]
    fn analyze_2d_tensor_products() {
        let fam = FamilySpec::new(FamilyKind::Trigonometric).unwrap();
        let rule = QuadratureRule::build(&fam, 2 * 4 + 16).unwrap();
        let grid = Grid::new(rule, 2);
        let basis = SymmetrizedBasis::new(fam);
        let t = GridTransform::new(basis, grid, 4).unwrap();
        // f = Phi_2(x) Phi_1(y) = cos x sin y
        let f = t.grid().sample(|x| x[0].cos() * x[1].sin());
        let c = t.analyze(&f).unwrap();
        assert_abs_diff_eq!(c.get(&[2, 1]), 1.0, epsilon = 1e-12);
        let mut total = 0.0;
        for n in c.indices() {
            total += c.get(&n).abs();
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
        let back = t.synthesize(&c).unwrap();
        for (a, b) in back.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn parseval_on_span() {
        let (basis, grid) = make(FamilyKind::HermiteEven, 2 * 10 + 16);
        let t = GridTransform::new(basis, grid, 10).unwrap();
        // fixed pseudo-random in-span function
        let coeffs: Vec<f64> = (0..=10).map(|i| ((i * 37 + 11) % 17) as f64 / 17.0 - 0.5).collect();
        let f = t.grid().sample(|x| {
            (0..=10)
                .map(|n| coeffs[n] * basis_eval(&t, n, x[0]))
                .sum::<f64>()
        });
        let nf2 = t.grid().inner_product(&f, &f).unwrap();
        let c = t.analyze(&f).unwrap();
        let sum2: f64 = c.data().iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(nf2, sum2, epsilon = 1e-9);
    }

    #[test]
    fn insufficient_rule_is_an_error() {
        let fam = FamilySpec::new(FamilyKind::Trigonometric).unwrap();
        let rule = QuadratureRule::build(&fam, 20).unwrap();
        let grid = Grid::new(rule, 1);
        let basis = SymmetrizedBasis::new(fam);
        assert!(matches!(
            GridTransform::new(basis, grid, 8),
            Err(Error::InsufficientRule { .. })
        ));
    }

    #[test]
    fn augmented_analyze_of_even_function_vanishes() {
        let (basis, grid) = make(FamilyKind::SineAugmented, 2 * 8 + 16);
        let t = GridTransform::new(basis, grid, 8).unwrap();
        let f = t.grid().sample(|x| x[0].cos() + 0.3 * (2.0 * x[0]).cos());
        let c = t.analyze(&f).unwrap();
        for n in c.indices() {
            assert!(c.get(&n).abs() < 1e-10, "coefficient at {n:?}");
        }
    }

    #[test]
    fn rule_mismatch_detected() {
        let (_, grid_a) = make(FamilyKind::Trigonometric, 32);
        let (_, grid_b) = make(FamilyKind::Trigonometric, 34);
        let f = grid_a.sample(|x| x[0]);
        let g = grid_b.sample(|x| x[0]);
        assert_eq!(grid_a.inner_product(&f, &g), Err(Error::RuleMismatch));
    }
}
