//! Every structural identity of the symmetrized scheme as a named,
//! tolerance-tagged, machine-checkable report: skew-symmetry of the
//! derivatives, eigen-relations of the extended Laplacian, the ladder and
//! its closed form, contraction of the Riesz transforms, the
//! Cauchy-Riemann system and harmonicity of the Poisson integrals, the
//! square-sum identity, the complex-picture equivalence, quadrature
//! exactness, and the augmented sine-convention behavior.
//!
//! A failing check is a report with `pass = false`, not an error; errors are
//! reserved for invalid configurations. Random test vectors are unit-norm
//! with full-box support (restricted to the live odd sub-lattice for
//! augmented families) drawn from a seeded generator recorded in each
//! report, so runs are reproducible.

use crate::engine::{phi_to_psi, psi_to_phi, OperatorEngine};
use crate::error::{Error, Result};
use crate::family::{FamilyKind, FamilySpec};
use crate::index::{angle_index, box_indices, CoeffVector, LevelTable};
use crate::jet::Jet;
use crate::quadrature::{Grid, GridFunction, GridTransform, QuadratureRule};
use crate::symmetrize::SymmetrizedBasis;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Deliberate defect injected by test fixtures to prove the suite notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Flip the sign of the downward ladder move, breaking skew-symmetry.
    FlipLadderSign,
}

/// Suite configuration. Tolerances are fixed per check; `tighten` may scale
/// them down (values above 1 are rejected).
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub families: Vec<FamilyKind>,
    pub dims: Vec<usize>,
    pub n_max: usize,
    /// Total 1-d rule size; 0 selects the default `2 n_max + 32`.
    pub quad_size: usize,
    pub t_values: Vec<f64>,
    pub seed: u64,
    pub tighten: f64,
    pub mutation: Mutation,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            families: vec![
                FamilyKind::Trigonometric,
                FamilyKind::HermiteEven,
                FamilyKind::LaguerreConv { alpha: 0.5 },
                FamilyKind::JacobiTrig { alpha: 0.3, beta: 0.7 },
                FamilyKind::OrnsteinUhlenbeckEven,
                FamilyKind::SineAugmented,
            ],
            dims: vec![1, 2],
            n_max: 16,
            quad_size: 0,
            t_values: vec![0.1, 1.0],
            seed: 7,
            tighten: 1.0,
            mutation: Mutation::None,
        }
    }
}

/// Outcome of a single named check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: &'static str,
    pub family: &'static str,
    pub dim: usize,
    pub n_max: usize,
    pub seed: u64,
    pub max_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime: Duration,
}

struct Suite<'a> {
    cfg: &'a VerifyConfig,
    reports: Vec<CheckReport>,
}

impl<'a> Suite<'a> {
    fn record(
        &mut self,
        check: &'static str,
        family: &'static str,
        dim: usize,
        tolerance: f64,
        started: Instant,
        max_defect: f64,
    ) {
        let tolerance = tolerance * self.cfg.tighten;
        self.reports.push(CheckReport {
            check,
            family,
            dim,
            n_max: self.cfg.n_max,
            seed: self.cfg.seed,
            max_defect,
            tolerance,
            pass: max_defect <= tolerance,
            runtime: started.elapsed(),
        });
    }
}

/// Run the full suite for a configuration; one report per applicable
/// (check, family, dimension) combination, ordered deterministically.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    if !(cfg.tighten > 0.0 && cfg.tighten <= 1.0) {
        return Err(Error::InvalidConfig(
            "tighten factor must lie in (0, 1]: tolerances may only shrink".into(),
        ));
    }
    if cfg.dims.iter().any(|&d| d == 0) {
        return Err(Error::InvalidConfig("dimension must be >= 1".into()));
    }
    if cfg.t_values.iter().any(|&t| !(t >= 0.0)) {
        return Err(Error::InvalidConfig("t values must be nonnegative".into()));
    }
    let mut suite = Suite { cfg, reports: Vec::new() };
    for &kind in &cfg.families {
        let fam = FamilySpec::new(kind)?;
        let quad = if cfg.quad_size == 0 { 2 * cfg.n_max + 32 } else { cfg.quad_size };
        let required = 2 * cfg.n_max + 16;
        if quad < required {
            return Err(Error::InsufficientRule { size: quad, n_max: cfg.n_max, required });
        }
        let basis = SymmetrizedBasis::new(fam);
        let rule = QuadratureRule::build(&fam, quad)?;
        let grid = Grid::new(rule, 1);
        let transform = GridTransform::new(basis, grid, cfg.n_max)?;

        family_checks(&mut suite, &fam, &transform)?;
        symmetrization_checks(&mut suite, &basis, &transform)?;
        quadrature_checks(&mut suite, &fam, &basis, &transform)?;
        if fam.is_augmented() {
            augmented_checks(&mut suite, &transform)?;
        }

        for &dim in &cfg.dims {
            tensor_checks(&mut suite, &fam, dim);
            if !fam.is_augmented() {
                operator_checks(&mut suite, &basis, dim)?;
            }
        }
    }
    Ok(suite.reports)
}

fn live_indices(fam: &FamilySpec, n_max: usize) -> Vec<usize> {
    (0..=n_max)
        .filter(|n| !fam.is_augmented() || n % 2 == 1)
        .collect()
}

/// Unit-norm random vector supported on the live sub-lattice, up to
/// `top` on every axis.
fn random_vector(rng: &mut ChaCha8Rng, fam: &FamilySpec, dim: usize, n_max: usize, top: usize) -> CoeffVector {
    let mut v = CoeffVector::zeros(dim, n_max);
    for n in box_indices(dim, n_max) {
        if n.iter().any(|&ni| ni > top) {
            continue;
        }
        if fam.is_augmented() && n.iter().any(|&ni| ni % 2 == 0) {
            continue;
        }
        v.set(&n, rng.gen::<f64>() - 0.5);
    }
    let norm = v.norm();
    if norm > 0.0 {
        v.scale(1.0 / norm)
    } else {
        v
    }
}

// ---------------------------------------------------------------------------
// family-level checks (dimension 1)
// ---------------------------------------------------------------------------

const TOL_ORTHONORMALITY: f64 = 1e-10;
const TOL_EIGEN: f64 = 1e-8;
const TOL_ADJOINT: f64 = 1e-10;
const TOL_NORM_IDENTITY: f64 = 1e-8;
const TOL_DELTA_CROSS: f64 = 1e-10;
const TOL_JACOBI_REDUCTION: f64 = 1e-10;

fn family_checks(suite: &mut Suite, fam: &FamilySpec, t: &GridTransform) -> Result<()> {
    let name = fam.kind().name();
    let n_test = suite.cfg.n_max.min(16);
    let (nodes, weights) = t.grid().rule().positive_half();

    // orthonormality of phi_k on (0, c)
    let started = Instant::now();
    let ks: Vec<usize> = (0..=n_test).filter(|&k| !fam.is_augmented() || k >= 1).collect();
    let mut defect: f64 = 0.0;
    let values: Vec<Vec<f64>> = ks
        .iter()
        .map(|&k| nodes.iter().map(|&x| fam.eval_phi(k, x).unwrap()).collect())
        .collect();
    for (i, &k) in ks.iter().enumerate() {
        for (j, &m) in ks.iter().enumerate() {
            let ip: f64 = (0..nodes.len()).map(|q| weights[q] * values[i][q] * values[j][q]).sum();
            let expect = if k == m { 1.0 } else { 0.0 };
            defect = defect.max((ip - expect).abs());
        }
    }
    suite.record("family_orthonormality", name, 1, TOL_ORTHONORMALITY, started, defect);

    // pointwise eigen-relation (a + delta* delta) phi_k = lambda_k phi_k
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for &k in &ks {
        let lam = fam.eigenvalue(k);
        let scale = lam.abs().max(1.0);
        for &x in nodes {
            let g = fam.delta_phi_jet(k, x)?;
            let co = fam.coeffs(x)?;
            let dstar_g = -co.p.value() * g.d(1)
                + (co.q.value() - co.p.value() * co.lw1 - co.p.d(1)) * g.value();
            let phi = fam.eval_phi(k, x)?;
            defect = defect.max((fam.a() * phi + dstar_g - lam * phi).abs() / scale);
        }
    }
    suite.record("family_eigen_relation", name, 1, TOL_EIGEN, started, defect);

    // adjointness <delta f, g> = <f, delta* g> on bump pairs
    let started = Instant::now();
    let defect = adjointness_defect(fam)?;
    suite.record("family_adjointness", name, 1, TOL_ADJOINT, started, defect);

    // norm identity ||delta phi_k||^2 = lambda_k - a
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for &k in &ks {
        let ip: f64 = (0..nodes.len())
            .map(|q| {
                let d = fam.delta_phi_jet(k, nodes[q]).unwrap().value();
                weights[q] * d * d
            })
            .sum();
        defect = defect.max((ip - fam.excitation(k)).abs());
    }
    suite.record("family_norm_identity", name, 1, TOL_NORM_IDENTITY, started, defect);

    // lowering identity against p phi' + q phi
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for &k in &ks {
        for &x in nodes {
            if let Some(lowered) = fam.delta_phi_lowering(k, x)? {
                let direct = fam.delta_phi_jet(k, x)?.value();
                defect = defect.max((lowered - direct).abs() / direct.abs().max(1.0));
            }
        }
    }
    suite.record("family_delta_cross_check", name, 1, TOL_DELTA_CROSS, started, defect);

    // the Jacobi family at alpha = beta = -1/2 reduces to the cosine system
    if matches!(fam.kind(), FamilyKind::JacobiTrig { .. }) {
        let started = Instant::now();
        let cheb = FamilySpec::new(FamilyKind::JacobiTrig { alpha: -0.5, beta: -0.5 })?;
        let trig = FamilySpec::new(FamilyKind::Trigonometric)?;
        let mut defect: f64 = 0.0;
        for k in 0..=16usize {
            for &x in nodes {
                defect = defect.max((cheb.eval_phi(k, x)? - trig.eval_phi(k, x)?).abs());
            }
        }
        suite.record("jacobi_trig_reduction", name, 1, TOL_JACOBI_REDUCTION, started, defect);
    }
    Ok(())
}

/// Smooth compactly supported bump `exp(-1/(1 - u^2))`, `u = (x - c)/r`.
struct Bump {
    center: f64,
    radius: f64,
}

impl Bump {
    fn value(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.radius;
        if u.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - u * u)).exp()
        }
    }

    fn deriv(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.radius;
        if u.abs() >= 1.0 {
            0.0
        } else {
            let d = 1.0 - u * u;
            self.value(x) * (-2.0 * u / (d * d)) / self.radius
        }
    }
}

fn adjointness_defect(fam: &FamilySpec) -> Result<f64> {
    // midpoint rule on the common support: for smooth compactly supported
    // integrands all Euler-Maclaurin boundary terms vanish, so this reaches
    // machine precision quickly
    let f = Bump { center: 1.35, radius: 1.05 };
    let g = Bump { center: 1.65, radius: 0.95 };
    let (lo, hi) = (0.25f64, 2.65f64);
    let m = 2048usize;
    let h = (hi - lo) / m as f64;
    let mut left = 0.0;
    let mut right = 0.0;
    for i in 0..m {
        let x = lo + (i as f64 + 0.5) * h;
        let w = h * fam.weight(x)?;
        let df = fam.delta_apply(crate::family::DeltaSide::Delta, x, f.value(x), f.deriv(x))?;
        let dsg =
            fam.delta_apply(crate::family::DeltaSide::DeltaStar, x, g.value(x), g.deriv(x))?;
        left += w * df * g.value(x);
        right += w * f.value(x) * dsg;
    }
    Ok((left - right).abs())
}

// ---------------------------------------------------------------------------
// symmetrization checks (dimension 1)
// ---------------------------------------------------------------------------

const TOL_SKEW: f64 = 1e-9;
const TOL_SPECTRAL_POINTWISE: f64 = 1e-8;
const TOL_INVOLUTION: f64 = 1e-12;
const TOL_EXT_EIGEN: f64 = 1e-8;
const TOL_PARITY_REDUCTION: f64 = 1e-8;
const TOL_EXT_ORTHONORMALITY: f64 = 1e-10;

fn synthesize_jet(basis: &SymmetrizedBasis, c: &CoeffVector, x: f64) -> Jet {
    let mut acc = Jet::ZERO;
    for n in 0..=c.n_max() {
        let v = c.get(&[n]);
        if v != 0.0 {
            acc = acc + basis.phi_ext_jet(n, x).unwrap().scale(v);
        }
    }
    acc
}

/// Spectral ladder with an optional corrupted downward sign (mutation
/// fixture for proving the skew-symmetry check has teeth).
fn mutated_ladder(basis: &SymmetrizedBasis, c: &CoeffVector, mutation: Mutation) -> CoeffVector {
    let mut out = CoeffVector::zeros(1, c.n_max() + 1);
    let down_sign = match mutation {
        Mutation::None => -1.0,
        Mutation::FlipLadderSign => 1.0,
    };
    for n in 0..=c.n_max() {
        let v = c.get(&[n]);
        if v == 0.0 {
            continue;
        }
        let amp = basis.excitation_ext(n).sqrt();
        if n % 2 == 0 {
            if n > 0 {
                let cur = out.get(&[n - 1]);
                out.set(&[n - 1], cur + down_sign * amp * v);
            }
        } else {
            let cur = out.get(&[n + 1]);
            out.set(&[n + 1], cur + amp * v);
        }
    }
    out
}

fn symmetrization_checks(
    suite: &mut Suite,
    basis: &SymmetrizedBasis,
    t: &GridTransform,
) -> Result<()> {
    let fam = *basis.family();
    let name = fam.kind().name();
    let n_max = suite.cfg.n_max;
    let grid = t.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(suite.cfg.seed ^ 0x5ce1);

    // skew-symmetry through the spectral ladder and quadrature inner products
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for _ in 0..20 {
        let cf = random_vector(&mut rng, &fam, 1, n_max - 1, n_max - 1);
        let cg = random_vector(&mut rng, &fam, 1, n_max - 1, n_max - 1);
        let dcf = mutated_ladder(basis, &cf, suite.cfg.mutation);
        let dcg = mutated_ladder(basis, &cg, suite.cfg.mutation);
        let f = grid.sample(|x| synthesize_jet(basis, &cf, x[0]).value());
        let g = grid.sample(|x| synthesize_jet(basis, &cg, x[0]).value());
        let df = grid.sample(|x| synthesize_jet(basis, &dcf, x[0]).value());
        let dg = grid.sample(|x| synthesize_jet(basis, &dcg, x[0]).value());
        let lhs = grid.inner_product(&df, &g)? + grid.inner_product(&f, &dg)?;
        defect = defect.max(lhs.abs());
    }
    suite.record("skew_symmetry", name, 1, TOL_SKEW, started, defect);

    if !fam.is_augmented() {
        // pointwise D of a synthesized expansion vs the spectral ladder
        let started = Instant::now();
        let mut defect: f64 = 0.0;
        for _ in 0..5 {
            let c = random_vector(&mut rng, &fam, 1, n_max - 1, n_max - 1);
            let dc = basis.apply_d_spectral_1d(&c)?;
            for &x in grid.rule().nodes() {
                let pointwise = basis.apply_d_pointwise(|y| synthesize_jet(basis, &c, y), x)?;
                let spectral = synthesize_jet(basis, &dc, x).value();
                defect = defect.max((pointwise - spectral).abs());
            }
        }
        suite.record("spectral_pointwise_d", name, 1, TOL_SPECTRAL_POINTWISE, started, defect);

        // D^2 Phi_n = -(lambda_<n> - a) Phi_n
        let started = Instant::now();
        let mut defect: f64 = 0.0;
        for n in 0..=n_max {
            let e = CoeffVector::basis_vector(1, n_max, &[n]);
            let dd = basis.apply_d_spectral_1d(&basis.apply_d_spectral_1d(&e)?)?;
            for m in 0..=n_max + 2 {
                let expect = if m == n { -basis.excitation_ext(n) } else { 0.0 };
                defect = defect.max((dd.get(&[m]) - expect).abs());
            }
        }
        suite.record("ladder_involution", name, 1, TOL_INVOLUTION, started, defect);
    }

    // pointwise extended Laplacian eigen-relation, n up to 2 n_max
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for n in 0..=2 * n_max {
        let lam = basis.lambda_ext(n);
        let scale = lam.max(1.0);
        for &x in grid.rule().nodes() {
            let l = basis.apply_l_pointwise(|y| basis.phi_ext_jet(n, y).unwrap(), x)?;
            let phi = basis.eval_phi_ext(n, x)?;
            defect = defect.max((l - lam * phi).abs() / scale);
        }
    }
    suite.record("extended_eigen_relation", name, 1, TOL_EXT_EIGEN, started, defect);

    if !fam.is_augmented() {
        // parity reduction: L_sym = a + delta* delta on even functions,
        // a + delta delta* on odd ones
        let started = Instant::now();
        let mut defect: f64 = 0.0;
        for _ in 0..5 {
            let c = random_vector(&mut rng, &fam, 1, n_max, n_max);
            for parity in [0usize, 1] {
                let mut cp = c.clone();
                for n in 0..=n_max {
                    if n % 2 != parity {
                        cp.set(&[n], 0.0);
                    }
                }
                for &x in grid.rule().nodes() {
                    let fx = synthesize_jet(basis, &cp, x);
                    let l = basis.apply_l_pointwise(|y| synthesize_jet(basis, &cp, y), x)?;
                    let co = basis.ext_coeffs(x)?;
                    let (p, dp, q, dq) = (co.p, co.dp, co.q, co.dq);
                    let got = if parity == 0 {
                        // delta* delta f, with extended coefficients
                        let g = p * fx.d(1) + q * fx.value();
                        let dg = dp * fx.d(1) + p * fx.d(2) + dq * fx.value() + q * fx.d(1);
                        -p * dg + (q - p * co.lw1 - dp) * g
                    } else {
                        // delta delta* f
                        let g = -p * fx.d(1) + (q - p * co.lw1 - dp) * fx.value();
                        let dg = -dp * fx.d(1) - p * fx.d(2)
                            + (dq - dp * co.lw1 - p * co.lw2 - co.ddp) * fx.value()
                            + (q - p * co.lw1 - dp) * fx.d(1);
                        p * dg + q * g
                    };
                    defect = defect.max((l - (fam.a() * fx.value() + got)).abs());
                }
            }
        }
        suite.record("parity_reduction", name, 1, TOL_PARITY_REDUCTION, started, defect);
    }

    // orthonormality of the extended system on X_SYM
    let started = Instant::now();
    let live = live_indices(&fam, n_max);
    let mut defect: f64 = 0.0;
    for &n in &live {
        for &m in &live {
            let f = GridFunction::new(grid, t.phi_on_nodes(n).to_vec())?;
            let g = GridFunction::new(grid, t.phi_on_nodes(m).to_vec())?;
            let ip = grid.inner_product(&f, &g)?;
            let expect = if n == m { 1.0 } else { 0.0 };
            defect = defect.max((ip - expect).abs());
        }
    }
    suite.record("extended_orthonormality", name, 1, TOL_EXT_ORTHONORMALITY, started, defect);

    if !fam.is_augmented() {
        // orthonormality of the complex system
        let started = Instant::now();
        let k_max = (n_max / 2) as i64;
        let mut defect: f64 = 0.0;
        for n in -k_max..=k_max {
            for m in -k_max..=k_max {
                let mut ip_re = 0.0;
                let mut ip_im = 0.0;
                for (q, &x) in grid.rule().nodes().iter().enumerate() {
                    let w = grid.rule().weights()[q];
                    let pn = basis.eval_psi(n, x)?;
                    let pm = basis.eval_psi(m, x)?;
                    let prod = pn * pm.conj();
                    ip_re += w * prod.re;
                    ip_im += w * prod.im;
                }
                let expect = if n == m { 1.0 } else { 0.0 };
                defect = defect.max((ip_re - expect).abs()).max(ip_im.abs());
            }
        }
        suite.record("complex_orthonormality", name, 1, TOL_EXT_ORTHONORMALITY, started, defect);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// tensor checks
// ---------------------------------------------------------------------------

fn tensor_checks(suite: &mut Suite, fam: &FamilySpec, dim: usize) {
    let name = fam.kind().name();
    let n_max = if dim >= 3 { suite.cfg.n_max.min(6) } else { suite.cfg.n_max };

    let started = Instant::now();
    let table = LevelTable::build(fam, dim, n_max);
    let total = (n_max + 1).pow(dim as u32);
    let mut seen = vec![0usize; total];
    let mut violations = 0usize;
    for m in 0..table.len() {
        if m + 1 < table.len() && !(table.levels()[m] < table.levels()[m + 1]) {
            violations += 1;
        }
        for &flat in table.group(m).unwrap() {
            seen[flat] += 1;
        }
    }
    violations += seen.iter().filter(|&&s| s != 1).count();
    suite.record("level_partition", name, dim, 0.0, started, violations as f64);

    // the ladder move n_j -> n_j - (-1)^{n_j} preserves lambda exactly
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for n in box_indices(dim, n_max) {
        let lam = crate::index::lambda_multi(fam, &n);
        for j in 0..dim {
            if n[j] == 0 {
                continue;
            }
            let mut m = n.clone();
            m[j] = if n[j] % 2 == 0 { n[j] - 1 } else { n[j] + 1 };
            let lam2 = crate::index::lambda_multi(fam, &m);
            defect = defect.max((lam - lam2).abs() / lam.abs().max(1.0));
        }
    }
    suite.record("ladder_level_invariance", name, dim, 1e-12, started, defect);
}

// ---------------------------------------------------------------------------
// operator checks
// ---------------------------------------------------------------------------

const TOL_CONTRACTION: f64 = 1e-12;
const TOL_CLOSED_FORM: f64 = 1e-13;
const TOL_CR: f64 = 1e-12;
const TOL_SQUARE_SUM: f64 = 1e-12;
const TOL_SEMIGROUP: f64 = 1e-14;
const TOL_PROJECTION: f64 = 1e-13;
const TOL_COMPLEX_PICTURE: f64 = 1e-12;
const TOL_PROJECTED_DERIV: f64 = 1e-12;

fn operator_checks(suite: &mut Suite, basis: &SymmetrizedBasis, dim: usize) -> Result<()> {
    let fam = *basis.family();
    let name = fam.kind().name();
    // keep multi-axis boxes moderate
    let n_max = match dim {
        1 => suite.cfg.n_max,
        2 => suite.cfg.n_max,
        _ => suite.cfg.n_max.min(6),
    };
    let engine = OperatorEngine::new(*basis, dim, n_max);
    let mut rng = ChaCha8Rng::seed_from_u64(suite.cfg.seed ^ 0x0b5e55ed);

    // contraction of R^l and of the square-function map
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for _ in 0..20 {
        let f = random_vector(&mut rng, &fam, dim, n_max, n_max);
        for order in 1..=4usize {
            for l in OperatorEngine::orders(dim, order) {
                let r = engine.riesz(&l, &f)?;
                defect = defect.max(r.norm() - f.norm());
            }
        }
        for order in 1..=3usize {
            defect = defect.max(engine.riesz_norm_map(order, &f)? - f.norm());
        }
    }
    suite.record("riesz_contraction", name, dim, TOL_CONTRACTION, started, defect.max(0.0));

    // iterated ladder against the closed forms, basis vectors up to index 6
    if dim <= 2 {
        let started = Instant::now();
        let defect = closed_form_defect(&engine, n_max)?;
        suite.record("riesz_closed_form", name, dim, TOL_CLOSED_FORM, started, defect);
    }

    // Cauchy-Riemann system on basis vectors with ladder headroom
    let started = Instant::now();
    let top = n_max.saturating_sub(3);
    let mut defect: f64 = 0.0;
    for &t in &suite.cfg.t_values {
        for n in box_indices(dim, top) {
            let e = engine.basis_vector(&n);
            // (i) mixed derivatives commute through U_t
            for i in 0..dim {
                for j in (i + 1)..dim {
                    let lhs = engine.apply_dj(i, &engine.conjugate_poisson(j, t, &e)?)?;
                    let rhs = engine.apply_dj(j, &engine.conjugate_poisson(i, t, &e)?)?;
                    defect = defect.max(lhs.max_abs_diff(&rhs)?);
                }
            }
            // (ii) D_j P_t = -d/dt U_t^j
            for j in 0..dim {
                let lhs = engine.apply_dj(j, &engine.poisson(t, &e)?)?;
                let mut l = vec![0usize; dim];
                l[j] = 1;
                let rhs = engine.poisson_dt(t, &engine.riesz(&l, &e)?)?.scale(-1.0);
                defect = defect.max(lhs.max_abs_diff(&rhs)?);
            }
            // (iii) sum_j D_j U_t^j = d/dt P_t (f - A L^{-1} Pi_0 f)
            let mut lhs = engine.zeros();
            for j in 0..dim {
                lhs = lhs.add(&engine.apply_dj(j, &engine.conjugate_poisson(j, t, &e)?)?)?;
            }
            let corrected = e.sub(&engine.frac_power(-1.0, &e)?.scale(engine.big_a()))?;
            let rhs = engine.poisson_dt(t, &corrected)?;
            defect = defect.max(lhs.max_abs_diff(&rhs)?);
        }
    }
    suite.record("cauchy_riemann", name, dim, TOL_CR, started, defect);

    // harmonicity: the second time difference of P_t converges to L P_t at
    // second order
    let started = Instant::now();
    let mut min_order = f64::INFINITY;
    let t0 = 0.8;
    for n in box_indices(dim, top.min(4)) {
        let lam = engine.lambda(&n);
        if lam == 0.0 {
            continue;
        }
        let g = |t: f64| (-t * lam.sqrt()).exp();
        let err = |h: f64| ((g(t0 + h) - 2.0 * g(t0) + g(t0 - h)) / (h * h) - lam * g(t0)).abs();
        let (e1, e2) = (err(0.02), err(0.01));
        if e1 > 1e-12 && e2 > 1e-13 {
            min_order = min_order.min((e1 / e2).log2());
        }
    }
    let defect = if min_order.is_finite() { (1.9 - min_order).max(0.0) } else { 0.0 };
    suite.record("harmonicity_order", name, dim, 0.0, started, defect);

    // sum of squared Riesz transforms
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for _ in 0..10 {
        let f = engine.pi0(&random_vector(&mut rng, &fam, dim, n_max, n_max))?;
        let lhs = engine.riesz_square_sum(&f)?;
        let rhs = engine.frac_power(-1.0, &f)?.scale(engine.big_a()).sub(&f)?;
        defect = defect.max(lhs.max_abs_diff(&rhs)?);
    }
    suite.record("riesz_square_sum", name, dim, TOL_SQUARE_SUM, started, defect);

    // semigroup law
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for _ in 0..10 {
        let f = random_vector(&mut rng, &fam, dim, n_max, n_max);
        let (t1, t2) = (0.3 + rng.gen::<f64>(), 0.2 + rng.gen::<f64>());
        let a = engine.poisson(t1, &engine.poisson(t2, &f)?)?;
        let b = engine.poisson(t1 + t2, &f)?;
        defect = defect.max(a.max_abs_diff(&b)?);
    }
    suite.record("semigroup_law", name, dim, TOL_SEMIGROUP, started, defect);

    // projection laws
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for _ in 0..5 {
        let f = random_vector(&mut rng, &fam, dim, n_max, n_max);
        let p = engine.pi0(&f)?;
        defect = defect.max(engine.pi0(&p)?.max_abs_diff(&p)?);
        let mut total = engine.zeros();
        for m in 0..engine.levels().len() {
            let pm = engine.project_level(m, &f)?;
            defect = defect.max(engine.project_level(m, &pm)?.max_abs_diff(&pm)?);
            total = total.add(&pm)?;
        }
        defect = defect.max(total.max_abs_diff(&f)?);
    }
    suite.record("projection_laws", name, dim, TOL_PROJECTION, started, defect);

    // projected higher-order derivatives on the even sub-basis
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for n in box_indices(dim, top) {
        if n.iter().any(|&ni| ni % 2 == 1) {
            continue;
        }
        let e = engine.basis_vector(&n);
        for j in 0..dim {
            let mut orders = vec![0usize; dim];
            orders[j] = 1;
            let d1 = engine.projected_derivative(&orders, &e)?;
            let lad = engine.apply_dj(j, &e)?;
            defect = defect.max(d1.max_abs_diff(&lad)?);
            orders[j] = 2;
            let d2 = engine.projected_derivative(&orders, &e)?;
            let expect = e.scale(-fam.excitation(angle_index(n[j])));
            defect = defect.max(d2.max_abs_diff(&expect)?);
        }
    }
    suite.record("projected_derivative", name, dim, TOL_PROJECTED_DERIV, started, defect);

    // complex picture equivalence (one-dimensional, needs an even box top)
    if dim == 1 && n_max % 2 == 0 {
        let started = Instant::now();
        let mut defect: f64 = 0.0;
        for _ in 0..10 {
            let f = random_vector(&mut rng, &fam, 1, n_max, n_max);
            let psi = phi_to_psi(&f)?;

            let r_phi = engine.riesz(&[1], &f)?;
            let (r_via_psi, res) = psi_to_phi(&engine.riesz_psi(&psi)?);
            defect = defect.max(res).max(r_phi.max_abs_diff(&r_via_psi)?);

            for &t in &suite.cfg.t_values {
                let p_phi = engine.poisson(t, &f)?;
                let (p_via_psi, res) = psi_to_phi(&engine.poisson_psi(t, &psi)?);
                defect = defect.max(res).max(p_phi.max_abs_diff(&p_via_psi)?);
            }
        }
        suite.record("complex_picture", name, dim, TOL_COMPLEX_PICTURE, started, defect);
    }
    Ok(())
}

/// Per-axis closed form of `D^l Phi_n` (even order: diagonal with sign
/// `(-1)^{l/2}`; odd order: one ladder step with sign
/// `(-1)^{n_j + 1 + (l-1)/2}`), tensorized over axes. Returns `None` when the
/// image vanishes or leaves the box.
fn closed_form_d(
    engine: &OperatorEngine,
    l: &[usize],
    n: &[usize],
) -> Option<(Vec<usize>, f64)> {
    let fam = engine.family();
    let mut target = n.to_vec();
    let mut coeff = 1.0;
    for j in 0..l.len() {
        let lj = l[j];
        if lj == 0 {
            continue;
        }
        let exc = fam.excitation(angle_index(n[j]));
        let amp = exc.powf(lj as f64 / 2.0);
        if amp == 0.0 {
            return None;
        }
        if lj % 2 == 0 {
            coeff *= amp * if (lj / 2) % 2 == 0 { 1.0 } else { -1.0 };
        } else {
            let exp = n[j] + 1 + (lj - 1) / 2;
            coeff *= amp * if exp % 2 == 0 { 1.0 } else { -1.0 };
            if n[j] % 2 == 0 {
                target[j] = n[j] - 1; // n_j >= 1 here since exc > 0
            } else {
                target[j] = n[j] + 1;
                if target[j] > engine.n_max() {
                    return None;
                }
            }
        }
    }
    Some((target, coeff))
}

fn closed_form_defect(engine: &OperatorEngine, n_max: usize) -> Result<f64> {
    let dim = engine.dim();
    let fam = engine.family();
    let top = n_max.min(6);
    let mut defect: f64 = 0.0;
    for order in 1..=3usize {
        for l in OperatorEngine::orders(dim, order) {
            for n in box_indices(dim, top) {
                let e = engine.basis_vector(&n);
                let d = engine.apply_d_multi(&l, &e)?;
                let mut expect = engine.zeros();
                if let Some((target, coeff)) = closed_form_d(engine, &l, &n) {
                    expect.set(&target, coeff);

                    // product-form amplitude |D^l Phi_n| = prod (lambda - a)^{l_j/2}
                    let amp: f64 = (0..dim)
                        .map(|j| fam.excitation(angle_index(n[j])).powf(l[j] as f64 / 2.0))
                        .product();
                    defect = defect.max((coeff.abs() - amp).abs());

                    // the tensorized sign exponent, when integral, matches
                    // |l|/2 + sum_{odd l_j} (n_j + 3/2) mod 2
                    let odd_axes = l.iter().filter(|&&lj| lj % 2 == 1).count();
                    if odd_axes % 2 == 0 {
                        let mut odd_n_sum = 0usize;
                        for (j, &lj) in l.iter().enumerate() {
                            if lj % 2 == 1 {
                                odd_n_sum += n[j];
                            }
                        }
                        let twice = l.iter().sum::<usize>() + 2 * odd_n_sum + 3 * odd_axes;
                        debug_assert_eq!(twice % 2, 0);
                        let sign = if (twice / 2) % 2 == 0 { 1.0 } else { -1.0 };
                        defect = defect.max((coeff.signum() - sign).abs());
                    }
                }
                defect = defect.max(d.max_abs_diff(&expect)?);
            }
        }
    }
    Ok(defect)
}

// ---------------------------------------------------------------------------
// quadrature checks (dimension 1)
// ---------------------------------------------------------------------------

const TOL_MASS: f64 = 1e-14;
const TOL_PHI0_NORM: f64 = 1e-12;
const TOL_PARSEVAL: f64 = 1e-9;

fn quadrature_checks(
    suite: &mut Suite,
    fam: &FamilySpec,
    basis: &SymmetrizedBasis,
    t: &GridTransform,
) -> Result<()> {
    let name = fam.kind().name();
    let grid = t.grid();
    let n_max = suite.cfg.n_max;
    let mut rng = ChaCha8Rng::seed_from_u64(suite.cfg.seed ^ 0x9aad);

    // total mass, where the rule integrates the measure itself
    let mass = match fam.kind() {
        FamilyKind::Trigonometric | FamilyKind::SineAugmented | FamilyKind::JacobiTrig { .. } => {
            Some(2.0)
        }
        FamilyKind::OrnsteinUhlenbeckEven => Some(std::f64::consts::PI.sqrt()),
        _ => None,
    };
    if let Some(expect) = mass {
        let started = Instant::now();
        let total: f64 = grid.rule().weights().iter().sum();
        suite.record("quad_mass", name, 1, TOL_MASS, started, (total - expect).abs());
    }

    if !fam.is_augmented() {
        let started = Instant::now();
        let f = GridFunction::new(grid, t.phi_on_nodes(0).to_vec())?;
        let ip = grid.inner_product(&f, &f)?;
        suite.record("quad_phi0_norm", name, 1, TOL_PHI0_NORM, started, (ip - 1.0).abs());
    }

    // Parseval on the span
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for _ in 0..5 {
        let c = random_vector(&mut rng, fam, 1, n_max, n_max);
        let f = t.synthesize(&c)?;
        let norm2 = grid.inner_product(&f, &f)?;
        let back = t.analyze(&f)?;
        let sum2: f64 = back.data().iter().map(|v| v * v).sum();
        defect = defect
            .max((norm2 - sum2).abs())
            .max(back.max_abs_diff(&c)?);
    }
    suite.record("quad_parseval", name, 1, TOL_PARSEVAL, started, defect);

    // orthonormality defect does not grow as the rule doubles
    let started = Instant::now();
    let d1 = orthonormality_defect(fam, basis, grid.rule().size(), n_max)?;
    let d2 = orthonormality_defect(fam, basis, 2 * grid.rule().size(), n_max)?;
    let defect = (d2 - d1 - 1e-13).max(0.0);
    suite.record("quad_rule_convergence", name, 1, 0.0, started, defect);
    Ok(())
}

fn orthonormality_defect(
    fam: &FamilySpec,
    basis: &SymmetrizedBasis,
    size: usize,
    n_max: usize,
) -> Result<f64> {
    let rule = QuadratureRule::build(fam, size)?;
    let grid = Grid::new(rule, 1);
    let t = GridTransform::new(*basis, grid, n_max)?;
    let live = live_indices(fam, n_max);
    let mut defect: f64 = 0.0;
    for &n in &live {
        for &m in &live {
            let f = GridFunction::new(t.grid(), t.phi_on_nodes(n).to_vec())?;
            let g = GridFunction::new(t.grid(), t.phi_on_nodes(m).to_vec())?;
            let ip = t.grid().inner_product(&f, &g)?;
            let expect = if n == m { 1.0 } else { 0.0 };
            defect = defect.max((ip - expect).abs());
        }
    }
    Ok(defect)
}

// ---------------------------------------------------------------------------
// augmented convention checks
// ---------------------------------------------------------------------------

const TOL_AUGMENTED_ANALYZE: f64 = 1e-10;

fn augmented_checks(suite: &mut Suite, t: &GridTransform) -> Result<()> {
    let fam = *t.basis().family();
    let name = fam.kind().name();

    // phi_0 and Phi_0 vanish identically
    let started = Instant::now();
    let mut defect: f64 = 0.0;
    for &x in t.grid().rule().nodes() {
        defect = defect.max(t.basis().eval_phi_ext(0, x)?.abs());
        if x > 0.0 {
            defect = defect.max(fam.eval_phi(0, x)?.abs());
        }
    }
    suite.record("augmented_phi0", name, 1, 0.0, started, defect);

    // analyze of even functions is the zero vector (the sine-generated
    // extended system spans odd functions only)
    let started = Instant::now();
    let even_functions: [fn(f64) -> f64; 3] = [
        |x| x.cos(),
        |x| (2.0 * x).cos() - 0.25,
        |x| x.sin().abs(),
    ];
    let mut defect: f64 = 0.0;
    for f in even_functions {
        let g = t.grid().sample(|x| f(x[0]));
        let c = t.analyze(&g)?;
        let max = c.data().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        defect = defect.max(max);
    }
    suite.record("augmented_even_analyze", name, 1, TOL_AUGMENTED_ANALYZE, started, defect);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes_for_trig() {
        let cfg = VerifyConfig {
            families: vec![FamilyKind::Trigonometric],
            dims: vec![1, 2],
            n_max: 12,
            ..VerifyConfig::default()
        };
        let reports = run_suite(&cfg).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(
                r.pass,
                "{} ({} d={}): defect {} > tol {}",
                r.check, r.family, r.dim, r.max_defect, r.tolerance
            );
        }
    }

    #[test]
    fn mutated_ladder_fails_skew_symmetry() {
        let cfg = VerifyConfig {
            families: vec![FamilyKind::Trigonometric],
            dims: vec![1],
            n_max: 12,
            mutation: Mutation::FlipLadderSign,
            ..VerifyConfig::default()
        };
        let reports = run_suite(&cfg).unwrap();
        let skew = reports.iter().find(|r| r.check == "skew_symmetry").unwrap();
        assert!(!skew.pass, "corrupted ladder must break skew-symmetry");
    }

    #[test]
    fn tighten_rejects_loosening() {
        let cfg = VerifyConfig { tighten: 2.0, ..VerifyConfig::default() };
        assert!(run_suite(&cfg).is_err());
    }
}
