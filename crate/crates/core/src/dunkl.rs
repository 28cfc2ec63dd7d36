//! Dunkl-type operators for A₂ with trilogarithmic weights.
//!
//! ```text
//! Ξ^(-1)(ξ) = ∂_ξ + Σ_{a∈U} k_a (a, ξ) ŝ_a
//! Ξ^(i)(ξ)  = ∂_ξ + Σ_{a∈U} k_a (a, ξ) f^(3-i,i)((z, a), τ) ŝ_a,   i = 0..3
//! ```
//!
//! with `U = {α, β, -(α+β)}` and `(ŝ_a F)(z) = F(s_a z)`. The operators act on
//! polynomials in `(z₁, z₂)`, so every derivative in a nested application is
//! exact and only the weights carry rounding error.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{Map, Value};

use crate::identities::{draw_with, plan_config, RootSystem2D, SamplePlan, MAX_RESAMPLE_RATE};
use crate::par::Exec;
use crate::report::{json_f64, Expectation, IdentityRecord, ResidualReport, SampleRow};
use crate::special::{HalfPlanePoint, SeriesPolicy};
use crate::trilog::{f_deriv_any, POLE_GUARD};
use crate::{Complex64, Error, Result};

pub type Vec2 = [Complex64; 2];
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A polynomial `Σ c_ij z₁^i z₂^j` of total degree at most `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFunction {
    degree: u32,
    coeffs: BTreeMap<(u32, u32), Complex64>,
}

impl PolyFunction {
    pub fn new(degree: u32, coeffs: impl IntoIterator<Item = ((u32, u32), Complex64)>) -> Result<Self> {
        let mut out = Self {
            degree,
            coeffs: BTreeMap::new(),
        };
        for ((i, j), c) in coeffs {
            if i + j > degree {
                return Err(Error::Domain(format!(
                    "monomial z1^{i} z2^{j} exceeds degree {degree}"
                )));
            }
            out.add(i, j, c);
        }
        Ok(out)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, [((0, 0), c)]).expect("degree 0 monomial")
    }

    /// Every monomial of total degree `≤ degree` with coefficients uniform in
    /// the unit square.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: u32) -> Self {
        let mut coeffs = Vec::new();
        for i in 0..=degree {
            for j in 0..=degree - i {
                coeffs.push(((i, j), Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))));
            }
        }
        Self::new(degree, coeffs).expect("monomials within degree")
    }

    fn add(&mut self, i: u32, j: u32, c: Complex64) {
        *self.coeffs.entry((i, j)).or_insert(ZERO) += c;
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), Complex64> {
        &self.coeffs
    }

    pub fn eval(&self, z: &Vec2) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&(i, j), &c)| c * z[0].powu(i) * z[1].powu(j))
            .sum()
    }

    pub fn gradient(&self, z: &Vec2) -> Vec2 {
        let mut g = [ZERO; 2];
        for (&(i, j), &c) in &self.coeffs {
            if i > 0 {
                g[0] += c * f64::from(i) * z[0].powu(i - 1) * z[1].powu(j);
            }
            if j > 0 {
                g[1] += c * f64::from(j) * z[0].powu(i) * z[1].powu(j - 1);
            }
        }
        g
    }

    pub fn hessian(&self, z: &Vec2) -> Mat2 {
        let mut h = [[ZERO; 2]; 2];
        for (&(i, j), &c) in &self.coeffs {
            let (fi, fj) = (f64::from(i), f64::from(j));
            if i > 1 {
                h[0][0] += c * fi * (fi - 1.0) * z[0].powu(i - 2) * z[1].powu(j);
            }
            if j > 1 {
                h[1][1] += c * fj * (fj - 1.0) * z[0].powu(i) * z[1].powu(j - 2);
            }
            if i > 0 && j > 0 {
                h[0][1] += c * fi * fj * z[0].powu(i - 1) * z[1].powu(j - 1);
            }
        }
        h[1][0] = h[0][1];
        h
    }

    /// `∂_d F` as a polynomial.
    pub fn directional(&self, d: &Vec2) -> Self {
        let mut out = Self {
            degree: self.degree.saturating_sub(1),
            coeffs: BTreeMap::new(),
        };
        for (&(i, j), &c) in &self.coeffs {
            if i > 0 {
                out.add(i - 1, j, c * f64::from(i) * d[0]);
            }
            if j > 0 {
                out.add(i, j - 1, c * f64::from(j) * d[1]);
            }
        }
        out
    }

    /// `z ↦ F(M z)` as a polynomial of the same degree.
    pub fn compose_linear(&self, m: &Mat2) -> Self {
        let row = |r: usize| {
            let mut p = BTreeMap::new();
            p.insert((1, 0), m[r][0]);
            p.insert((0, 1), m[r][1]);
            p
        };
        let (x, y) = (row(0), row(1));
        let mut out = Self {
            degree: self.degree,
            coeffs: BTreeMap::new(),
        };
        for (&(i, j), &c) in &self.coeffs {
            let mut term = BTreeMap::from([((0, 0), c)]);
            for _ in 0..i {
                term = poly_mul(&term, &x);
            }
            for _ in 0..j {
                term = poly_mul(&term, &y);
            }
            for ((a, b), v) in term {
                out.add(a, b, v);
            }
        }
        out
    }
}

fn poly_mul(
    p: &BTreeMap<(u32, u32), Complex64>,
    q: &BTreeMap<(u32, u32), Complex64>,
) -> BTreeMap<(u32, u32), Complex64> {
    let mut out = BTreeMap::new();
    for (&(a, b), &u) in p {
        for (&(c, d), &v) in q {
            *out.entry((a + c, b + d)).or_insert(ZERO) += u * v;
        }
    }
    out
}

fn dot(u: &Vec2, v: &Vec2) -> Complex64 {
    u[0] * v[0] + u[1] * v[1]
}

fn apply(m: &Mat2, v: &Vec2) -> Vec2 {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// `s_a = I - 2 a aᵀ / (a, a)`.
pub fn reflection_matrix(a: &Vec2) -> Result<Mat2> {
    let aa = dot(a, a);
    if aa.norm() < 1e-300 {
        return Err(Error::Domain("reflection in an isotropic or zero vector".into()));
    }
    let mut m = [[ZERO; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = if i == j { ONE } else { ZERO } - 2.0 * a[i] * a[j] / aa;
        }
    }
    Ok(m)
}

/// `s_a(z) = z - 2 (a, z)/(a, a) a`.
pub fn reflect(a: &Vec2, z: &Vec2) -> Result<Vec2> {
    Ok(apply(&reflection_matrix(a)?, z))
}

/// `U = {α, β, -(α+β)}` from the A₂ simple roots.
pub fn roots() -> [Vec2; 3] {
    let (a, b) = RootSystem2D::A2.simple_roots();
    let c = |x: f64| Complex64::new(x, 0.0);
    [
        [c(a[0]), c(a[1])],
        [c(b[0]), c(b[1])],
        [c(-a[0] - b[0]), c(-a[1] - b[1])],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// `f^(3-i,i)((z, a), τ)`.
    Elliptic,
    /// `1/(z, a)` for every `i ≥ 0`.
    Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DunklConfig {
    /// Coupling per root of `U`, in order.
    pub k: [Complex64; 3],
    pub tau: HalfPlanePoint,
    pub mode: WeightMode,
    pub policy: SeriesPolicy,
}

impl DunklConfig {
    /// Unit couplings, elliptic weights.
    pub fn new(tau: HalfPlanePoint) -> Self {
        Self {
            k: [ONE; 3],
            tau,
            mode: WeightMode::Elliptic,
            policy: SeriesPolicy::default(),
        }
    }

    pub fn with_mode(mut self, mode: WeightMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_coupling(mut self, k: Complex64) -> Self {
        self.k = [k; 3];
        self
    }

    pub fn with_policy(mut self, policy: SeriesPolicy) -> Self {
        self.policy = policy;
        self
    }
}

fn check_index(i: i32) -> Result<()> {
    if !(-1..=3).contains(&i) {
        return Err(Error::OutOfRange {
            what: "operator index",
            index: i64::from(i),
            min: -1,
            max: 3,
        });
    }
    Ok(())
}

/// Weight of `Ξ^(i)` at `t = (z, a)` and its `t`-derivative.
fn weight(i: i32, t: Complex64, cfg: &DunklConfig) -> Result<(Complex64, Complex64)> {
    if i < 0 {
        return Ok((ONE, ZERO));
    }
    match cfg.mode {
        WeightMode::Rational => {
            if t.norm() < POLE_GUARD {
                return Err(Error::NearLattice { z: t, margin: POLE_GUARD });
            }
            Ok((1.0 / t, -1.0 / (t * t)))
        }
        WeightMode::Elliptic => {
            let m = i as usize;
            let v = f_deriv_any(3, t, &cfg.tau, &cfg.policy)?[m];
            let dv = f_deriv_any(4, t, &cfg.tau, &cfg.policy)?[m];
            Ok((v, dv))
        }
    }
}

/// `Σ_a k_a (a, ξ) w_a(z) F(s_a z)`, the reflection part of `Ξ^(i)(ξ) F`.
pub fn reflection_part(i: i32, xi: &Vec2, f: &PolyFunction, z: &Vec2, cfg: &DunklConfig) -> Result<Complex64> {
    check_index(i)?;
    let mut s = ZERO;
    for (a, k) in roots().iter().zip(cfg.k) {
        let (w, _) = weight(i, dot(z, a), cfg)?;
        s += k * dot(a, xi) * w * f.eval(&reflect(a, z)?);
    }
    Ok(s)
}

/// `(Ξ^(i)(ξ) F)(z)`.
pub fn apply_xi(i: i32, xi: &Vec2, f: &PolyFunction, z: &Vec2, cfg: &DunklConfig) -> Result<Complex64> {
    Ok(dot(&f.gradient(z), xi) + reflection_part(i, xi, f, z, cfg)?)
}

/// `(Ξ^(outer)(ξ) Ξ^(inner)(η) F)(z)`.
///
/// The derivative of the inner result is taken by the product rule, with the
/// weight derivative supplied analytically.
pub fn apply_nested(
    outer: i32,
    xi: &Vec2,
    inner: i32,
    eta: &Vec2,
    f: &PolyFunction,
    z: &Vec2,
    cfg: &DunklConfig,
) -> Result<Complex64> {
    check_index(outer)?;
    check_index(inner)?;
    let roots = roots();
    let refl: Vec<Mat2> = roots.iter().map(reflection_matrix).collect::<Result<_>>()?;

    // ∂_ξ (Ξ^(inner)(η) F) at z.
    let h = f.hessian(z);
    let mut total = dot(xi, &apply(&h, eta));
    for ((b, k), s) in roots.iter().zip(cfg.k).zip(&refl) {
        let (w, dw) = weight(inner, dot(z, b), cfg)?;
        let sz = apply(s, z);
        total += k * dot(b, eta) * (dot(b, xi) * dw * f.eval(&sz) + w * dot(&f.gradient(&sz), &apply(s, xi)));
    }

    for ((a, k), s) in roots.iter().zip(cfg.k).zip(&refl) {
        let (w, _) = weight(outer, dot(z, a), cfg)?;
        let p = apply(s, z);
        let g = apply_xi(inner, eta, f, &p, cfg)?;
        total += k * dot(a, xi) * w * g;
    }
    Ok(total)
}

/// `[Ξ^(i)(ξ), Ξ^(j)(η)] F` at `z`.
pub fn commutator(
    i: i32,
    xi: &Vec2,
    j: i32,
    eta: &Vec2,
    f: &PolyFunction,
    z: &Vec2,
    cfg: &DunklConfig,
) -> Result<Complex64> {
    Ok(apply_nested(i, xi, j, eta, f, z, cfg)? - apply_nested(j, eta, i, xi, f, z, cfg)?)
}

/// `F^(a,b)(ξ, η) = [Ξ^(a)(ξ), Ξ^(b)(η)] + [Ξ^(b)(ξ), Ξ^(a)(η)]` applied to `F` at `z`.
pub fn commutator_f(
    a: i32,
    b: i32,
    xi: &Vec2,
    eta: &Vec2,
    f: &PolyFunction,
    z: &Vec2,
    cfg: &DunklConfig,
) -> Result<Complex64> {
    Ok(commutator(a, xi, b, eta, f, z, cfg)? + commutator(b, xi, a, eta, f, z, cfg)?)
}

/// `g_{μν} [Ξ^(μ)(ξ), Ξ^(ν)(η)]` over `μ, ν ∈ {-1, 0, 1}` with `g = du dτ + 2 dz²`.
pub fn metric_contraction(xi: &Vec2, eta: &Vec2, f: &PolyFunction, z: &Vec2, cfg: &DunklConfig) -> Result<Complex64> {
    Ok(commutator(-1, xi, 1, eta, f, z, cfg)?
        + commutator(1, xi, -1, eta, f, z, cfg)?
        + 2.0 * commutator(0, xi, 0, eta, f, z, cfg)?)
}

/// `|R^(1) + R^(-1)/12|` at `τ = T i`, where `R^(i)` is the reflection part of
/// `Ξ^(i)(ξ) F`. The derivative parts are identical and are left out.
pub fn trig_limit_residual(
    big_t: f64,
    xi: &Vec2,
    f: &PolyFunction,
    z: &Vec2,
    k: Complex64,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let tau = HalfPlanePoint::new(Complex64::new(0.0, big_t))?;
    let cfg = DunklConfig::new(tau).with_coupling(k).with_policy(*policy);
    Ok(reflection_part(1, xi, f, z, &cfg)? + reflection_part(-1, xi, f, z, &cfg)? / 12.0)
}

/// Largest trigonometric-limit residual over `plan.count` random degree-2
/// polynomials, points and directions at `τ = T i`.
pub fn trig_limit_check(big_t: f64, plan: &SamplePlan, policy: &SeriesPolicy) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for index in 0..plan.count {
        let (r, _) = draw_with(plan, TRIG_STREAM, index, |rng| {
            let z = [plan.sample_z(rng), plan.sample_z(rng)];
            let xi = random_direction(rng);
            let f = PolyFunction::random(rng, 2);
            trig_limit_residual(big_t, &xi, &f, &z, ONE, policy).map(Some)
        })?;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

const TRIG_STREAM: u64 = 1000;

/// `T` values scanned for the trigonometric limit.
pub const TRIG_SCAN: [f64; 5] = [1.0, 2.0, 5.0, 10.0, 20.0];

fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Vec2 {
    let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    [c(), c()]
}

/// Thresholds for [`run_dunkl`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DunklThresholds {
    /// Commutator relations, elliptic and rational.
    pub tol: f64,
    /// `F^(0,1)` must exceed this somewhere.
    pub control: f64,
    pub trig_tol: f64,
    /// `Im τ` for the trigonometric check.
    pub trig_t: f64,
}

impl Default for DunklThresholds {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            control: 1e-4,
            trig_tol: 1e-10,
            trig_t: 20.0,
        }
    }
}

/// Identity ids produced by [`run_dunkl`], in report order.
pub const DUNKL_IDENTITIES: [&str; 5] = [
    "dunkl_f0m1",
    "dunkl_f00_plus_f1m1",
    "dunkl_f01_control",
    "dunkl_rational_commutator",
    "dunkl_trig_limit",
];

type Config = (HalfPlanePoint, Vec2, Vec2, Vec2, PolyFunction);

fn draw_config(plan: &SamplePlan, rng: &mut crate::identities::SampleRng, degree: u32) -> Option<Config> {
    let tau = plan.sample_tau(rng);
    let z = [plan.sample_z(rng), plan.sample_z(rng)];
    let pairings: Vec<Complex64> = roots().iter().map(|a| dot(&z, a)).collect();
    if !plan.admissible(&tau, &pairings) {
        return None;
    }
    let xi = random_direction(rng);
    let eta = random_direction(rng);
    Some((tau, z, xi, eta, PolyFunction::random(rng, degree)))
}

/// Evaluates the commutator relations on `plan.count` random configurations of
/// `(τ, z, ξ, η, F)` with `F` a random cubic, the `F^(0,1)` control, the
/// rational limit and the trigonometric limit at `τ = T i`.
pub fn run_dunkl(
    plan: &SamplePlan,
    thresholds: &DunklThresholds,
    policy: &SeriesPolicy,
    exec: Exec,
) -> Result<ResidualReport> {
    plan.validate()?;
    for (name, v) in [
        ("tolerance", thresholds.tol),
        ("control threshold", thresholds.control),
        ("trig tolerance", thresholds.trig_tol),
        ("trig-limit T", thresholds.trig_t),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("{name} must be positive, got {v}")));
        }
    }

    type Eval = fn(&Config, &SeriesPolicy) -> Result<Complex64>;
    let cases: [(&str, Expectation, f64, Eval); 4] = [
        ("dunkl_f0m1", Expectation::Vanishing, thresholds.tol, |c, p| {
            let (tau, z, xi, eta, f) = c;
            commutator_f(0, -1, xi, eta, f, z, &DunklConfig::new(*tau).with_policy(*p))
        }),
        ("dunkl_f00_plus_f1m1", Expectation::Vanishing, thresholds.tol, |c, p| {
            let (tau, z, xi, eta, f) = c;
            let cfg = DunklConfig::new(*tau).with_policy(*p);
            Ok(commutator_f(0, 0, xi, eta, f, z, &cfg)? + commutator_f(1, -1, xi, eta, f, z, &cfg)?)
        }),
        ("dunkl_f01_control", Expectation::Nonvanishing, thresholds.control, |c, p| {
            let (tau, z, xi, eta, f) = c;
            commutator_f(0, 1, xi, eta, f, z, &DunklConfig::new(*tau).with_policy(*p))
        }),
        ("dunkl_rational_commutator", Expectation::Vanishing, thresholds.tol, |c, p| {
            let (tau, z, xi, eta, f) = c;
            let cfg = DunklConfig::new(*tau).with_policy(*p).with_mode(WeightMode::Rational);
            commutator(0, xi, 0, eta, f, z, &cfg)
        }),
    ];

    let mut report = ResidualReport::new("dunkl");
    report.config = plan_config(plan);
    report.config.insert("tol".into(), json_f64(thresholds.tol));
    report.config.insert("control_threshold".into(), json_f64(thresholds.control));
    report.config.insert("trig_tol".into(), json_f64(thresholds.trig_tol));
    report.config.insert("trig_limit_T".into(), json_f64(thresholds.trig_t));

    let results = exec.map(plan.count, |index| {
        draw_with(plan, 0, index, |rng| {
            let Some(c) = draw_config(plan, rng, 3) else {
                return Ok(None);
            };
            let residuals = cases.iter().map(|case| (case.3)(&c, policy)).collect::<Result<Vec<_>>>()?;
            Ok(Some((c, residuals)))
        })
    });
    let mut rows: Vec<Vec<SampleRow>> = vec![Vec::new(); cases.len()];
    let mut resamples = 0;
    for (index, r) in results.into_iter().enumerate() {
        let (((tau, z, xi, eta, _), residuals), rejected) = r?;
        resamples += rejected;
        for (k, residual) in residuals.into_iter().enumerate() {
            rows[k].push(SampleRow {
                index,
                tau: tau.tau(),
                point: vec![z[0], z[1], xi[0], xi[1], eta[0], eta[1]],
                residual,
            });
        }
    }
    check_rejections("dunkl", resamples, plan.count)?;
    for (case, rows) in cases.iter().zip(rows) {
        report
            .records
            .push(IdentityRecord::from_rows(case.0, case.1, case.2, rows, resamples));
    }

    let trig = exec.map(plan.count, |index| {
        draw_with(plan, TRIG_STREAM, index, |rng| {
            let z = [plan.sample_z(rng), plan.sample_z(rng)];
            let xi = random_direction(rng);
            let f = PolyFunction::random(rng, 2);
            let r = trig_limit_residual(thresholds.trig_t, &xi, &f, &z, ONE, policy)?;
            Ok(Some(SampleRow {
                index,
                tau: Complex64::new(0.0, thresholds.trig_t),
                point: vec![z[0], z[1], xi[0], xi[1]],
                residual: r,
            }))
        })
    });
    let mut trig_rows = Vec::with_capacity(plan.count);
    let mut trig_resamples = 0;
    for r in trig {
        let (row, rejected) = r?;
        trig_resamples += rejected;
        trig_rows.push(row);
    }
    check_rejections("dunkl_trig_limit", trig_resamples, plan.count)?;
    report.records.push(IdentityRecord::from_rows(
        "dunkl_trig_limit",
        Expectation::Vanishing,
        thresholds.trig_tol,
        trig_rows,
        trig_resamples,
    ));

    let mut scan = Vec::new();
    let mut previous = f64::INFINITY;
    let mut monotone = true;
    for t in TRIG_SCAN {
        let r = trig_limit_check(t, plan, policy)?;
        monotone &= r <= previous;
        previous = r;
        let mut m = Map::new();
        m.insert("T".into(), json_f64(t));
        m.insert("max_abs".into(), json_f64(r));
        scan.push(Value::Object(m));
    }
    let mut section = Map::new();
    section.insert("scan".into(), Value::Array(scan));
    section.insert("decreasing".into(), Value::Bool(monotone));
    report.sections.insert("trig_limit".into(), Value::Object(section));
    Ok(report)
}

fn check_rejections(id: &str, resamples: usize, count: usize) -> Result<()> {
    let total = resamples + count;
    if total > 0 && resamples as f64 > MAX_RESAMPLE_RATE * total as f64 {
        return Err(Error::Domain(format!("{id}: {resamples} of {total} draws rejected")));
    }
    Ok(())
}
