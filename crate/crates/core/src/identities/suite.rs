use std::f64::consts::PI;

use serde_json::Value;

use super::plan::SampleRng;
use super::rank2::pair;
use super::*;
use crate::par::Exec;
use crate::report::{json_f64, Expectation, IdentityRecord, ResidualReport, SampleRow};
use crate::special::{HalfPlanePoint, SeriesPolicy};

/// Attempts per sample before the run is abandoned.
const MAX_ATTEMPTS: usize = 64;

/// Largest tolerated fraction of rejected draws.
pub(crate) const MAX_RESAMPLE_RATE: f64 = 0.9;

type Draw = (HalfPlanePoint, Vec<Complex64>, Complex64);
type Sampler = fn(&SamplePlan, &mut SampleRng, &SeriesPolicy) -> Result<Option<Draw>>;

struct Case {
    id: &'static str,
    sampler: Sampler,
}

const CASES: &[Case] = &[
    Case { id: "fs_weierstrass", sampler: |p, r, s| triple_case(p, r, s, residual_fs_weierstrass) },
    Case { id: "fs_theta", sampler: |p, r, s| triple_case(p, r, s, residual_fs_theta) },
    Case { id: "fs_trilog", sampler: |p, r, s| triple_case(p, r, s, residual_fs_trilog) },
    Case { id: "delta", sampler: delta_case },
    Case { id: "delta_z_spread", sampler: delta_spread_case },
    Case { id: "rank2_a2", sampler: |p, r, s| rank2_case(RootSystem2D::A2, p, r, s) },
    Case { id: "rank2_b2", sampler: |p, r, s| rank2_case(RootSystem2D::B2, p, r, s) },
    Case { id: "rank2_g2", sampler: |p, r, s| rank2_case(RootSystem2D::G2, p, r, s) },
    Case { id: "a2_first", sampler: |p, r, s| pair_case(p, r, s, 3, residual_a2_first) },
    Case {
        id: "a2_first_swapped",
        sampler: |p, r, s| pair_case(p, r, s, 3, |x, y, t, pol| residual_a2_first(y, x, t, pol)),
    },
    Case { id: "a2_second", sampler: |p, r, s| pair_case(p, r, s, 3, residual_a2_second) },
    Case { id: "b2_a1", sampler: |p, r, s| pair_case(p, r, s, 4, |x, y, t, pol| residual_b2(B2Set::A1, x, y, t, pol)) },
    Case { id: "b2_a2", sampler: |p, r, s| pair_case(p, r, s, 4, |x, y, t, pol| residual_b2(B2Set::A2, x, y, t, pol)) },
    Case { id: "b2_b1", sampler: |p, r, s| pair_case(p, r, s, 4, |x, y, t, pol| residual_b2(B2Set::B1, x, y, t, pol)) },
    Case {
        id: "b2_b2_amended",
        sampler: |p, r, s| pair_case(p, r, s, 4, |x, y, t, pol| residual_b2(B2Set::B2Amended, x, y, t, pol)),
    },
    Case { id: "rational_limit", sampler: rational_case },
    Case { id: "trig_limit", sampler: trig_case },
];

/// Identity ids evaluated by [`run_suite`], in report order.
pub const SUITE_IDENTITIES: [&str; 17] = [
    "fs_weierstrass",
    "fs_theta",
    "fs_trilog",
    "delta",
    "delta_z_spread",
    "rank2_a2",
    "rank2_b2",
    "rank2_g2",
    "a2_first",
    "a2_first_swapped",
    "a2_second",
    "b2_a1",
    "b2_a2",
    "b2_b1",
    "b2_b2_amended",
    "rational_limit",
    "trig_limit",
];

/// Evaluates every identity over `plan.count` samples and compares the largest
/// residual with `tol`.
///
/// Draws that violate the pole margin are redrawn from the same per-sample
/// stream; the count is recorded per identity. A rejection rate above 90% is
/// an error. The report depends only on the arguments, not on `exec`.
pub fn run_suite(
    plan: &SamplePlan,
    tol: f64,
    policy: &SeriesPolicy,
    exec: Exec,
) -> Result<ResidualReport> {
    plan.validate()?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut report = ResidualReport::new("verify");
    report.config = plan_config(plan);
    report.config.insert("tol".into(), json_f64(tol));
    for (stream, case) in CASES.iter().enumerate() {
        let draws = exec.map(plan.count, |index| {
            draw_sample(plan, policy, stream as u64, index, case.sampler)
        });
        let mut rows = Vec::with_capacity(plan.count);
        let mut resamples = 0;
        for (index, d) in draws.into_iter().enumerate() {
            let ((tau, point, residual), rejected) = d?;
            resamples += rejected;
            rows.push(SampleRow {
                index,
                tau: tau.tau(),
                point,
                residual,
            });
        }
        let total = resamples + rows.len();
        if total > 0 && resamples as f64 > MAX_RESAMPLE_RATE * total as f64 {
            return Err(Error::Domain(format!(
                "{}: {resamples} of {total} draws rejected",
                case.id
            )));
        }
        report.records.push(IdentityRecord::from_rows(
            case.id,
            Expectation::Vanishing,
            tol,
            rows,
            resamples,
        ));
    }
    Ok(report)
}

pub(crate) fn plan_config(plan: &SamplePlan) -> std::collections::BTreeMap<String, Value> {
    let range = |r: (f64, f64)| Value::Array(vec![json_f64(r.0), json_f64(r.1)]);
    let mut c = std::collections::BTreeMap::new();
    c.insert("seed".into(), plan.seed.into());
    c.insert("samples".into(), plan.count.into());
    c.insert("tau_re".into(), range(plan.tau_re));
    c.insert("tau_im".into(), range(plan.tau_im));
    c.insert("z_re".into(), range(plan.z_re));
    c.insert("z_im".into(), range(plan.z_im));
    c.insert("pole_margin".into(), json_f64(plan.pole_margin));
    c
}

fn draw_sample(
    plan: &SamplePlan,
    policy: &SeriesPolicy,
    stream: u64,
    index: usize,
    sampler: Sampler,
) -> Result<(Draw, usize)> {
    draw_with(plan, stream, index, |rng| sampler(plan, rng, policy))
}

/// Redraws from the `(stream, index)` stream until `sampler` yields a value.
/// Pole and branch-cut errors count as rejections. Returns the value and the
/// number of rejected draws.
pub(crate) fn draw_with<T>(
    plan: &SamplePlan,
    stream: u64,
    index: usize,
    mut sampler: impl FnMut(&mut SampleRng) -> Result<Option<T>>,
) -> Result<(T, usize)> {
    let mut rng = plan.rng(stream, index);
    for attempt in 0..MAX_ATTEMPTS {
        match sampler(&mut rng) {
            Ok(Some(d)) => return Ok((d, attempt)),
            Ok(None) => {}
            Err(Error::NearLattice { .. } | Error::OnBranchCut(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::Domain(format!(
        "no admissible sample after {MAX_ATTEMPTS} attempts"
    )))
}

fn triple_case(
    plan: &SamplePlan,
    rng: &mut SampleRng,
    policy: &SeriesPolicy,
    eval: fn(&ConstrainedTriple, &HalfPlanePoint, &SeriesPolicy) -> Result<Complex64>,
) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let t = ConstrainedTriple::new(plan.sample_z(rng), plan.sample_z(rng));
    if !plan.admissible(&tau, &t.as_array()) {
        return Ok(None);
    }
    let r = eval(&t, &tau, policy)?;
    Ok(Some((tau, t.as_array().to_vec(), r)))
}

fn delta_case(plan: &SamplePlan, rng: &mut SampleRng, policy: &SeriesPolicy) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let z = plan.sample_z(rng);
    if !plan.admissible(&tau, &[z]) {
        return Ok(None);
    }
    Ok(Some((tau, vec![z], residual_delta(z, &tau, policy)?)))
}

// Largest deviation of Δ(f) at four further points from its value at the first.
fn delta_spread_case(
    plan: &SamplePlan,
    rng: &mut SampleRng,
    policy: &SeriesPolicy,
) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let zs: Vec<Complex64> = (0..5).map(|_| plan.sample_z(rng)).collect();
    if !plan.admissible(&tau, &zs) {
        return Ok(None);
    }
    let base = residual_delta(zs[0], &tau, policy)?;
    let mut worst = Complex64::new(0.0, 0.0);
    for &z in &zs[1..] {
        let d = residual_delta(z, &tau, policy)? - base;
        if d.norm() > worst.norm() {
            worst = d;
        }
    }
    Ok(Some((tau, zs, worst)))
}

fn rank2_case(
    system: RootSystem2D,
    plan: &SamplePlan,
    rng: &mut SampleRng,
    policy: &SeriesPolicy,
) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let z = [plan.sample_z(rng) * 0.5, plan.sample_z(rng) * 0.5];
    let args: Vec<Complex64> = system
        .positive_roots()
        .iter()
        .map(|(v, _)| pair(*v, z))
        .collect();
    if !plan.admissible(&tau, &args) {
        return Ok(None);
    }
    Ok(Some((tau, z.to_vec(), residual_rank2(system, z, &tau, policy)?)))
}

fn pair_case(
    plan: &SamplePlan,
    rng: &mut SampleRng,
    policy: &SeriesPolicy,
    points: usize,
    eval: fn(Complex64, Complex64, &HalfPlanePoint, &SeriesPolicy) -> Result<Complex64>,
) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let (x, y) = (plan.sample_z(rng), plan.sample_z(rng));
    let args = [x, y, x + y, x + 2.0 * y];
    if !plan.admissible(&tau, &args[..points]) {
        return Ok(None);
    }
    Ok(Some((tau, vec![x, y], eval(x, y, &tau, policy)?)))
}

fn rational_case(plan: &SamplePlan, rng: &mut SampleRng, _: &SeriesPolicy) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let t = ConstrainedTriple::new(plan.sample_z(rng), plan.sample_z(rng));
    if t.as_array().iter().any(|z| z.norm() < plan.pole_margin) {
        return Ok(None);
    }
    Ok(Some((tau, t.as_array().to_vec(), residual_rational_limit(&t)?)))
}

fn trig_case(plan: &SamplePlan, rng: &mut SampleRng, _: &SeriesPolicy) -> Result<Option<Draw>> {
    let tau = plan.sample_tau(rng);
    let t = ConstrainedTriple::new(plan.sample_z(rng) * PI, plan.sample_z(rng) * PI);
    let near_pole = |z: &Complex64| (z - PI * (z.re / PI).round()).norm() < plan.pole_margin;
    if t.as_array().iter().any(near_pole) {
        return Ok(None);
    }
    Ok(Some((tau, t.as_array().to_vec(), residual_trig_limit(&t)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_match_cases() {
        let ids: Vec<&str> = CASES.iter().map(|c| c.id).collect();
        assert_eq!(ids, SUITE_IDENTITIES);
    }

    #[test]
    fn small_plan_passes_and_is_deterministic() {
        let plan = SamplePlan::new(11, 4);
        let pol = SeriesPolicy::default();
        let a = run_suite(&plan, 1e-8, &pol, Exec::Sequential).unwrap();
        let b = run_suite(&plan, 1e-8, &pol, Exec::Parallel { threads: 2 }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.overall_pass(), Some(true), "{}", a.to_text());
    }

    #[test]
    fn empty_plan_makes_no_claims() {
        let plan = SamplePlan::new(1, 0);
        let rep = run_suite(&plan, 1e-8, &SeriesPolicy::default(), Exec::Sequential).unwrap();
        assert_eq!(rep.overall_pass(), None);
        assert!(rep.records.iter().all(|r| r.samples_used == 0));
    }

    #[test]
    fn tiny_tolerance_fails() {
        let plan = SamplePlan::new(5, 2);
        let rep = run_suite(&plan, 1e-30, &SeriesPolicy::default(), Exec::Sequential).unwrap();
        assert_eq!(rep.overall_pass(), Some(false));
    }
}
