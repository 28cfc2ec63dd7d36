use serde_json::{Map, Value};

use super::{
    check_plane_conditions, check_quartic, check_weight_lattice, check_well_distributed, is_reducible,
    Prepotential, PrepotentialPoint, VeeSystem,
};
use crate::identities::{draw_with, plan_config, SamplePlan, MAX_RESAMPLE_RATE};
use crate::par::Exec;
use crate::report::{json_complex, json_f64, Expectation, IdentityRecord, ResidualReport, SampleRow};
use crate::special::SeriesPolicy;
use crate::{Complex64, Error, Result};

const CONDITION_TRIALS: usize = 16;
const PLANE_TOL: f64 = 1e-10;
const STREAM: u64 = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct WdvvOptions {
    pub tol: f64,
    /// Largest exponent in the plane sums.
    pub plane_n_max: u32,
    /// Label echoed in the report.
    pub source: String,
}

impl Default for WdvvOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            plane_n_max: 4,
            source: String::new(),
        }
    }
}

/// Condition checks for `sys` plus the WDVV commutator residual of its
/// prepotential at `plan.count` random points.
///
/// The condition verdicts go into report sections; only the commutator
/// residual is a pass/fail record.
pub fn run_wdvv(
    sys: &VeeSystem,
    plan: &SamplePlan,
    opts: &WdvvOptions,
    policy: &SeriesPolicy,
    exec: Exec,
) -> Result<ResidualReport> {
    plan.validate()?;
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let mut report = ResidualReport::new("wdvv");
    report.config = plan_config(plan);
    report.config.insert("tol".into(), json_f64(opts.tol));
    report.config.insert("system".into(), opts.source.clone().into());
    report.config.insert("plane_n_max".into(), opts.plane_n_max.into());

    let wd = check_well_distributed(sys, CONDITION_TRIALS, plan.seed)?;
    let quartic = check_quartic(sys, CONDITION_TRIALS, plan.seed);
    let reducible = is_reducible(sys);
    let mut s = Map::new();
    s.insert("is_well_distributed".into(), wd.is_wd.into());
    s.insert("h_vee".into(), json_complex(wd.h_vee));
    s.insert("max_deviation".into(), json_f64(wd.max_deviation));
    report.sections.insert("well_distributed".into(), Value::Object(s));

    let mut s = Map::new();
    s.insert("holds".into(), quartic.holds.into());
    s.insert("worst_entry".into(), quartic.worst_entry.to_vec().into());
    s.insert("worst_deviation".into(), json_f64(quartic.worst_deviation));
    s.insert("random_max".into(), json_f64(quartic.random_max));
    report.sections.insert("quartic".into(), Value::Object(s));

    let mut planes_hold = None;
    let plane_section = if sys.dim() == 2 {
        let mut all = true;
        let mut list = Vec::new();
        for a in 0..sys.len() {
            let rep = check_plane_conditions(sys, a, opts.plane_n_max)?;
            let holds = rep.holds(PLANE_TOL);
            all &= holds;
            let rows = rep
                .rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    m.insert("n".into(), r.n.into());
                    m.insert("first".into(), json_f64(r.first));
                    m.insert("second".into(), json_f64(r.second));
                    m.insert("third".into(), json_f64(r.third));
                    Value::Object(m)
                })
                .collect();
            let mut m = Map::new();
            m.insert("alpha_index".into(), a.into());
            m.insert("holds".into(), holds.into());
            m.insert("rows".into(), Value::Array(rows));
            list.push(Value::Object(m));
        }
        planes_hold = Some(all);
        Value::Array(list)
    } else {
        Value::String(format!("not evaluated for dimension {}", sys.dim()))
    };
    report.sections.insert("plane_conditions".into(), plane_section);
    report.sections.insert("reducible".into(), reducible.into());

    let lattice = sys.lattice_basis().map(|b| check_weight_lattice(sys, b));
    report
        .sections
        .insert("weight_lattice".into(), lattice.map_or(Value::Null, Value::Bool));
    let elliptic = match (planes_hold, lattice) {
        (Some(p), Some(l)) => Value::Bool(wd.is_wd && quartic.holds && p && l),
        _ => Value::Null,
    };
    report.sections.insert("elliptic_vee_system".into(), elliptic);

    let prepotential = Prepotential::new(sys)?;
    report
        .sections
        .insert("li3_correction".into(), json_complex(prepotential.correction()));

    let covs: Vec<Vec<Complex64>> = (0..sys.len()).map(|k| sys.covector(k)).collect();
    let draws = exec.map(plan.count, |index| {
        draw_with(plan, STREAM, index, |rng| {
            let tau = plan.sample_tau(rng);
            let u = plan.sample_z(rng);
            let z: Vec<Complex64> = (0..sys.dim()).map(|_| plan.sample_z(rng)).collect();
            let args: Vec<Complex64> = covs
                .iter()
                .map(|c| c.iter().zip(&z).map(|(a, b)| a * b).sum())
                .collect();
            if !plan.admissible(&tau, &args) {
                return Ok(None);
            }
            let pt = PrepotentialPoint { u, z, tau };
            let r = prepotential.wdvv_residual(&pt, policy)?;
            Ok(Some((pt, r)))
        })
    });
    let mut rows = Vec::with_capacity(plan.count);
    let mut resamples = 0;
    for (index, d) in draws.into_iter().enumerate() {
        let ((pt, r), rejected) = d?;
        resamples += rejected;
        let mut point = vec![pt.u];
        point.extend(pt.z);
        rows.push(SampleRow {
            index,
            tau: pt.tau.tau(),
            point,
            residual: Complex64::new(r, 0.0),
        });
    }
    let total = resamples + rows.len();
    if total > 0 && resamples as f64 > MAX_RESAMPLE_RATE * total as f64 {
        return Err(Error::Domain(format!("wdvv: {resamples} of {total} draws rejected")));
    }
    report.records.push(IdentityRecord::from_rows(
        "wdvv_commutator",
        Expectation::Vanishing,
        opts.tol,
        rows,
        resamples,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_dual_passes() {
        let sys = VeeSystem::builtin("a1-dual").unwrap();
        let plan = SamplePlan::new(5, 8);
        let rep = run_wdvv(&sys, &plan, &WdvvOptions::default(), &SeriesPolicy::default(), Exec::Sequential).unwrap();
        assert_eq!(rep.overall_pass(), Some(true), "{}", rep.to_text());
        assert_eq!(rep.sections["plane_conditions"], Value::String("not evaluated for dimension 1".into()));
        assert_eq!(rep.sections["reducible"], Value::Bool(false));
    }

    #[test]
    fn reducible_is_flagged() {
        let sys = VeeSystem::builtin("a1xa1-reducible").unwrap();
        let plan = SamplePlan::new(5, 2);
        let rep = run_wdvv(&sys, &plan, &WdvvOptions::default(), &SeriesPolicy::default(), Exec::Sequential).unwrap();
        assert_eq!(rep.sections["reducible"], Value::Bool(true));
    }
}
