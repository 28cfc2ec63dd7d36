//! Residual reports and their JSON, CSV and text renderings.
//!
//! JSON output is byte-deterministic: object keys are sorted and every float is
//! written in scientific notation with 17 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::Complex64;

/// Version of the JSON layout; see `schema/report.schema.json`.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// What a residual is expected to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Passes when every `|residual|` is below the threshold.
    Vanishing,
    /// Negative control: passes when the largest `|residual|` exceeds the threshold.
    Nonvanishing,
}

impl Expectation {
    fn as_str(&self) -> &'static str {
        match self {
            Expectation::Vanishing => "vanishing",
            Expectation::Nonvanishing => "nonvanishing",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub index: usize,
    pub tau: Complex64,
    pub point: Vec<Complex64>,
    pub residual: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRecord {
    pub identity_id: String,
    pub expectation: Expectation,
    pub threshold: f64,
    pub samples_used: usize,
    pub resamples: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub p99_abs: f64,
    /// `None` when no samples were evaluated.
    pub pass: Option<bool>,
    pub rows: Vec<SampleRow>,
}

impl IdentityRecord {
    pub fn from_rows(
        identity_id: impl Into<String>,
        expectation: Expectation,
        threshold: f64,
        rows: Vec<SampleRow>,
        resamples: usize,
    ) -> Self {
        let abs: Vec<f64> = rows.iter().map(|r| r.residual.norm()).collect();
        let stats = Stats::of(&abs);
        let pass = (!abs.is_empty()).then(|| match expectation {
            Expectation::Vanishing => stats.max < threshold,
            Expectation::Nonvanishing => stats.max > threshold,
        });
        Self {
            identity_id: identity_id.into(),
            expectation,
            threshold,
            samples_used: abs.len(),
            resamples,
            max_abs: stats.max,
            mean_abs: stats.mean,
            p99_abs: stats.p99,
            pass,
            rows,
        }
    }
}

/// Max, mean and nearest-rank 99th percentile; all zero for an empty slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub max: f64,
    pub mean: f64,
    pub p99: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self {
                max: 0.0,
                mean: 0.0,
                p99: 0.0,
            };
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let rank = ((0.99 * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
        Self {
            max: sorted[sorted.len() - 1],
            mean: values.iter().sum::<f64>() / values.len() as f64,
            p99: sorted[rank - 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub records: Vec<IdentityRecord>,
    /// Command-specific details (condition tables, verdicts).
    pub sections: BTreeMap<String, Value>,
}

impl ResidualReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            config: BTreeMap::new(),
            records: Vec::new(),
            sections: BTreeMap::new(),
        }
    }

    /// Conjunction of the per-identity verdicts; `None` when nothing was claimed.
    pub fn overall_pass(&self) -> Option<bool> {
        let verdicts: Vec<bool> = self.records.iter().filter_map(|r| r.pass).collect();
        (!verdicts.is_empty()).then(|| verdicts.iter().all(|&p| p))
    }

    pub fn record(&self, id: &str) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.identity_id == id)
    }

    pub fn to_json_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("schema_version".into(), SCHEMA_VERSION.into());
        root.insert("tool_version".into(), crate::TOOL_VERSION.into());
        root.insert("command".into(), self.command.clone().into());
        root.insert(
            "config".into(),
            Value::Object(self.config.clone().into_iter().collect()),
        );
        let records = self
            .records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("identity_id".into(), r.identity_id.clone().into());
                m.insert("expectation".into(), r.expectation.as_str().into());
                m.insert("threshold".into(), json_f64(r.threshold));
                m.insert("samples_used".into(), r.samples_used.into());
                m.insert("resamples".into(), r.resamples.into());
                m.insert("max_abs".into(), json_f64(r.max_abs));
                m.insert("mean_abs".into(), json_f64(r.mean_abs));
                m.insert("p99_abs".into(), json_f64(r.p99_abs));
                m.insert("pass".into(), r.pass.map_or(Value::Null, Value::Bool));
                Value::Object(m)
            })
            .collect();
        root.insert("identities".into(), Value::Array(records));
        root.insert(
            "sections".into(),
            Value::Object(self.sections.clone().into_iter().collect()),
        );
        root.insert(
            "overall_pass".into(),
            self.overall_pass().map_or(Value::Null, Value::Bool),
        );
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("report serialises");
        s.push('\n');
        s
    }

    /// One row per `(identity, sample)`.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("identity_id,sample_index,tau_re,tau_im,point,residual_re,residual_im,residual_abs\n");
        for r in &self.records {
            for row in &r.rows {
                let point: Vec<String> = row.point.iter().map(|&z| complex_literal(z)).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.identity_id,
                    row.index,
                    fmt_f64(row.tau.re),
                    fmt_f64(row.tau.im),
                    point.join(" "),
                    fmt_f64(row.residual.re),
                    fmt_f64(row.residual.im),
                    fmt_f64(row.residual.norm()),
                );
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ellitri {} {}\n", crate::TOOL_VERSION, self.command);
        for r in &self.records {
            let verdict = match (r.pass, r.expectation) {
                (None, _) => "----",
                (Some(true), Expectation::Vanishing) => "PASS",
                (Some(true), Expectation::Nonvanishing) => "PASS (nonvanishing, as expected)",
                (Some(false), _) => "FAIL",
            };
            let cmp = match r.expectation {
                Expectation::Vanishing => "<",
                Expectation::Nonvanishing => ">",
            };
            let _ = writeln!(
                out,
                "{verdict:<5} {:<28} n={:<5} max={:.3e} mean={:.3e} p99={:.3e} (want max {cmp} {:.1e})",
                r.identity_id, r.samples_used, r.max_abs, r.mean_abs, r.p99_abs, r.threshold
            );
        }
        for (k, v) in &self.sections {
            let _ = writeln!(out, "{k}: {v}");
        }
        let overall = match self.overall_pass() {
            None => "no claims",
            Some(true) => "PASS",
            Some(false) => "FAIL",
        };
        let _ = writeln!(out, "overall: {overall}");
        out
    }
}

/// Fixed 17-significant-digit scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number in [`fmt_f64`] notation; non-finite values become `null`.
pub fn json_f64(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&fmt_f64(x)).map_or(Value::Null, Value::Number)
}

pub fn json_complex(z: Complex64) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), json_f64(z.re));
    m.insert("im".into(), json_f64(z.im));
    Value::Object(m)
}

/// `a+bi` / `a-bi` in [`fmt_f64`] notation.
pub fn complex_literal(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_f64(z.re), fmt_f64(z.im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(i: usize, r: f64) -> SampleRow {
        SampleRow {
            index: i,
            tau: Complex64::new(0.0, 1.0),
            point: vec![Complex64::new(0.1, -0.2)],
            residual: Complex64::new(r, 0.0),
        }
    }

    #[test]
    fn stats() {
        let v: Vec<f64> = (1..=200).map(f64::from).collect();
        let s = Stats::of(&v);
        assert_eq!(s.max, 200.0);
        assert_eq!(s.p99, 198.0);
        assert!((s.mean - 100.5).abs() < 1e-12);
        assert_eq!(Stats::of(&[]).max, 0.0);
    }

    #[test]
    fn verdicts() {
        let ok = IdentityRecord::from_rows("a", Expectation::Vanishing, 1e-8, vec![row(0, 1e-12)], 0);
        let ctl = IdentityRecord::from_rows("b", Expectation::Nonvanishing, 1e-4, vec![row(0, 1e-3)], 0);
        let empty = IdentityRecord::from_rows("c", Expectation::Vanishing, 1e-8, vec![], 0);
        assert_eq!((ok.pass, ctl.pass, empty.pass), (Some(true), Some(true), None));
        let mut rep = ResidualReport::new("verify");
        assert_eq!(rep.overall_pass(), None);
        rep.records = vec![ok, ctl, empty];
        assert_eq!(rep.overall_pass(), Some(true));
        rep.records
            .push(IdentityRecord::from_rows("d", Expectation::Vanishing, 1e-8, vec![row(0, 1.0)], 0));
        assert_eq!(rep.overall_pass(), Some(false));
    }

    #[test]
    fn json_is_sorted_and_fixed_format() {
        let mut rep = ResidualReport::new("verify");
        rep.config.insert("zeta".into(), json_f64(1.0));
        rep.config.insert("alpha".into(), json_f64(0.1));
        rep.records
            .push(IdentityRecord::from_rows("x", Expectation::Vanishing, 1e-8, vec![row(0, 3e-11)], 0));
        let s = rep.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"max_abs\": 3.0000000000000000e-11"), "{s}");
        let parsed: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["overall_pass"], Value::Bool(true));
    }

    #[test]
    fn csv_rows() {
        let mut rep = ResidualReport::new("verify");
        rep.records.push(IdentityRecord::from_rows(
            "x",
            Expectation::Vanishing,
            1e-8,
            vec![row(0, 1e-12), row(1, 2e-12)],
            0,
        ));
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("x,0,"));
    }

    #[test]
    fn literals() {
        assert_eq!(
            complex_literal(Complex64::new(1.0, -2.0)),
            "1.0000000000000000e0-2.0000000000000000e0i"
        );
        assert_eq!(json_f64(f64::NAN), Value::Null);
    }
}
