use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use ellitri::complex_lit::parse_complex;
use ellitri::dunkl::{run_dunkl, DunklThresholds};
use ellitri::identities::{run_suite, SamplePlan};
use ellitri::par::Exec;
use ellitri::report::{complex_literal, fmt_f64, json_complex, ResidualReport};
use ellitri::special::{dedekind_eta, eisenstein, polylog, theta1};
use ellitri::trilog::{elliptic_li3_direct, f_deriv_any};
use ellitri::vee::{parse_system, run_wdvv, VeeSystem, WdvvOptions, BUILTINS};
use ellitri::{Complex64, Error, HalfPlanePoint, SeriesPolicy};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_IO: u8 = 4;

/// Elliptic trilogarithm evaluator and identity checker.
#[derive(Debug, Parser)]
#[command(name = "ellitri", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Sampling seed.
    #[arg(long, global = true, default_value_t = SamplePlan::DEFAULT_SEED)]
    seed: u64,
    /// Samples per identity.
    #[arg(long, global = true, default_value_t = SamplePlan::DEFAULT_COUNT as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = positive)]
    tol: f64,
    /// Lower bound of the sampled Im τ range (upper bound is max(2, this)).
    #[arg(long, global = true, default_value_t = 0.8)]
    tau_min_im: f64,
    /// Series truncation threshold.
    #[arg(long, global = true, default_value_t = SeriesPolicy::DEFAULT_EPS, value_parser = positive)]
    eps: f64,
    /// Series term cap.
    #[arg(long, global = true, default_value_t = SeriesPolicy::DEFAULT_MAX_TERMS)]
    max_terms: usize,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write per-sample CSV rows here.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single function value.
    Eval(EvalArgs),
    /// Run the identity suite.
    Verify,
    /// Check a ∨-system and the WDVV equations for its prepotential.
    Wdvv(WdvvArgs),
    /// Check the commutator relations of the A₂ Dunkl-type operators.
    Dunkl(DunklArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Function {
    F,
    FDeriv,
    Theta1,
    Eisenstein,
    Eta,
    Li3,
    EllipticLi3,
}

#[derive(Debug, Args)]
struct EvalArgs {
    function: Function,
    /// Argument `z` (`ζ` for elliptic_li3).
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    z: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    tau: Option<Complex64>,
    /// Derivatives in z.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Derivatives in τ.
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Eisenstein weight.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SystemSource {
    /// Built-in system name.
    #[arg(long)]
    builtin: Option<String>,
    /// System description file.
    #[arg(long, value_name = "PATH")]
    system: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WdvvArgs {
    #[command(flatten)]
    source: SystemSource,
    /// Largest exponent in the plane sums.
    #[arg(long, default_value_t = 4)]
    plane_n_max: u32,
}

#[derive(Debug, Args)]
struct DunklArgs {
    /// Im τ for the trigonometric-limit check.
    #[arg(long = "trig-limit-T", default_value_t = 20.0, value_parser = positive)]
    trig_limit_t: f64,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("must be positive and finite, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

fn complex(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => EXIT_USAGE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_DOMAIN,
        };
        Self { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let c = &cli.common;
    let policy = SeriesPolicy::new(c.eps, c.max_terms)?;
    let plan = SamplePlan::new(c.seed, c.samples as usize).with_tau_im(c.tau_min_im, c.tau_min_im.max(2.0));
    plan.validate()?;
    let exec = Exec::from_env();

    let report = match &cli.command {
        Command::Eval(args) => eval(args, &policy)?,
        Command::Verify => run_suite(&plan, c.tol, &policy, exec)?,
        Command::Wdvv(args) => {
            let (sys, source) = load_system(&args.source)?;
            let opts = WdvvOptions {
                tol: c.tol,
                plane_n_max: args.plane_n_max,
                source,
            };
            run_wdvv(&sys, &plan, &opts, &policy, exec)?
        }
        Command::Dunkl(args) => {
            let thresholds = DunklThresholds {
                tol: c.tol,
                trig_t: args.trig_limit_t,
                ..DunklThresholds::default()
            };
            run_dunkl(&plan, &thresholds, &policy, exec)?
        }
    };

    if let Some(path) = &c.json {
        write(path, &report.to_json())?;
    }
    if let Some(path) = &c.csv {
        write(path, &report.to_csv())?;
    }
    if let Command::Eval(_) = cli.command {
        return Ok(0);
    }
    print!("{}", report.to_text());
    Ok(match report.overall_pass() {
        Some(false) => EXIT_FAIL,
        _ => 0,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_IO,
        msg: format!("cannot write {}: {e}", path.display()),
    })
}

fn load_system(src: &SystemSource) -> Result<(VeeSystem, String), Failure> {
    match (&src.builtin, &src.system) {
        (Some(name), _) => {
            if !BUILTINS.contains(&name.as_str()) {
                return Err(usage(format!(
                    "unknown built-in system '{name}' (known: {})",
                    BUILTINS.join(", ")
                )));
            }
            Ok((VeeSystem::builtin(name)?, format!("builtin:{name}")))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_IO,
                msg: format!("cannot read {}: {e}", path.display()),
            })?;
            let sys = parse_system(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok((sys, path.display().to_string()))
        }
        (None, None) => Err(usage("one of --builtin or --system is required")),
    }
}

fn eval(args: &EvalArgs, policy: &SeriesPolicy) -> Result<ResidualReport, Failure> {
    let need_z = || args.z.ok_or_else(|| usage("--z is required for this function"));
    let need_tau = || -> Result<HalfPlanePoint, Failure> {
        let t = args.tau.ok_or_else(|| usage("--tau is required for this function"))?;
        Ok(HalfPlanePoint::new(t)?)
    };
    let (name, value) = match args.function {
        Function::F => ("f", f_deriv_any(0, need_z()?, &need_tau()?, policy)?[0]),
        Function::FDeriv => {
            let v = f_deriv_any(args.n + args.m, need_z()?, &need_tau()?, policy)?;
            ("f_deriv", v[args.m as usize])
        }
        Function::Theta1 => ("theta1", theta1(need_z()?, &need_tau()?, args.n, args.m, policy)?),
        Function::Eisenstein => {
            let k = args.k.ok_or_else(|| usage("--k is required for eisenstein"))?;
            ("eisenstein", eisenstein(k, &need_tau()?, args.m, policy)?)
        }
        Function::Eta => ("eta", dedekind_eta(&need_tau()?, policy)?),
        Function::Li3 => ("li3", polylog(3, need_z()?, policy)?),
        Function::EllipticLi3 => ("elliptic_li3", elliptic_li3_direct(need_z()?, &need_tau()?, policy)?),
    };
    println!("{} {}", fmt_f64(value.re), fmt_f64(value.im));

    let mut report = ResidualReport::new("eval");
    let mut m = Map::new();
    m.insert("function".into(), name.into());
    if let Some(z) = args.z {
        m.insert("z".into(), complex_literal(z).into());
    }
    if let Some(t) = args.tau {
        m.insert("tau".into(), complex_literal(t).into());
    }
    m.insert("n".into(), args.n.into());
    m.insert("m".into(), args.m.into());
    if let Some(k) = args.k {
        m.insert("k".into(), k.into());
    }
    m.insert("value".into(), json_complex(value));
    report.sections.insert("eval".into(), Value::Object(m));
    Ok(report)
}
