//! Evaluation of the elliptic trilogarithm `f(z, τ)` and its mixed
//! derivatives, together with residual evaluators for the differential and
//! functional identities it satisfies.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: Bernoulli numbers, divisor sums, polylogarithms, Eisenstein
//!   series, Dedekind η, Jacobi ϑ₁ and the Weierstrass pair (℘, ζ).
//! * [`trilog`]: `f` itself, its derivatives `f^(n,m)`, the regularised
//!   `ℒi₃(ζ, q)` and the quasi-periodicity machinery.
//! * [`identities`]: Frobenius–Stickelberger type identities, rank-2 root system
//!   identities and the sampled verification suite.
//! * [`vee`]: ∨-system conditions, prepotentials and WDVV residuals.
//! * [`dunkl`]: Dunkl-type operators for A₂.
//! * [`report`]: deterministic JSON/CSV/text reports.
//!
//! All evaluators are pure functions of their arguments and are safe to call from
//! many threads at once.

pub mod complex_lit;
pub mod dunkl;
pub mod error;
pub mod identities;
pub mod par;
pub mod report;
pub mod special;
pub mod trilog;
pub mod vee;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use special::{HalfPlanePoint, SeriesPolicy};
pub use trilog::{DerivOrder, StripPoint};

/// `2πi`.
pub const TWO_PI_I: Complex64 = Complex64::new(0.0, std::f64::consts::TAU);

/// Version string embedded in reports.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
