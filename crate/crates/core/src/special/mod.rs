//! Classical special functions on the upper half-plane.

mod bernoulli;
mod divisor;
mod eisenstein;
mod eta;
mod polylog;
mod theta;
mod weierstrass;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_f64, BERNOULLI_MAX};
pub use divisor::divisor_sigma;
pub use eisenstein::eisenstein;
pub use eta::{dedekind_eta, dedekind_eta_log_deriv};
pub use polylog::{polylog, polylog_inversion};
pub use theta::theta1;
pub use weierstrass::{weierstrass_pair, WeierstrassPair};
pub use zeta::zeta_int;

use crate::{Complex64, Error, Result, TWO_PI_I};

/// A modular parameter `τ` with `Im τ > 0`, together with its nome `q = e^{2πiτ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    tau: Complex64,
    q: Complex64,
}

impl HalfPlanePoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::NotInUpperHalfPlane(tau));
        }
        Ok(Self {
            tau,
            q: (TWO_PI_I * tau).exp(),
        })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// `|q| = e^{-2π Im τ}`.
    pub fn nome_abs(&self) -> f64 {
        (-std::f64::consts::TAU * self.tau.im).exp()
    }

    /// `τ + k`.
    pub fn translated(&self, k: i64) -> Self {
        Self::new(self.tau + k as f64).expect("translation preserves Im tau")
    }

    /// `-1/τ`.
    pub fn inverted(&self) -> Self {
        Self::new(-self.tau.inv()).expect("inversion preserves the upper half-plane")
    }

    /// Euclidean distance from `z` to the nearest point of `Z + τZ`.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let tau = self.tau;
        let b = (z.im / tau.im).round();
        let w = z - tau * b;
        let a = w.re.round();
        let w = w - a;
        let mut best = f64::INFINITY;
        for m in -1..=1 {
            for n in -1..=1 {
                let d = (w - (m as f64) - tau * (n as f64)).norm();
                best = best.min(d);
            }
        }
        best
    }
}

/// Truncation control shared by every series evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    eps: f64,
    max_terms: usize,
}

impl SeriesPolicy {
    pub const DEFAULT_EPS: f64 = 1e-16;
    pub const DEFAULT_MAX_TERMS: usize = 4096;

    pub fn new(eps: f64, max_terms: usize) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::InvalidPolicy(format!("eps must be positive, got {eps}")));
        }
        if max_terms == 0 {
            return Err(Error::InvalidPolicy("max_terms must be at least 1".into()));
        }
        Ok(Self { eps, max_terms })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// Upper bound for `Σ_{k>n} C k^p ρ^k` given the `n`-th bound `b_n = C n^p ρ^n`.
///
/// Uses `((n+j)/n)^p ≤ ((n+1)/n)^{pj}`, so the tail is dominated by a geometric
/// series with ratio `r = ((n+1)/n)^p ρ`. Negative `p` is treated as `0`.
/// Returns `None` while `r ≥ 1`.
pub(crate) fn geometric_tail(b_n: f64, n: usize, power: f64, rho: f64) -> Option<f64> {
    let n = n.max(1) as f64;
    let r = ((n + 1.0) / n).powf(power.max(0.0)) * rho;
    (r < 1.0).then(|| b_n * r / (1.0 - r))
}
