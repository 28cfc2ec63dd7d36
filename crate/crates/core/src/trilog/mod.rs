//! The elliptic trilogarithm `f(z, τ)` and its mixed derivatives.
//!
//! The fast path is the `q`-expansion
//!
//! ```text
//! f = (2πi)^{-3} Li₃(e^{2πiz}) + z³/12 - z²τ/24 - 4 (2πi)^{-3} Σ_r q^r/(1-q^r) sin²(πrz)/r³
//! ```
//!
//! which converges geometrically on the strip `|Im z| < Im τ` and can be
//! differentiated term-wise in both variables. Two slower, independent routes are
//! kept for cross-validation: the regularised sum of trilogarithms
//! ([`elliptic_li3_direct`]) and the small-`z` Eisenstein expansion
//! ([`f_series1_thirdderiv`]).

mod chi;
mod direct;
mod near_zero;
mod series;
mod shift;

pub use chi::chi;
pub use direct::{elliptic_li3_direct, elliptic_li3_one_tau_deriv};
pub use near_zero::{eisenstein_higher, f_series1_thirdderiv, MAX_EISENSTEIN_TERMS};
pub use series::{f_deriv, f_eval};
pub use shift::{f_deriv_any, reduce_to_strip, shift_down, shift_up};

use crate::special::HalfPlanePoint;
use crate::{Complex64, Error, Result};

/// Guard radius around lattice points for pole-carrying derivatives.
pub const POLE_GUARD: f64 = 1e-8;

/// Largest supported total derivative order `n + m`.
pub const MAX_ORDER: u32 = 6;

/// A derivative order `(n, m)`: `n` derivatives in `z`, `m` in `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivOrder {
    n: u32,
    m: u32,
}

impl DerivOrder {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n + m > MAX_ORDER {
            return Err(Error::OutOfRange {
                what: "total derivative order",
                index: i64::from(n + m),
                min: 0,
                max: i64::from(MAX_ORDER),
            });
        }
        Ok(Self { n, m })
    }

    pub const fn z_order(&self) -> u32 {
        self.n
    }

    pub const fn tau_order(&self) -> u32 {
        self.m
    }

    pub const fn total(&self) -> u32 {
        self.n + self.m
    }

    // Infallible constructors for the orders used throughout the identities.
    pub const F30: DerivOrder = DerivOrder { n: 3, m: 0 };
    pub const F21: DerivOrder = DerivOrder { n: 2, m: 1 };
    pub const F12: DerivOrder = DerivOrder { n: 1, m: 2 };
    pub const F03: DerivOrder = DerivOrder { n: 0, m: 3 };
}

/// A point `(z, τ)` with `z` inside the convergence strip `|Im z| < Im τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint {
    z: Complex64,
    tau: HalfPlanePoint,
}

impl StripPoint {
    pub fn new(z: Complex64, tau: HalfPlanePoint) -> Result<Self> {
        if !(z.im.abs() < tau.tau().im) || !z.re.is_finite() {
            return Err(Error::OutsideStrip {
                z,
                tau_im: tau.tau().im,
            });
        }
        Ok(Self { z, tau })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn tau(&self) -> &HalfPlanePoint {
        &self.tau
    }
}

/// All four third-order derivatives `f^(3,0), f^(2,1), f^(1,2), f^(0,3)` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdDerivs {
    pub f30: Complex64,
    pub f21: Complex64,
    pub f12: Complex64,
    pub f03: Complex64,
}

impl ThirdDerivs {
    pub fn at(z: Complex64, tau: &HalfPlanePoint, policy: &crate::SeriesPolicy) -> Result<Self> {
        let v = f_deriv_any(3, z, tau, policy)?;
        Ok(Self {
            f30: v[0],
            f21: v[1],
            f12: v[2],
            f03: v[3],
        })
    }
}
