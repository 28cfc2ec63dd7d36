//! Residual evaluators for the differential and functional identities of `f`.
//!
//! Every evaluator returns a complex residual that vanishes when the identity
//! holds. Tolerances are applied by the caller, so a sweep over tolerances does
//! not re-evaluate anything.

mod fs;
mod plan;
mod rank2;
mod suite;

pub use fs::{
    residual_fs_theta, residual_fs_trilog, residual_fs_weierstrass, residual_rational_limit,
    residual_trig_limit,
};
pub use plan::{SamplePlan, SampleRng};
pub use rank2::{
    residual_a2_first, residual_a2_second, residual_b2, residual_delta, residual_rank2, B2Set,
    RootSystem2D,
};
pub use suite::{run_suite, SUITE_IDENTITIES};

pub(crate) use suite::{draw_with, plan_config, MAX_RESAMPLE_RATE};

use crate::{Complex64, Error, Result};

/// A triple `(a, b, c)` with `a + b + c = 0`; `c` is always computed as `-a-b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstrainedTriple {
    a: Complex64,
    b: Complex64,
    c: Complex64,
}

impl ConstrainedTriple {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b, c: -a - b }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.a, self.b, self.c]
    }

    /// `(b, c, a)`.
    pub fn rotated(&self) -> Self {
        Self {
            a: self.b,
            b: self.c,
            c: self.a,
        }
    }

    pub fn scaled(&self, lambda: Complex64) -> Self {
        Self::new(self.a * lambda, self.b * lambda)
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.as_array().iter().any(|z| z.norm() == 0.0) {
            return Err(Error::Domain("triple has a zero entry".into()));
        }
        Ok(())
    }
}
