use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::special::HalfPlanePoint;
use crate::{Complex64, Error, Result};

/// Per-sample random stream. Each `(seed, stream, index)` gets its own ChaCha
/// key, so samples can be drawn in any order or in parallel.
pub type SampleRng = ChaCha8Rng;

/// Seeded sampling ranges for `τ` and `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    pub tau_re: (f64, f64),
    pub tau_im: (f64, f64),
    pub z_re: (f64, f64),
    pub z_im: (f64, f64),
    pub pole_margin: f64,
}

impl SamplePlan {
    pub const DEFAULT_SEED: u64 = 20_240_917;
    pub const DEFAULT_COUNT: usize = 100;
    pub const DEFAULT_POLE_MARGIN: f64 = 0.05;

    /// Default ranges: `Re τ ∈ [-0.5, 0.5]`, `Im τ ∈ [0.8, 2]`, `Re z ∈ [-0.5, 0.5]`,
    /// `|Im z| ≤ 0.4 · 0.8`.
    pub fn new(seed: u64, count: usize) -> Self {
        Self {
            seed,
            count,
            tau_re: (-0.5, 0.5),
            tau_im: (0.8, 2.0),
            z_re: (-0.5, 0.5),
            z_im: (-0.32, 0.32),
            pole_margin: Self::DEFAULT_POLE_MARGIN,
        }
    }

    /// Sets the `Im τ` range and shrinks the `z` box to `|Im z| ≤ 0.4 lo`.
    pub fn with_tau_im(mut self, lo: f64, hi: f64) -> Self {
        self.tau_im = (lo, hi);
        self.z_im = (-0.4 * lo, 0.4 * lo);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ordered = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 <= r.1;
        if ![self.tau_re, self.tau_im, self.z_re, self.z_im]
            .into_iter()
            .all(ordered)
        {
            return Err(Error::Domain("sampling ranges must be finite and ordered".into()));
        }
        if self.tau_im.0 < 0.5 {
            return Err(Error::Domain(format!(
                "Im tau lower bound {} is below 0.5",
                self.tau_im.0
            )));
        }
        if self.z_im.0.abs().max(self.z_im.1.abs()) >= self.tau_im.0 {
            return Err(Error::Domain("z box leaves the convergence strip".into()));
        }
        if !(self.pole_margin > 0.0) || !self.pole_margin.is_finite() {
            return Err(Error::Domain("pole margin must be positive".into()));
        }
        Ok(())
    }

    pub fn rng(&self, stream: u64, index: usize) -> SampleRng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&stream.to_le_bytes());
        key[16..24].copy_from_slice(&(index as u64).to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }

    pub fn sample_tau(&self, rng: &mut SampleRng) -> HalfPlanePoint {
        let re = uniform(rng, self.tau_re);
        let im = uniform(rng, self.tau_im);
        HalfPlanePoint::new(Complex64::new(re, im)).expect("validated Im tau range")
    }

    pub fn sample_z(&self, rng: &mut SampleRng) -> Complex64 {
        Complex64::new(uniform(rng, self.z_re), uniform(rng, self.z_im))
    }

    /// True when every point keeps the pole margin from `Z + τZ`.
    pub fn admissible(&self, tau: &HalfPlanePoint, points: &[Complex64]) -> bool {
        points
            .iter()
            .all(|&z| tau.lattice_distance(z) >= self.pole_margin)
    }
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self::new(Self::DEFAULT_SEED, Self::DEFAULT_COUNT)
    }
}

pub(crate) fn uniform(rng: &mut SampleRng, range: (f64, f64)) -> f64 {
    if range.0 == range.1 {
        return range.0;
    }
    rng.random_range(range.0..range.1)
}
