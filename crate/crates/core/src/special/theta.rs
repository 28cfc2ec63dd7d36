use std::f64::consts::{FRAC_PI_2, PI};

use super::{HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result};

/// `∂_z^dz ∂_τ^dtau ϑ₁(z|τ)` from the sine sum
/// `ϑ₁ = 2 Σ_{n≥0} (-1)^n e^{πiτ(2n+1)²/4} sin((2n+1)πz)`, differentiated term-wise.
pub fn theta1(
    z: Complex64,
    tau: &HalfPlanePoint,
    dz: u32,
    dtau: u32,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    if dz > 3 {
        return Err(Error::OutOfRange {
            what: "theta1 z-derivative order",
            index: i64::from(dz),
            min: 0,
            max: 3,
        });
    }
    if dtau > 1 {
        return Err(Error::OutOfRange {
            what: "theta1 tau-derivative order",
            index: i64::from(dtau),
            min: 0,
            max: 1,
        });
    }
    let t = tau.tau();
    let i_pi_quarter = Complex64::new(0.0, PI / 4.0);
    let growth = PI * z.im.abs();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_bound = f64::INFINITY;
    for n in 0..policy.max_terms() {
        let odd = (2 * n + 1) as f64;
        let k = odd * PI;
        let gauss = (i_pi_quarter * t * odd * odd).exp();
        let mut term = gauss * k.powi(dz as i32) * (z * k + FRAC_PI_2 * dz as f64).sin();
        if dtau == 1 {
            term *= i_pi_quarter * odd * odd;
        }
        if n % 2 == 1 {
            term = -term;
        }
        sum += term;

        let bound = (-PI * t.im * odd * odd / 4.0 + growth * odd).exp()
            * k.powi(dz as i32)
            * (PI * odd * odd / 4.0).powi(dtau as i32);
        // Past the peak the bounds decay super-geometrically, so the ratio of
        // consecutive bounds dominates the whole tail.
        let next_odd = odd + 2.0;
        let ratio = (-PI * t.im * (next_odd * next_odd - odd * odd) / 4.0 + 2.0 * growth).exp()
            * (next_odd / odd).powi(dz as i32 + 2 * dtau as i32);
        if bound <= prev_bound && ratio < 1.0 && 2.0 * bound * ratio / (1.0 - ratio) < policy.eps() {
            return Ok(sum * 2.0);
        }
        prev_bound = bound;
    }
    Err(Error::NonConvergence {
        what: "theta1 sine series",
        max_terms: policy.max_terms(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TWO_PI_I;

    fn tau(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(re, im)).unwrap()
    }

    // -i (e^{πiz} - e^{-πiz}) q^{1/8} Π (1-q^n)(1-q^n e^{2πiz})(1-q^n e^{-2πiz})
    fn product_form(z: Complex64, t: &HalfPlanePoint) -> Complex64 {
        let q = t.q();
        let x = (TWO_PI_I * z).exp();
        let mut prod = Complex64::new(1.0, 0.0);
        for n in 1..60 {
            let qn = q.powu(n);
            prod *= (1.0 - qn) * (1.0 - qn * x) * (1.0 - qn / x);
        }
        let half = Complex64::new(0.0, PI) * z;
        Complex64::new(0.0, -1.0) * (half.exp() - (-half).exp()) * (TWO_PI_I * t.tau() / 8.0).exp() * prod
    }

    #[test]
    fn sum_matches_product() {
        let p = SeriesPolicy::default();
        let t = tau(0.21, 0.9);
        for z in [Complex64::new(0.3, 0.1), Complex64::new(-0.7, -0.4), Complex64::new(0.05, 0.6)] {
            let got = theta1(z, &t, 0, 0, &p).unwrap();
            assert!((got - product_form(z, &t)).norm() < 1e-13);
        }
    }

    #[test]
    fn odd_and_zero_at_origin() {
        let p = SeriesPolicy::default();
        let t = tau(-0.3, 1.2);
        assert!(theta1(Complex64::new(0.0, 0.0), &t, 0, 0, &p).unwrap().norm() < 1e-16);
        let z = Complex64::new(0.37, -0.22);
        let a = theta1(z, &t, 0, 0, &p).unwrap();
        let b = theta1(-z, &t, 0, 0, &p).unwrap();
        assert!((a + b).norm() < 1e-15);
    }

    #[test]
    fn rejects_high_orders() {
        let t = tau(0.0, 1.0);
        let z = Complex64::new(0.1, 0.0);
        assert!(theta1(z, &t, 4, 0, &SeriesPolicy::default()).is_err());
        assert!(theta1(z, &t, 0, 2, &SeriesPolicy::default()).is_err());
    }
}
