use crate::special::{bernoulli_f64, HalfPlanePoint};
use crate::{Complex64, Error, Result, TWO_PI_I};

/// `χ_r(ζ, q) = Σ_{j=0}^{r} B_{j+1} / ((r-j)! (j+1)!) (log ζ)^{r-j} (log q)^j`
/// with the principal `log ζ` and `log q = 2πiτ`.
pub fn chi(r: u32, zeta: Complex64, tau: &HalfPlanePoint) -> Result<Complex64> {
    if r % 2 == 0 {
        return Err(Error::Domain(format!("chi is defined for odd r, got {r}")));
    }
    if zeta == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("chi requires zeta != 0".into()));
    }
    let log_zeta = zeta.ln();
    let log_q = TWO_PI_I * tau.tau();
    let fact = |n: u32| -> f64 { (1..=n).map(f64::from).product() };
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=r {
        let b = bernoulli_f64(j as usize + 1)?;
        if b == 0.0 {
            continue;
        }
        sum += log_zeta.powu(r - j) * log_q.powu(j) * (b / (fact(r - j) * fact(j + 1)));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_unit_zeta_only_top_term_survives() {
        let t = HalfPlanePoint::new(Complex64::new(0.2, 1.1)).unwrap();
        let got = chi(3, Complex64::new(1.0, 0.0), &t).unwrap();
        let want = -(TWO_PI_I * t.tau()).powu(3) / 720.0;
        assert!((got - want).norm() < 1e-13);
    }

    #[test]
    fn r_one_by_hand() {
        // χ₁ = B₁ log ζ + B₂/2 log q
        let t = HalfPlanePoint::new(Complex64::new(-0.1, 0.9)).unwrap();
        let zeta = Complex64::new(0.3, 0.7);
        let want = -0.5 * zeta.ln() + (1.0 / 12.0) * TWO_PI_I * t.tau();
        assert!((chi(1, zeta, &t).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn rejects_zero_and_even() {
        let t = HalfPlanePoint::new(Complex64::new(0.0, 1.0)).unwrap();
        assert!(chi(3, Complex64::new(0.0, 0.0), &t).is_err());
        assert!(chi(2, Complex64::new(1.0, 0.0), &t).is_err());
    }
}
