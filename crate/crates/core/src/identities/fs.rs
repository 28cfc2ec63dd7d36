use super::ConstrainedTriple;
use crate::special::{theta1, weierstrass_pair, HalfPlanePoint, SeriesPolicy};
use crate::trilog::ThirdDerivs;
use crate::{Complex64, Error, Result};

/// `(ζ(a)+ζ(b)+ζ(c))² - ℘(a) - ℘(b) - ℘(c)`.
pub fn residual_fs_weierstrass(
    t: &ConstrainedTriple,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let mut zeta_sum = Complex64::new(0.0, 0.0);
    let mut p_sum = Complex64::new(0.0, 0.0);
    for z in t.as_array() {
        let w = weierstrass_pair(z, tau, policy)?;
        zeta_sum += w.zeta;
        p_sum += w.p;
    }
    Ok(zeta_sum * zeta_sum - p_sum)
}

/// The ϑ₁ form: `Σ_cyc L₁(a)L₁(b) + ½ Σ L₂ - ½ ϑ₁'''(0)/ϑ₁'(0)` with
/// `L_k = ϑ₁^(k)/ϑ₁`.
pub fn residual_fs_theta(
    t: &ConstrainedTriple,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let mut l1 = [Complex64::new(0.0, 0.0); 3];
    let mut l2_sum = Complex64::new(0.0, 0.0);
    for (slot, z) in l1.iter_mut().zip(t.as_array()) {
        let t0 = theta1(z, tau, 0, 0, policy)?;
        if t0.norm() == 0.0 {
            return Err(Error::NearLattice { z, margin: 0.0 });
        }
        *slot = theta1(z, tau, 1, 0, policy)? / t0;
        l2_sum += theta1(z, tau, 2, 0, policy)? / t0;
    }
    let zero = Complex64::new(0.0, 0.0);
    let constant = theta1(zero, tau, 3, 0, policy)? / theta1(zero, tau, 1, 0, policy)?;
    Ok(l1[0] * l1[1] + l1[1] * l1[2] + l1[2] * l1[0] + 0.5 * l2_sum - 0.5 * constant)
}

/// `Σ_cyc f^(3,0)(a) f^(3,0)(b) - Σ f^(2,1)`.
pub fn residual_fs_trilog(
    t: &ConstrainedTriple,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let d: Vec<ThirdDerivs> = t
        .as_array()
        .iter()
        .map(|&z| ThirdDerivs::at(z, tau, policy))
        .collect::<Result<_>>()?;
    let quad = d[0].f30 * d[1].f30 + d[1].f30 * d[2].f30 + d[2].f30 * d[0].f30;
    Ok(quad - (d[0].f21 + d[1].f21 + d[2].f21))
}

/// `1/(ab) + 1/(bc) + 1/(ca)`.
pub fn residual_rational_limit(t: &ConstrainedTriple) -> Result<Complex64> {
    t.require_nonzero()?;
    let [a, b, c] = t.as_array();
    Ok((a * b).inv() + (b * c).inv() + (c * a).inv())
}

/// `cot a cot b + cot b cot c + cot c cot a - 1`.
pub fn residual_trig_limit(t: &ConstrainedTriple) -> Result<Complex64> {
    let mut cots = [Complex64::new(0.0, 0.0); 3];
    for (slot, z) in cots.iter_mut().zip(t.as_array()) {
        let s = z.sin();
        if s.norm() < 1e-12 {
            return Err(Error::Domain(format!("cotangent pole at {z}")));
        }
        *slot = z.cos() / s;
    }
    Ok(cots[0] * cots[1] + cots[1] * cots[2] + cots[2] * cots[0] - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tau() -> HalfPlanePoint {
        HalfPlanePoint::new(c(0.0, 1.1)).unwrap()
    }

    #[test]
    fn three_forms_vanish() {
        let p = SeriesPolicy::default();
        let t = ConstrainedTriple::new(c(0.21, 0.13), c(-0.37, 0.08));
        assert!(residual_fs_weierstrass(&t, &tau(), &p).unwrap().norm() < 1e-7);
        assert!(residual_fs_theta(&t, &tau(), &p).unwrap().norm() < 1e-9);
        assert!(residual_fs_trilog(&t, &tau(), &p).unwrap().norm() < 1e-9);
    }

    #[test]
    fn symmetric_triple() {
        let p = SeriesPolicy::default();
        let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let a = c(0.23, 0.04);
        let t = ConstrainedTriple::new(a, a * omega);
        assert!((t.c() - a * omega * omega).norm() < 1e-15);
        assert!(residual_fs_weierstrass(&t, &tau(), &p).unwrap().norm() < 1e-7);
    }

    #[test]
    fn theta_form_is_rotation_invariant_and_periodic() {
        let p = SeriesPolicy::default();
        let t = ConstrainedTriple::new(c(0.3, -0.1), c(0.12, 0.25));
        let r = residual_fs_theta(&t, &tau(), &p).unwrap();
        let r_rot = residual_fs_theta(&t.rotated(), &tau(), &p).unwrap();
        assert!((r - r_rot).norm() < 1e-14);
        let shifted = ConstrainedTriple::new(t.a() + 1.0, t.b());
        assert!(residual_fs_theta(&shifted, &tau(), &p).unwrap().norm() < 1e-9);
    }

    #[test]
    fn lattice_point_is_rejected() {
        let p = SeriesPolicy::default();
        let t = ConstrainedTriple::new(c(0.3, 0.0), c(-0.3, 0.0));
        assert!(residual_fs_weierstrass(&t, &tau(), &p).is_err());
        assert!(residual_fs_trilog(&t, &tau(), &p).is_err());
    }

    #[test]
    fn rational_limit() {
        let t = ConstrainedTriple::new(c(1.0, 0.0), c(1.0, 0.0));
        assert!(residual_rational_limit(&t).unwrap().norm() < 1e-15);
        let t = ConstrainedTriple::new(c(0.3, 0.1), c(-1.2, 0.0));
        let r = residual_rational_limit(&t).unwrap();
        assert!(r.norm() < 1e-14);
        let lambda = c(1.7, -0.4);
        let scaled = residual_rational_limit(&t.scaled(lambda)).unwrap() * lambda * lambda;
        assert!((scaled - r).norm() < 1e-14);
        assert!(residual_rational_limit(&ConstrainedTriple::new(c(0.0, 0.0), c(1.0, 0.0))).is_err());
    }

    #[test]
    fn trig_limit() {
        let t = ConstrainedTriple::new(c(PI / 4.0, 0.0), c(PI / 4.0, 0.0));
        assert!(residual_trig_limit(&t).unwrap().norm() < 1e-15);
        let t = ConstrainedTriple::new(c(0.4, 0.3), c(-1.1, 0.2));
        assert!(residual_trig_limit(&t).unwrap().norm() < 1e-12);
        assert!(residual_trig_limit(&ConstrainedTriple::new(c(PI, 0.0), c(0.2, 0.0))).is_err());
    }
}
