use super::{theta1, HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result};

/// Guard radius around lattice points.
pub const POLE_GUARD: f64 = 1e-8;

/// Weierstrass `℘(z)` and `ζ(z)` for the lattice `Z + τZ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassPair {
    pub p: Complex64,
    pub zeta: Complex64,
}

/// `ζ(z) = ϑ₁'/ϑ₁(z) + c₁ z`, `℘(z) = -(log ϑ₁)''(z) + c₂`, with the constants
/// fixed by `ζ(z) - 1/z → 0` and `℘(z) - 1/z² → 0` as `z → 0`:
/// `c₂ = ϑ₁'''(0) / (3 ϑ₁'(0)) = -c₁`.
pub fn weierstrass_pair(
    z: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<WeierstrassPair> {
    if tau.lattice_distance(z) < POLE_GUARD {
        return Err(Error::NearLattice {
            z,
            margin: POLE_GUARD,
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let c2 = theta1(zero, tau, 3, 0, policy)? / (3.0 * theta1(zero, tau, 1, 0, policy)?);
    let t0 = theta1(z, tau, 0, 0, policy)?;
    let t1 = theta1(z, tau, 1, 0, policy)? / t0;
    let t2 = theta1(z, tau, 2, 0, policy)? / t0;
    Ok(WeierstrassPair {
        p: -(t2 - t1 * t1) + c2,
        zeta: t1 - c2 * z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_normalisation() {
        let p = SeriesPolicy::default();
        let t = HalfPlanePoint::new(Complex64::new(0.1, 1.1)).unwrap();
        let z = Complex64::new(1e-3, 0.0);
        let w = weierstrass_pair(z, &t, &p).unwrap();
        assert!((z * w.zeta - 1.0).norm() < 1e-5);
        assert!((z * z * w.p - 1.0).norm() < 1e-5);
    }

    #[test]
    fn parity() {
        let p = SeriesPolicy::default();
        let t = HalfPlanePoint::new(Complex64::new(-0.2, 0.95)).unwrap();
        let z = Complex64::new(0.31, 0.17);
        let a = weierstrass_pair(z, &t, &p).unwrap();
        let b = weierstrass_pair(-z, &t, &p).unwrap();
        assert!((a.p - b.p).norm() < 1e-12);
        assert!((a.zeta + b.zeta).norm() < 1e-12);
    }

    #[test]
    fn guard_near_lattice() {
        let p = SeriesPolicy::default();
        let t = HalfPlanePoint::new(Complex64::new(0.0, 1.0)).unwrap();
        let z = Complex64::new(1.0 + 1e-10, 1.0);
        assert!(matches!(weierstrass_pair(z, &t, &p), Err(Error::NearLattice { .. })));
    }
}
