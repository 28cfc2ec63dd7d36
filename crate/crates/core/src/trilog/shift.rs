use super::series::derivs_in_strip;
use super::{DerivOrder, StripPoint};
use crate::special::{HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result};

// Additive constants of the one-step law z -> z + τ at total order 3,
// indexed by the τ-order.
const ORDER3_CONSTANTS: [f64; 4] = [1.0, -0.5, 1.0 / 3.0, -0.25];

/// Writes `z = z₀ + a + bτ` with `|Im z₀| ≤ Im τ / 2` and `|Re z₀| ≤ 1/2`.
pub fn reduce_to_strip(z: Complex64, tau: &HalfPlanePoint) -> Result<(StripPoint, i64, i64)> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("argument {z} is not finite")));
    }
    let b = (z.im / tau.tau().im).round();
    let shifted = z - tau.tau() * b;
    let a = shifted.re.round();
    let z0 = Complex64::new(shifted.re - a, shifted.im);
    Ok((StripPoint::new(z0, *tau)?, a as i64, b as i64))
}

/// Maps the order-`k` derivatives at `z` to those at `z + τ`.
///
/// `values[m]` holds `f^(k-m, m)`.
pub fn shift_up(values: &[Complex64]) -> Vec<Complex64> {
    let k = values.len() - 1;
    (0..=k)
        .map(|m| {
            let mut s: Complex64 = (0..=m)
                .map(|j| {
                    let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
                    values[j] * (binomial(m, j) * sign)
                })
                .sum();
            if k == 3 {
                s += ORDER3_CONSTANTS[m];
            }
            s
        })
        .collect()
}

/// Inverse of [`shift_up`]: order-`k` derivatives at `z` from those at `z + τ`.
pub fn shift_down(values: &[Complex64]) -> Vec<Complex64> {
    let k = values.len() - 1;
    let w: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(m, &v)| if k == 3 { v - ORDER3_CONSTANTS[m] } else { v })
        .collect();
    (0..=k)
        .map(|m| (0..=m).map(|j| w[j] * binomial(m, j)).sum())
        .collect()
}

/// All derivatives `f^(k-m, m)`, `m = 0..=k`, at an arbitrary `z`.
///
/// For `k ≥ 3` the point is reduced to the strip and the one-step laws are
/// iterated. Orders below 3 pick up non-constant corrections under `z -> z + τ`,
/// so they are only available when no `τ`-shift is needed.
pub fn f_deriv_any(
    k: u32,
    z: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Vec<Complex64>> {
    let orders = (0..=k)
        .map(|m| DerivOrder::new(k - m, m))
        .collect::<Result<Vec<_>>>()?;
    let (z0, _, b) = reduce_to_strip(z, tau)?;
    if k < 3 {
        if b != 0 {
            return Err(Error::OutsideStrip {
                z,
                tau_im: tau.tau().im,
            });
        }
        return derivs_in_strip(&orders, &StripPoint::new(z, *tau)?, policy);
    }
    let mut v = derivs_in_strip(&orders, &z0, policy)?;
    for _ in 0..b.unsigned_abs() {
        v = if b > 0 { shift_up(&v) } else { shift_down(&v) };
    }
    Ok(v)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trilog::f_deriv;

    fn tau() -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(0.21, 1.13)).unwrap()
    }

    fn raw(k: u32, z: Complex64) -> Vec<Complex64> {
        let p = StripPoint::new(z, tau()).unwrap();
        (0..=k)
            .map(|m| f_deriv(DerivOrder::new(k - m, m).unwrap(), &p, &SeriesPolicy::default()).unwrap())
            .collect()
    }

    #[test]
    fn reduction_of_strip_point_is_identity() {
        let z = Complex64::new(0.2, -0.3);
        let (p, a, b) = reduce_to_strip(z, &tau()).unwrap();
        assert_eq!((p.z(), a, b), (z, 0, 0));
    }

    #[test]
    fn reduction_counts() {
        let t = tau();
        let z = Complex64::new(0.1, 0.2) + 3.0 - t.tau() * 2.0;
        let (p, a, b) = reduce_to_strip(z, &t).unwrap();
        assert_eq!((a, b), (3, -2));
        assert!((p.z() - Complex64::new(0.1, 0.2)).norm() < 1e-14);
    }

    #[test]
    fn one_step_laws_at_order_three() {
        // Both ends lie inside the convergence strip, so this compares two raw
        // series evaluations.
        let t = tau();
        let z = Complex64::new(0.17, -0.45 * t.tau().im);
        let below = raw(3, z);
        let above = raw(3, z + t.tau());
        let predicted = shift_up(&below);
        for (p, a) in predicted.iter().zip(&above) {
            assert!((p - a).norm() < 1e-9, "{p} vs {a}");
        }
        assert!((above[0] - below[0] - 1.0).norm() < 1e-9);
    }

    #[test]
    fn one_step_laws_at_order_four() {
        let t = tau();
        let z = Complex64::new(-0.31, -0.4 * t.tau().im);
        let predicted = shift_up(&raw(4, z));
        let above = raw(4, z + t.tau());
        for (p, a) in predicted.iter().zip(&above) {
            assert!((p - a).norm() < 1e-8 * a.norm().max(1.0));
        }
    }

    #[test]
    fn down_inverts_up() {
        let v: Vec<Complex64> = (0..4).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let back = shift_down(&shift_up(&v));
        for (x, y) in v.iter().zip(&back) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn any_point_is_periodic_under_integers() {
        let t = tau();
        let pol = SeriesPolicy::default();
        let z = Complex64::new(0.33, 1.9);
        let a = f_deriv_any(3, z, &t, &pol).unwrap();
        let b = f_deriv_any(3, z + 1.0, &t, &pol).unwrap();
        let c = f_deriv_any(3, z + t.tau() * 2.0, &t, &pol).unwrap();
        for m in 0..4 {
            assert!((a[m] - b[m]).norm() < 1e-9);
        }
        assert!((c[0] - a[0] - 2.0).norm() < 1e-9);
    }

    #[test]
    fn low_orders_refuse_tau_shifts() {
        let t = tau();
        let pol = SeriesPolicy::default();
        assert!(f_deriv_any(2, Complex64::new(0.1, 0.1), &t, &pol).is_ok());
        assert!(f_deriv_any(2, Complex64::new(0.1, 1.0), &t, &pol).is_err());
    }
}
