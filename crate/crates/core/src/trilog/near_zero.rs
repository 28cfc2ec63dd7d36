use std::f64::consts::TAU;

use super::{DerivOrder, StripPoint, POLE_GUARD};
use crate::special::{bernoulli_f64, eisenstein, zeta_int, HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result, TWO_PI_I};

/// Largest number of Eisenstein terms accepted by [`f_series1_thirdderiv`].
pub const MAX_EISENSTEIN_TERMS: usize = 30;

// Value and first three τ-derivatives.
type Jet = [Complex64; 4];

fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    const BINOM: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0],
        [1.0, 3.0, 3.0, 1.0],
    ];
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (m, slot) in out.iter_mut().enumerate() {
        for j in 0..=m {
            *slot += a[j] * b[m - j] * BINOM[m][j];
        }
    }
    out
}

fn eisenstein_jet(k: u32, tau: &HalfPlanePoint, policy: &SeriesPolicy) -> Result<Jet> {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (m, slot) in out.iter_mut().enumerate() {
        *slot = eisenstein(k, tau, m as u32, policy)?;
    }
    Ok(out)
}

// Normalised E_2, E_4, ..., E_{2 count} as jets. Weights ≥ 8 come from the
// Laurent recursion of ℘: c_k = 3/((2k+1)(k-3)) Σ_{j=2}^{k-2} c_j c_{k-j}, with
// c_k = (2k-1) G_{2k} and G_{2k} = 2 ζ(2k) E_{2k}.
fn eisenstein_jets(count: usize, tau: &HalfPlanePoint, policy: &SeriesPolicy) -> Result<Vec<Jet>> {
    let mut e = vec![eisenstein_jet(2, tau, policy)?];
    if count == 1 {
        return Ok(e);
    }
    let g_scale = |k: usize| -> Result<f64> { Ok((2 * k - 1) as f64 * 2.0 * zeta_int(2 * k as i64)?) };
    // c[k] for k = 2..=count
    let mut c: Vec<Jet> = vec![[Complex64::new(0.0, 0.0); 4]; count + 1];
    c[2] = eisenstein_jet(4, tau, policy)?.map(|x| x * g_scale(2).unwrap_or(f64::NAN));
    if count >= 3 {
        c[3] = eisenstein_jet(6, tau, policy)?.map(|x| x * g_scale(3).unwrap_or(f64::NAN));
    }
    for k in 4..=count {
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for j in 2..=k - 2 {
            let p = jet_mul(&c[j], &c[k - j]);
            for (a, b) in acc.iter_mut().zip(p) {
                *a += b;
            }
        }
        let scale = 3.0 / ((2 * k + 1) as f64 * (k - 3) as f64);
        c[k] = acc.map(|x| x * scale);
    }
    for (k, ck) in c.iter().enumerate().skip(2) {
        let s = g_scale(k)?;
        e.push(ck.map(|x| x / s));
    }
    Ok(e)
}

/// `(d/dτ)^m E_k(τ)` for even `k ≥ 2`, `m ≤ 3`, normalised to constant term 1.
///
/// Weights 2, 4 and 6 are the `q`-series; higher weights are polynomials in
/// `E_4, E_6` generated by the Laurent recursion of ℘.
pub fn eisenstein_higher(
    k: u32,
    tau: &HalfPlanePoint,
    m: u32,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let max_weight = 2 * MAX_EISENSTEIN_TERMS as u32;
    if k < 2 || k % 2 == 1 || k > max_weight {
        return Err(Error::OutOfRange {
            what: "Eisenstein weight",
            index: i64::from(k),
            min: 2,
            max: i64::from(max_weight),
        });
    }
    if m > 3 {
        return Err(Error::OutOfRange {
            what: "Eisenstein derivative order",
            index: i64::from(m),
            min: 0,
            max: 3,
        });
    }
    let jets = eisenstein_jets((k / 2) as usize, tau, policy)?;
    Ok(jets[(k / 2 - 1) as usize][m as usize])
}

/// Third-order derivative from the small-`z` expansion
///
/// ```text
/// f ≃ -(2πi)^{-1} (z² log z / 2 + z² log η) + (2πi)^{-3} Σ_{n≥1} (-1)^n E_{2n} B_{2n} (2πz)^{2n+2} / ((2n+2)! 2n)
/// ```
///
/// truncated after `n_max` Eisenstein terms. Valid for `0 < |z| < 1`; meant only
/// as an independent check of [`super::f_deriv`] near the origin.
pub fn f_series1_thirdderiv(order: DerivOrder, p: &StripPoint, n_max: usize) -> Result<Complex64> {
    if order.total() != 3 {
        return Err(Error::OutOfRange {
            what: "total derivative order",
            index: i64::from(order.total()),
            min: 3,
            max: 3,
        });
    }
    if n_max == 0 || n_max > MAX_EISENSTEIN_TERMS {
        return Err(Error::OutOfRange {
            what: "Eisenstein term count",
            index: n_max as i64,
            min: 1,
            max: MAX_EISENSTEIN_TERMS as i64,
        });
    }
    let z = p.z();
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("|z| = {} is outside the unit disc", z.norm())));
    }
    let n = order.z_order();
    let m = order.tau_order() as usize;
    if m == 0 && z.norm() < POLE_GUARD {
        return Err(Error::NearLattice {
            z,
            margin: POLE_GUARD,
        });
    }
    let policy = SeriesPolicy::default();
    let w = TWO_PI_I;
    let jets = eisenstein_jets(n_max, p.tau(), &policy)?;

    let mut total = if m == 0 {
        // ∂_z³ (z² log z / 2) = 1/z
        -(w * z).inv()
    } else {
        // ∂_τ^m log η = (2πi/24) ∂_τ^{m-1} E_2
        let log_eta = w / 24.0 * jets[0][m - 1];
        let z_part = match n {
            2 => Complex64::new(2.0, 0.0),
            1 => z * 2.0,
            _ => z * z,
        };
        -log_eta * z_part / w
    };

    let mut series = Complex64::new(0.0, 0.0);
    for (idx, e) in jets.iter().enumerate() {
        let k = idx + 1;
        let power = 2 * k + 2;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let fact_power: f64 = (1..=power).map(|i| i as f64).product();
        let falling: f64 = (0..n as usize).map(|i| (power - i) as f64).product();
        let coeff = sign * bernoulli_f64(2 * k)? * TAU.powi(power as i32) * falling
            / (fact_power * (2 * k) as f64);
        series += e[m] * coeff * z.powu((power - n as usize) as u32);
    }
    total += series / w.powu(3);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trilog::f_deriv;

    fn tau() -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(0.05, 1.0)).unwrap()
    }

    #[test]
    fn modular_form_relations() {
        let t = tau();
        let pol = SeriesPolicy::default();
        let e4 = eisenstein(4, &t, 0, &pol).unwrap();
        let e6 = eisenstein(6, &t, 0, &pol).unwrap();
        let e8 = eisenstein_higher(8, &t, 0, &pol).unwrap();
        let e10 = eisenstein_higher(10, &t, 0, &pol).unwrap();
        let e12 = eisenstein_higher(12, &t, 0, &pol).unwrap();
        assert!((e8 - e4 * e4).norm() < 1e-12);
        assert!((e10 - e4 * e6).norm() < 1e-12);
        assert!((e12 * 691.0 - e4.powu(3) * 441.0 - e6 * e6 * 250.0).norm() < 1e-9);
        let d_e8 = eisenstein_higher(8, &t, 1, &pol).unwrap();
        let d_e4 = eisenstein(4, &t, 1, &pol).unwrap();
        assert!((d_e8 - e4 * d_e4 * 2.0).norm() < 1e-9 * d_e8.norm());
    }

    #[test]
    fn weight_range() {
        let pol = SeriesPolicy::default();
        assert!(eisenstein_higher(7, &tau(), 0, &pol).is_err());
        assert!(eisenstein_higher(64, &tau(), 0, &pol).is_err());
        assert!(eisenstein_higher(8, &tau(), 4, &pol).is_err());
    }

    #[test]
    fn agrees_with_q_expansion_near_origin() {
        let p = StripPoint::new(Complex64::new(0.05, 0.02), tau()).unwrap();
        let pol = SeriesPolicy::default();
        for order in [DerivOrder::F30, DerivOrder::F21, DerivOrder::F12, DerivOrder::F03] {
            let a = f_series1_thirdderiv(order, &p, 8).unwrap();
            let b = f_deriv(order, &p, &pol).unwrap();
            assert!((a - b).norm() < 1e-7, "{order:?}: {a} vs {b}");
        }
    }

    #[test]
    fn principal_part() {
        let p = StripPoint::new(Complex64::new(1e-3, 0.0), tau()).unwrap();
        let v = f_series1_thirdderiv(DerivOrder::F30, &p, 8).unwrap();
        assert!((p.z() * v + 1.0 / TWO_PI_I).norm() < 1e-5);
    }

    #[test]
    fn domain_checks() {
        let p = StripPoint::new(Complex64::new(0.9, 0.5), tau()).unwrap();
        assert!(f_series1_thirdderiv(DerivOrder::F30, &p, 8).is_err());
        let p = StripPoint::new(Complex64::new(0.1, 0.0), tau()).unwrap();
        assert!(f_series1_thirdderiv(DerivOrder::new(2, 0).unwrap(), &p, 8).is_err());
        assert!(f_series1_thirdderiv(DerivOrder::F30, &p, 0).is_err());
    }
}
