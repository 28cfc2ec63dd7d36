use std::f64::consts::{FRAC_PI_2, TAU};

use super::{DerivOrder, StripPoint, POLE_GUARD};
use crate::special::{geometric_tail, polylog, zeta_int, SeriesPolicy};
use crate::{Complex64, Error, Result, TWO_PI_I};

/// `f(z, τ)` on the strip.
pub fn f_eval(p: &StripPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    f_deriv(DerivOrder::new(0, 0)?, p, policy)
}

/// `f^(n,m)(z, τ) = ∂_z^n ∂_τ^m f` on the strip, from the term-wise derivative of
/// the `q`-expansion.
pub fn f_deriv(order: DerivOrder, p: &StripPoint, policy: &SeriesPolicy) -> Result<Complex64> {
    Ok(derivs_in_strip(&[order], p, policy)?[0])
}

/// Several derivatives at one strip point, sharing the `q`-series.
pub(crate) fn derivs_in_strip(
    orders: &[DerivOrder],
    p: &StripPoint,
    policy: &SeriesPolicy,
) -> Result<Vec<Complex64>> {
    let z = p.z();
    let tau = p.tau();
    if orders
        .iter()
        .any(|o| o.tau_order() == 0 && o.z_order() >= 2)
        && (z - z.re.round()).norm() < POLE_GUARD
    {
        return Err(Error::NearLattice {
            z,
            margin: POLE_GUARD,
        });
    }
    let series = q_series(orders, z, tau.q(), tau.nome_abs(), policy)?;
    orders
        .iter()
        .zip(series)
        .map(|(&o, s)| Ok(li3_part(o, z, policy)? + poly_part(o, z, tau.tau()) + s))
        .collect()
}

// ∂ⁿ/∂zⁿ of (2πi)^{-3} (Li₃(e^{2πiz}) - ζ(3)); independent of τ. The constant
// makes f(0, τ) = 0, matching the regularised-sum definition.
fn li3_part(order: DerivOrder, z: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    if order.tau_order() > 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = TWO_PI_I;
    let x = (w * z).exp();
    let n = order.z_order();
    match n {
        0 => Ok((polylog(3, x, policy)? - zeta_int(3)?) / w.powu(3)),
        1..=2 => Ok(polylog(3 - n, x, policy)? / w.powu(3 - n)),
        _ => Ok(w.powu(n - 3) * polylog_negative(n - 3, x)),
    }
}

// Li_{-k}(x) = Σ_{j<k} A(k, j) x^{j+1} / (1-x)^{k+1}, Li_0(x) = x/(1-x).
fn polylog_negative(k: u32, x: Complex64) -> Complex64 {
    let one_minus = Complex64::new(1.0, 0.0) - x;
    if k == 0 {
        return x / one_minus;
    }
    let mut numer = Complex64::new(0.0, 0.0);
    let mut xp = x;
    for j in 0..k {
        numer += xp * eulerian(k, j);
        xp *= x;
    }
    numer / one_minus.powu(k + 1)
}

fn eulerian(n: u32, k: u32) -> f64 {
    // A(n, k) = Σ_{i=0}^{k} (-1)^i C(n+1, i) (k+1-i)^n
    let mut total = 0.0;
    let mut binom = 1.0;
    for i in 0..=k {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * binom * f64::from(k + 1 - i).powi(n as i32);
        binom = binom * f64::from(n + 1 - i) / f64::from(i + 1);
    }
    total
}

// ∂_z^n ∂_τ^m of z³/12 - z²τ/24.
fn poly_part(order: DerivOrder, z: Complex64, tau: Complex64) -> Complex64 {
    match (order.z_order(), order.tau_order()) {
        (0, 0) => z * z * z / 12.0 - z * z * tau / 24.0,
        (1, 0) => z * z / 4.0 - z * tau / 12.0,
        (2, 0) => z / 2.0 - tau / 12.0,
        (3, 0) => Complex64::new(0.5, 0.0),
        (0, 1) => -z * z / 24.0,
        (1, 1) => -z / 12.0,
        (2, 1) => Complex64::new(-1.0 / 12.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    }
}

// -2 (2πi)^{-3} Σ_r Q_m(r) r^{-3} ∂_z^n (1 - cos 2πrz), with
// Q_m(r) = ∂_τ^m q^r/(1-q^r) = Σ_s (2πi r s)^m q^{rs}.
fn q_series(
    orders: &[DerivOrder],
    z: Complex64,
    q: Complex64,
    q_abs: f64,
    policy: &SeriesPolicy,
) -> Result<Vec<Complex64>> {
    let w = TWO_PI_I;
    let max_m = orders.iter().map(|o| o.tau_order()).max().unwrap_or(0);
    let rho = q_abs * (TAU * z.im.abs()).exp();
    if rho >= 1.0 {
        return Err(Error::OutsideStrip {
            z,
            tau_im: -q_abs.ln() / TAU,
        });
    }
    let prefactor = -2.0 / w.powu(3);
    let mut sums = vec![Complex64::new(0.0, 0.0); orders.len()];
    let mut qr = Complex64::new(1.0, 0.0);
    let mut q_derivs = vec![Complex64::new(0.0, 0.0); max_m as usize + 1];
    for r in 1..=policy.max_terms() {
        qr *= q;
        let rf = r as f64;
        let q_abs_r = q_abs.powi(r as i32);
        lambert_derivs(qr, q_abs_r, rf, &mut q_derivs, policy)?;
        let k = TAU * rf;
        let kz = z * k;
        let mut tail_bound: f64 = 0.0;
        for (slot, o) in sums.iter_mut().zip(orders) {
            let n = o.z_order();
            let m = o.tau_order() as usize;
            let trig = if n == 0 {
                1.0 - kz.cos()
            } else {
                -(kz + FRAC_PI_2 * f64::from(n)).cos() * k.powi(n as i32)
            };
            *slot += q_derivs[m] * trig / rf.powi(3);

            let fact_m: f64 = (1..=m).map(|i| i as f64).product();
            let power = f64::from(n) + m as f64 - 3.0;
            let c = 4.0 * TAU.powf(f64::from(n) + m as f64) * fact_m / (1.0 - q_abs).powi(m as i32 + 1)
                / TAU.powi(3);
            let b_r = c * rf.powf(power) * rho.powi(r as i32);
            tail_bound = tail_bound.max(geometric_tail(b_r, r, power, rho).unwrap_or(f64::INFINITY));
        }
        if tail_bound < policy.eps() {
            return Ok(sums.into_iter().map(|s| s * prefactor).collect());
        }
    }
    Err(Error::NonConvergence {
        what: "trilogarithm q-series",
        max_terms: policy.max_terms(),
    })
}

// out[m] = Σ_s (2πi r s)^m q^{rs}; out[0] in closed form.
fn lambert_derivs(
    qr: Complex64,
    q_abs_r: f64,
    r: f64,
    out: &mut [Complex64],
    policy: &SeriesPolicy,
) -> Result<()> {
    out[0] = qr / (1.0 - qr);
    if out.len() == 1 {
        return Ok(());
    }
    for v in out.iter_mut().skip(1) {
        *v = Complex64::new(0.0, 0.0);
    }
    let max_m = out.len() - 1;
    let mut qrs = Complex64::new(1.0, 0.0);
    for s in 1..=policy.max_terms() {
        qrs *= qr;
        if qrs == Complex64::new(0.0, 0.0) {
            return Ok(());
        }
        let factor = TWO_PI_I * (r * s as f64);
        let mut pow = Complex64::new(1.0, 0.0);
        for v in out.iter_mut().skip(1) {
            pow *= factor;
            *v += pow * qrs;
        }
        let b_s = (TAU * r * s as f64).powi(max_m as i32) * q_abs_r.powi(s as i32);
        let top = out[max_m].norm().max(f64::MIN_POSITIVE);
        if let Some(tail) = geometric_tail(b_s, s, max_m as f64, q_abs_r) {
            if tail < 1e-3 * policy.eps() * top.min(1.0) || tail < f64::EPSILON * 1e-3 * top {
                return Ok(());
            }
        }
    }
    Err(Error::NonConvergence {
        what: "Lambert series derivative",
        max_terms: policy.max_terms(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::HalfPlanePoint;

    fn point(z: (f64, f64), tau: (f64, f64)) -> StripPoint {
        let t = HalfPlanePoint::new(Complex64::new(tau.0, tau.1)).unwrap();
        StripPoint::new(Complex64::new(z.0, z.1), t).unwrap()
    }

    #[test]
    fn vanishes_at_origin_and_matches_direct_sum() {
        let policy = SeriesPolicy::default();
        assert!(f_eval(&point((0.0, 0.0), (0.3, 1.2)), &policy).unwrap().norm() < 1e-16);

        let p = point((0.27, -0.31), (-0.2, 0.9));
        let one = Complex64::new(1.0, 0.0);
        let zeta = (TWO_PI_I * p.z()).exp();
        let direct = (super::super::elliptic_li3_direct(zeta, &p.tau(), &policy).unwrap()
            - super::super::elliptic_li3_direct(one, &p.tau(), &policy).unwrap())
            / TWO_PI_I.powu(3);
        assert!((f_eval(&p, &policy).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn eulerian_rows() {
        let row: Vec<f64> = (0..4).map(|k| eulerian(4, k)).collect();
        assert_eq!(row, vec![1.0, 11.0, 11.0, 1.0]);
    }

    #[test]
    fn trig_limit_of_f21() {
        let p = point((0.3, 0.0), (0.0, 20.0));
        let v = f_deriv(DerivOrder::F21, &p, &SeriesPolicy::default()).unwrap();
        assert!((v + 1.0 / 12.0).norm() < 1e-12);
    }

    #[test]
    fn f30_is_odd() {
        let pol = SeriesPolicy::default();
        let a = f_deriv(DerivOrder::F30, &point((0.27, 0.19), (0.1, 1.05)), &pol).unwrap();
        let b = f_deriv(DerivOrder::F30, &point((-0.27, -0.19), (0.1, 1.05)), &pol).unwrap();
        assert!((a + b).norm() < 1e-9);
    }

    #[test]
    fn leading_pole_of_f30() {
        let pol = SeriesPolicy::default();
        let p = point((1e-3, 0.0), (0.0, 1.0));
        let v = f_deriv(DerivOrder::F30, &p, &pol).unwrap();
        assert!((p.z() * v + 1.0 / TWO_PI_I).norm() < 1e-5);
    }

    #[test]
    fn pole_guard() {
        let pol = SeriesPolicy::default();
        let p = point((1.0 + 1e-10, 0.0), (0.0, 1.0));
        assert!(matches!(
            f_deriv(DerivOrder::F30, &p, &pol),
            Err(Error::NearLattice { .. })
        ));
        // τ-derivatives carry no pole at z = 0
        let p = point((0.0, 0.0), (0.0, 1.0));
        assert!(f_deriv(DerivOrder::F21, &p, &pol).is_ok());
    }
}
