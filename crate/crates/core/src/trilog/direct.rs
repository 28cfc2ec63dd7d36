use super::chi;
use crate::special::{geometric_tail, polylog, zeta_int, HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result, TWO_PI_I};

const ZETA3_BOUND: f64 = 1.2020569031595942;

/// Regularised elliptic trilogarithm
/// `ℒi₃(ζ, q) = Σ_{n≥0} Li₃(qⁿζ) + Σ_{n≥1} Li₃(qⁿ/ζ) - χ₃(ζ, q)`
/// summed directly, for `|q| < |ζ| < 1/|q|`.
pub fn elliptic_li3_direct(
    zeta: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let rho = tau.nome_abs();
    let r = zeta.norm();
    if !(r > rho && r * rho < 1.0) {
        return Err(Error::Domain(format!(
            "zeta = {zeta} outside the annulus |q| < |zeta| < 1/|q| with |q| = {rho:e}"
        )));
    }
    let q = tau.q();
    let inv = zeta.inv();
    let mut sum = polylog(3, zeta, policy)?;
    let mut qn = Complex64::new(1.0, 0.0);
    let mut converged = false;
    for n in 1..=policy.max_terms() {
        qn *= q;
        sum += polylog(3, qn * zeta, policy)? + polylog(3, qn * inv, policy)?;
        let tail = ZETA3_BOUND * (r + 1.0 / r) * rho.powi(n as i32 + 1) / (1.0 - rho);
        if tail < policy.eps() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "elliptic trilogarithm direct sum",
            max_terms: policy.max_terms(),
        });
    }
    Ok(sum - chi(3, zeta, tau)?)
}

/// `(d/dτ)^m ℒi₃(1, q)`, differentiated term-wise:
/// `ℒi₃(1, q) = ζ(3) + 2 Σ_{n,k≥1} q^{nk}/k³ + (2πiτ)³/720`.
pub fn elliptic_li3_one_tau_deriv(
    m: u32,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let w = TWO_PI_I;
    let t = tau.tau();
    let q = tau.q();
    let rho = tau.nome_abs();
    // -χ₃(1, q) = (wτ)³/720 and its τ-derivatives
    let poly = match m {
        0 => (w * t).powu(3) / 720.0,
        1 => w.powu(3) * 3.0 * t * t / 720.0,
        2 => w.powu(3) * 6.0 * t / 720.0,
        3 => w.powu(3) * 6.0 / 720.0,
        _ => Complex64::new(0.0, 0.0),
    };
    let constant = if m == 0 { zeta_int(3)? } else { 0.0 };
    let fact_m: f64 = (1..=m).map(f64::from).product();
    let scale = 2.0 * std::f64::consts::TAU.powi(m as i32) * fact_m.max(1.0) / (1.0 - rho).powi(m as i32 + 1);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=policy.max_terms() {
        qn *= q;
        let rho_n = rho.powi(n as i32);
        let mut inner = Complex64::new(0.0, 0.0);
        let mut qnk = Complex64::new(1.0, 0.0);
        let mut done = false;
        for k in 1..=policy.max_terms() {
            qnk *= qn;
            let nk = (n * k) as f64;
            inner += qnk * (w * nk).powu(m) / (k as f64).powi(3);
            let b_k = std::f64::consts::TAU.powi(m as i32) * nk.powi(m as i32) * rho_n.powi(k as i32)
                / (k as f64).powi(3);
            if let Some(tail) = geometric_tail(b_k, k, f64::from(m), rho_n) {
                if tail < 0.1 * policy.eps() {
                    done = true;
                    break;
                }
            }
        }
        if !done {
            return Err(Error::NonConvergence {
                what: "Li3(1, q) inner sum",
                max_terms: policy.max_terms(),
            });
        }
        sum += inner;
        let b_n = scale * (n as f64).powi(m as i32) * rho_n;
        if let Some(tail) = geometric_tail(b_n, n, f64::from(m), rho) {
            if tail < policy.eps() {
                return Ok(2.0 * sum + poly + constant);
            }
        }
    }
    Err(Error::NonConvergence {
        what: "Li3(1, q) outer sum",
        max_terms: policy.max_terms(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_nome_reduces_to_zeta3_minus_chi() {
        let p = SeriesPolicy::default();
        let t = HalfPlanePoint::new(Complex64::new(0.1, 7.0)).unwrap();
        assert!(t.nome_abs() < 1e-18);
        let one = Complex64::new(1.0, 0.0);
        let got = elliptic_li3_direct(one, &t, &p).unwrap();
        let want = zeta_int(3).unwrap() - chi(3, one, &t).unwrap();
        assert!((got - want).norm() < 1e-16 * want.norm().max(1.0));
    }

    #[test]
    fn term_wise_value_matches_direct_sum() {
        let p = SeriesPolicy::default();
        let t = HalfPlanePoint::new(Complex64::new(-0.3, 0.85)).unwrap();
        let a = elliptic_li3_direct(Complex64::new(1.0, 0.0), &t, &p).unwrap();
        let b = elliptic_li3_one_tau_deriv(0, &t, &p).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn annulus_is_enforced() {
        let p = SeriesPolicy::default();
        let t = HalfPlanePoint::new(Complex64::new(0.0, 1.0)).unwrap();
        assert!(elliptic_li3_direct(Complex64::new(1e-4, 0.0), &t, &p).is_err());
        assert!(elliptic_li3_direct(Complex64::new(0.0, 1e4), &t, &p).is_err());
    }
}
