use super::{divisor_sigma, geometric_tail, HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result, TWO_PI_I};

/// `(d/dτ)^m E_k(τ)` for `k ∈ {2, 4, 6}`, from
/// `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n`, differentiated term-wise.
pub fn eisenstein(
    k: u32,
    tau: &HalfPlanePoint,
    m: u32,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    // -2k / B_k
    let coeff: f64 = match k {
        2 => -24.0,
        4 => 240.0,
        6 => -504.0,
        _ => {
            return Err(Error::OutOfRange {
                what: "Eisenstein weight",
                index: i64::from(k),
                min: 2,
                max: 6,
            })
        }
    };
    let q = tau.q();
    let rho = tau.nome_abs();
    let scale = std::f64::consts::TAU.powi(m as i32) * coeff.abs();
    // σ_{k-1}(n) ≤ n^{k-1} ζ(k-1) ≤ 2 n^{k-1} for k ≥ 4; σ_1(n) ≤ n (1 + ln n) ≤ n^2.
    let power = f64::from(m) + if k == 2 { 2.0 } else { f64::from(k - 1) };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=policy.max_terms() {
        qn *= q;
        let sigma = divisor_sigma(k - 1, n as u64)? as f64;
        sum += qn * sigma * (TWO_PI_I * n as f64).powu(m);
        let b_n = 2.0 * scale * (n as f64).powf(power) * rho.powi(n as i32);
        if let Some(tail) = geometric_tail(b_n, n, power, rho) {
            if tail < policy.eps() {
                let constant = if m == 0 { 1.0 } else { 0.0 };
                return Ok(sum * coeff + constant);
            }
        }
    }
    Err(Error::NonConvergence {
        what: "Eisenstein series",
        max_terms: policy.max_terms(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(re, im)).unwrap()
    }

    // Independent double sum Σ_n Σ_{d|n} d³ q^n.
    fn e4_double_sum(t: &HalfPlanePoint) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for n in 1..200u64 {
            let div: f64 = (1..=n).filter(|d| n % d == 0).map(|d| (d * d * d) as f64).sum();
            s += t.q().powu(n as u32) * div;
        }
        1.0 + 240.0 * s
    }

    #[test]
    fn tiny_nome_gives_one() {
        let p = SeriesPolicy::default();
        let t = tau(0.0, 8.0);
        assert!((eisenstein(4, &t, 0, &p).unwrap() - 1.0).norm() < 1e-16 * 480.0 + 1e-16);
    }

    #[test]
    fn e4_matches_double_sum() {
        let p = SeriesPolicy::default();
        for t in [tau(0.0, 1.0), tau(0.3, 0.8), tau(-0.45, 1.7)] {
            let got = eisenstein(4, &t, 0, &p).unwrap();
            assert!((got - e4_double_sum(&t)).norm() < 1e-12);
        }
    }

    #[test]
    fn e4_at_i() {
        // E_4(i) = 3 Γ(1/4)^8 / (2π)^6
        let gamma_quarter: f64 = 3.6256099082219083;
        let want = 3.0 * gamma_quarter.powi(8) / std::f64::consts::TAU.powi(6);
        let got = eisenstein(4, &tau(0.0, 1.0), 0, &SeriesPolicy::default()).unwrap();
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn unsupported_weight() {
        assert!(eisenstein(8, &tau(0.0, 1.0), 0, &SeriesPolicy::default()).is_err());
    }
}
