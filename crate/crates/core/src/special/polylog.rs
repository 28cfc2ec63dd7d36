use super::{bernoulli_f64, zeta_int, SeriesPolicy, BERNOULLI_MAX};
use crate::{Complex64, Error, Result};

// |z| at or below this uses the defining power series directly; at or above its
// reciprocal, the inversion formula. In between, the expansion in log z.
const DIRECT_RADIUS: f64 = 0.8;

/// Polylogarithm `Li_N(z)` for integer `N ≥ 1`, continued to `C \ [1, ∞)`.
pub fn polylog(order: u32, z: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    if order == 0 {
        return Err(Error::OutOfRange {
            what: "polylog order",
            index: 0,
            min: 1,
            max: i64::from(u32::MAX),
        });
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("polylog argument {z} is not finite")));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::OnBranchCut(z));
    }
    if order == 1 {
        if z == Complex64::new(1.0, 0.0) {
            return Err(Error::OnBranchCut(z));
        }
        return Ok(-(Complex64::new(1.0, 0.0) - z).ln());
    }
    let r = z.norm();
    if r == 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else if r <= DIRECT_RADIUS {
        direct_series(order, z, policy)
    } else if r >= 1.0 / DIRECT_RADIUS {
        let inner = direct_series(order, z.inv(), policy)?;
        Ok(polylog_inversion(order, z.inv(), inner))
    } else {
        log_series(order, z, policy)
    }
}

/// Given `Li_N(w)`, returns `Li_N(1/w)` through
/// `(-1)^{N-1} Li_N(1/w) = Li_N(w) + Σ_{j=0}^{N} B_j (2πi)^j (log w)^{N-j} / ((N-j)! j!)`.
///
/// The standard form holds for `Im w ≥ 0`; for `Im w < 0` the conjugate relation
/// (with `-2πi`) is used, so the map is an involution away from the real axis.
pub fn polylog_inversion(order: u32, w: Complex64, li_w: Complex64) -> Complex64 {
    let n = order as usize;
    let two_pi_i = if w.im >= 0.0 {
        crate::TWO_PI_I
    } else {
        -crate::TWO_PI_I
    };
    let log_w = w.ln();
    let mut correction = Complex64::new(0.0, 0.0);
    let mut fact_j = 1.0;
    for j in 0..=n {
        if j > 0 {
            fact_j *= j as f64;
        }
        let b = bernoulli_f64(j).expect("polylog order within Bernoulli table");
        if b == 0.0 {
            continue;
        }
        let fact_nj: f64 = (1..=(n - j)).map(|k| k as f64).product();
        correction += two_pi_i.powu(j as u32) * log_w.powu((n - j) as u32) * (b / (fact_nj * fact_j));
    }
    let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
    (li_w + correction) * sign
}

fn direct_series(order: u32, z: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    let r = z.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = z;
    for n in 1..=policy.max_terms() {
        let nf = n as f64;
        sum += power / nf.powi(order as i32);
        let bound = r.powi(n as i32) / nf.powi(order as i32);
        if bound * r / (1.0 - r) < policy.eps() {
            return Ok(sum);
        }
        power *= z;
    }
    Err(Error::NonConvergence {
        what: "polylog power series",
        max_terms: policy.max_terms(),
    })
}

// Li_s(e^μ) = Σ_{k≠s-1} ζ(s-k) μ^k/k! + μ^{s-1}/(s-1)! (H_{s-1} - log(-μ)), |μ| < 2π.
fn log_series(order: u32, z: Complex64, policy: &SeriesPolicy) -> Result<Complex64> {
    let s = order as i64;
    let mu = z.ln();
    if mu.norm() == 0.0 {
        return Ok(Complex64::new(zeta_int(s)?, 0.0));
    }
    let rho = mu.norm() / std::f64::consts::TAU;
    let harmonic: f64 = (1..s).map(|k| 1.0 / k as f64).sum();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term_pow = Complex64::new(1.0, 0.0); // μ^k / k!
    let k_max = (s as usize + BERNOULLI_MAX - 1).min(policy.max_terms());
    for k in 0..=k_max {
        if k > 0 {
            term_pow *= mu / k as f64;
        }
        let ki = k as i64;
        if ki == s - 1 {
            sum += term_pow * (Complex64::new(harmonic, 0.0) - (-mu).ln());
            continue;
        }
        let zeta = zeta_int(s - ki)?;
        let term = term_pow * zeta;
        sum += term;
        // |ζ(1-2j)| grows like 2 (2j-1)!/(2π)^{2j}, so beyond k = s the terms
        // shrink like ρ^k; bound the tail by the current term.
        if ki > s && zeta != 0.0 && term.norm() * rho / (1.0 - rho) * 2.0 < policy.eps() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "polylog logarithmic expansion",
        max_terms: k_max,
    })
}
