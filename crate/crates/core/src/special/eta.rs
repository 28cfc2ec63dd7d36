use super::{HalfPlanePoint, SeriesPolicy};
use crate::{Complex64, Error, Result, TWO_PI_I};

/// Dedekind `η(τ) = q^{1/24} Π (1 - q^n)` with `q^{1/24} = e^{2πiτ/24}`.
pub fn dedekind_eta(tau: &HalfPlanePoint, policy: &SeriesPolicy) -> Result<Complex64> {
    let q = tau.q();
    let rho = tau.nome_abs();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=policy.max_terms() {
        qn *= q;
        prod *= 1.0 - qn;
        // |log Π_{k>n}(1 - q^k)| ≤ 2 Σ_{k>n} ρ^k for ρ ≤ 1/2
        let tail = 2.0 * rho.powi(n as i32 + 1) / (1.0 - rho);
        if tail * prod.norm().max(1.0) < policy.eps() {
            return Ok((TWO_PI_I * tau.tau() / 24.0).exp() * prod);
        }
    }
    Err(Error::NonConvergence {
        what: "Dedekind eta product",
        max_terms: policy.max_terms(),
    })
}

/// `η'(τ)/η(τ) = 2πi/24 - 2πi Σ n q^n/(1 - q^n)`, from the logarithmic
/// derivative of the product.
pub fn dedekind_eta_log_deriv(tau: &HalfPlanePoint, policy: &SeriesPolicy) -> Result<Complex64> {
    let q = tau.q();
    let rho = tau.nome_abs();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=policy.max_terms() {
        qn *= q;
        sum += qn * n as f64 / (1.0 - qn);
        let b_n = 2.0 * n as f64 * rho.powi(n as i32);
        if let Some(tail) = super::geometric_tail(b_n, n, 1.0, rho) {
            if tail * std::f64::consts::TAU < policy.eps() {
                return Ok(TWO_PI_I * (1.0 / 24.0 - sum));
            }
        }
    }
    Err(Error::NonConvergence {
        what: "eta logarithmic derivative",
        max_terms: policy.max_terms(),
    })
}
