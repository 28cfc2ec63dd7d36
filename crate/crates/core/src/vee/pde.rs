use crate::special::{HalfPlanePoint, SeriesPolicy};
use crate::trilog::{elliptic_li3_one_tau_deriv, ThirdDerivs};
use crate::{Complex64, Result, TWO_PI_I};

/// Coefficient of `h^(0,3)` in the one-dimensional equation as usually stated.
pub const PDE_KAPPA: f64 = 1.0 / 3.0;

/// `h(z, τ) = Σ c_k f(λ_k z, τ) + c₀ ℒi₃(1, q) / (2πi)³`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrilogCombination {
    /// Pairs `(c_k, λ_k)`.
    pub terms: Vec<(Complex64, Complex64)>,
    pub li3_coeff: Complex64,
}

impl TrilogCombination {
    pub fn f() -> Self {
        Self {
            terms: vec![(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))],
            li3_coeff: Complex64::new(0.0, 0.0),
        }
    }

    /// `f + (5/2) ℒi₃(1, q) / (2πi)³`.
    pub fn f_with_constant() -> Self {
        Self {
            li3_coeff: Complex64::new(2.5, 0.0),
            ..Self::f()
        }
    }

    /// `f(2z) - 4 f(z)`.
    pub fn a1_dual() -> Self {
        Self {
            terms: vec![
                (Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)),
                (Complex64::new(-4.0, 0.0), Complex64::new(1.0, 0.0)),
            ],
            li3_coeff: Complex64::new(0.0, 0.0),
        }
    }

    /// `[h30, h21, h12, h03]` by the chain rule.
    pub fn third_derivs(&self, z: Complex64, tau: &HalfPlanePoint, policy: &SeriesPolicy) -> Result<[Complex64; 4]> {
        let mut h = [Complex64::new(0.0, 0.0); 4];
        for &(c, lambda) in &self.terms {
            let d = ThirdDerivs::at(lambda * z, tau, policy)?;
            h[0] += c * lambda.powu(3) * d.f30;
            h[1] += c * lambda.powu(2) * d.f21;
            h[2] += c * lambda * d.f12;
            h[3] += c * d.f03;
        }
        if self.li3_coeff != Complex64::new(0.0, 0.0) {
            h[3] += self.li3_coeff * elliptic_li3_one_tau_deriv(3, tau, policy)? / TWO_PI_I.powu(3);
        }
        Ok(h)
    }
}

/// `h30 h12 - (h21)² + h03/3`.
pub fn pde_residual_h(
    h: &TrilogCombination,
    z: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    pde_residual_h_kappa(h, PDE_KAPPA, z, tau, policy)
}

/// `h30 h12 - (h21)² + κ h03`.
///
/// `F = ½u²τ + (c/2) u z² + h` satisfies WDVV exactly when this vanishes with
/// `κ = c²`. For `F = ½u²τ - u z² + h` that is `κ = 4`, the value satisfied by
/// `f(2z) - 4f(z)`; `κ = 1/3` is the value satisfied by `f + (5/2)ℒi₃(1,q)/(2πi)³`.
pub fn pde_residual_h_kappa(
    h: &TrilogCombination,
    kappa: f64,
    z: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let [h30, h21, h12, h03] = h.third_derivs(z, tau, policy)?;
    Ok(h30 * h12 - h21 * h21 + h03 * kappa)
}
