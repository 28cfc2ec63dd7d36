use nalgebra::DMatrix;

use super::{check_well_distributed, VeeSystem};
use crate::special::{HalfPlanePoint, SeriesPolicy};
use crate::trilog::{elliptic_li3_one_tau_deriv, ThirdDerivs};
use crate::{Complex64, Error, Result, TWO_PI_I};

/// A flat coordinate of `(u, z₁..z_N, τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    U,
    Z(usize),
    Tau,
}

impl Coord {
    pub fn index(&self, dim: usize) -> usize {
        match *self {
            Coord::U => 0,
            Coord::Z(i) => 1 + i,
            Coord::Tau => dim + 1,
        }
    }

    pub fn from_index(k: usize, dim: usize) -> Self {
        match k {
            0 => Coord::U,
            k if k == dim + 1 => Coord::Tau,
            k => Coord::Z(k - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepotentialPoint {
    pub u: Complex64,
    pub z: Vec<Complex64>,
    pub tau: HalfPlanePoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureMatrices {
    /// `g = 2 du dτ - (dz, dz)` in the order `(u, z₁..z_N, τ)`.
    pub metric: DMatrix<Complex64>,
    /// `(F_i)_j^k = ∂_i∂_j∂_r F g^{rk}`, row `j`, column `k`.
    pub matrices: Vec<DMatrix<Complex64>>,
    /// Fully lowered third derivatives, `lowered[i][(j, k)] = ∂_i∂_j∂_k F`.
    pub lowered: Vec<DMatrix<Complex64>>,
}

impl StructureMatrices {
    /// `max_{i<j} max |[F_i, F_j]|`.
    pub fn commutator_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.matrices.iter().enumerate() {
            for b in &self.matrices[i + 1..] {
                let c = a * b - b * a;
                worst = c.iter().map(|x| x.norm()).fold(worst, f64::max);
            }
        }
        worst
    }

    /// Largest deviation of the lowered tensor from full index symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let d = self.lowered.len();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let t = self.lowered[i][(j, k)];
                    for s in [
                        self.lowered[j][(i, k)],
                        self.lowered[k][(j, i)],
                        self.lowered[i][(k, j)],
                    ] {
                        worst = worst.max((t - s).norm());
                    }
                }
            }
        }
        worst
    }
}

/// `F = ½u²τ - ½u(z,z) + Σ h_α f((z,α), τ)`, plus `10 h∨² / (3(2πi)³) ℒi₃(1, q)`
/// when the system is well distributed with `h∨ ≠ 0`.
#[derive(Debug, Clone)]
pub struct Prepotential {
    sys: VeeSystem,
    correction: Complex64,
}

impl Prepotential {
    /// `h∨` is taken from the well-distribution check; a system that is not
    /// well distributed gets no correction.
    pub fn new(sys: &VeeSystem) -> Result<Self> {
        let wd = check_well_distributed(sys, 0, 0)?;
        let h = if wd.is_wd { wd.h_vee } else { Complex64::new(0.0, 0.0) };
        Ok(Self {
            sys: sys.clone(),
            correction: h * h * 10.0 / (3.0 * TWO_PI_I.powu(3)),
        })
    }

    pub fn uncorrected(sys: &VeeSystem) -> Self {
        Self {
            sys: sys.clone(),
            correction: Complex64::new(0.0, 0.0),
        }
    }

    /// Coefficient of `ℒi₃(1, q)` in `F`.
    pub fn correction(&self) -> Complex64 {
        self.correction
    }

    pub fn system(&self) -> &VeeSystem {
        &self.sys
    }

    fn check_point(&self, pt: &PrepotentialPoint) -> Result<()> {
        if pt.z.len() != self.sys.dim() {
            return Err(Error::Domain(format!(
                "point has {} z-coordinates, system dimension is {}",
                pt.z.len(),
                self.sys.dim()
            )));
        }
        Ok(())
    }

    /// All third derivatives as `D` lowered matrices, `D = N + 2`.
    pub fn third_tensor(&self, pt: &PrepotentialPoint, policy: &SeriesPolicy) -> Result<Vec<DMatrix<Complex64>>> {
        self.check_point(pt)?;
        let n = self.sys.dim();
        let d = n + 2;
        let covs: Vec<Vec<Complex64>> = (0..self.sys.len()).map(|k| self.sys.covector(k)).collect();
        let derivs: Vec<ThirdDerivs> = covs
            .iter()
            .map(|c| {
                let arg: Complex64 = c.iter().zip(&pt.z).map(|(a, z)| a * z).sum();
                ThirdDerivs::at(arg, &pt.tau, policy)
            })
            .collect::<Result<_>>()?;
        let tau3 = if self.correction == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.correction * elliptic_li3_one_tau_deriv(3, &pt.tau, policy)?)
        };

        let mut t = vec![DMatrix::from_element(d, d, Complex64::new(0.0, 0.0)); d];
        for i in 0..d {
            for j in i..d {
                for k in j..d {
                    let v = self.entry([i, j, k], n, &covs, &derivs, tau3);
                    for [a, b, c] in permutations([i, j, k]) {
                        t[a][(b, c)] = v;
                    }
                }
            }
        }
        Ok(t)
    }

    fn entry(
        &self,
        idx: [usize; 3],
        n: usize,
        covs: &[Vec<Complex64>],
        derivs: &[ThirdDerivs],
        tau3: Option<Complex64>,
    ) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let n_u = idx.iter().filter(|&&c| c == 0).count();
        let n_tau = idx.iter().filter(|&&c| c == n + 1).count();
        let zs: Vec<usize> = idx.iter().filter(|&&c| c != 0 && c != n + 1).map(|c| c - 1).collect();
        match (n_u, n_tau) {
            (2, 1) => Complex64::new(1.0, 0.0),
            (1, 0) => -self.sys.form()[(zs[0], zs[1])],
            (0, _) => {
                let mut s = zero;
                for ((cov, h), d) in covs.iter().zip(self.sys.weights()).zip(derivs) {
                    let f = match n_tau {
                        0 => d.f30,
                        1 => d.f21,
                        2 => d.f12,
                        _ => d.f03,
                    };
                    let p: Complex64 = zs.iter().map(|&i| cov[i]).product();
                    s += h * p * f;
                }
                if n_tau == 3 {
                    if let Some(c) = tau3 {
                        s += c;
                    }
                }
                s
            }
            _ => zero,
        }
    }

    pub fn third_deriv(
        &self,
        pt: &PrepotentialPoint,
        coords: [Coord; 3],
        policy: &SeriesPolicy,
    ) -> Result<Complex64> {
        let t = self.third_tensor(pt, policy)?;
        let n = self.sys.dim();
        let [i, j, k] = coords.map(|c| c.index(n));
        if [i, j, k].iter().any(|&c| c > n + 1) {
            return Err(Error::Domain("coordinate index out of range".into()));
        }
        Ok(t[i][(j, k)])
    }

    pub fn metric(&self) -> DMatrix<Complex64> {
        let n = self.sys.dim();
        let mut g = DMatrix::from_element(n + 2, n + 2, Complex64::new(0.0, 0.0));
        g[(0, n + 1)] = Complex64::new(1.0, 0.0);
        g[(n + 1, 0)] = Complex64::new(1.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                g[(1 + i, 1 + j)] = -self.sys.form()[(i, j)];
            }
        }
        g
    }

    pub fn structure_matrices(&self, pt: &PrepotentialPoint, policy: &SeriesPolicy) -> Result<StructureMatrices> {
        let lowered = self.third_tensor(pt, policy)?;
        let metric = self.metric();
        let inv = self.metric_inverse()?;
        let matrices = lowered.iter().map(|t| t * &inv).collect();
        Ok(StructureMatrices {
            metric,
            matrices,
            lowered,
        })
    }

    // Block inverse: the (u, τ) block is its own inverse, the z block is -G⁻¹.
    fn metric_inverse(&self) -> Result<DMatrix<Complex64>> {
        let n = self.sys.dim();
        let g_inv = self
            .sys
            .form()
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain("form is not invertible".into()))?;
        let mut inv = DMatrix::from_element(n + 2, n + 2, Complex64::new(0.0, 0.0));
        inv[(0, n + 1)] = Complex64::new(1.0, 0.0);
        inv[(n + 1, 0)] = Complex64::new(1.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                inv[(1 + i, 1 + j)] = -g_inv[(i, j)];
            }
        }
        Ok(inv)
    }

    pub fn wdvv_residual(&self, pt: &PrepotentialPoint, policy: &SeriesPolicy) -> Result<f64> {
        Ok(self.structure_matrices(pt, policy)?.commutator_residual())
    }
}

fn permutations([a, b, c]: [usize; 3]) -> [[usize; 3]; 6] {
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
}

/// `∂³F/∂x_i∂x_j∂x_k` for the corrected prepotential of `sys`.
pub fn prepotential_third_derivs(
    sys: &VeeSystem,
    pt: &PrepotentialPoint,
    coords: [Coord; 3],
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    Prepotential::new(sys)?.third_deriv(pt, coords, policy)
}

/// `max_{i<j} max |[F_i, F_j]|` for the corrected prepotential of `sys`.
pub fn wdvv_residual(sys: &VeeSystem, pt: &PrepotentialPoint, policy: &SeriesPolicy) -> Result<f64> {
    Prepotential::new(sys)?.wdvv_residual(pt, policy)
}
