//! ∨-systems, the trilogarithmic prepotential and its WDVV residual.

mod conditions;
mod parse;
mod pde;
mod prepotential;
mod run;

pub use conditions::{
    check_plane_conditions, check_quartic, check_weight_lattice, check_well_distributed,
    is_reducible, PlaneReport, PlaneRow, QuarticReport, WellDistributed,
};
pub use parse::parse_system;
pub use pde::{pde_residual_h, pde_residual_h_kappa, TrilogCombination, PDE_KAPPA};
pub use run::{run_wdvv, WdvvOptions};
pub use prepotential::{
    prepotential_third_derivs, wdvv_residual, Coord, Prepotential, PrepotentialPoint,
    StructureMatrices,
};

use nalgebra::DMatrix;

use crate::{Complex64, Error, Result};

/// Names accepted by [`VeeSystem::builtin`].
pub const BUILTINS: [&str; 3] = ["a1-dual", "a2-roots-unit-weights", "a1xa1-reducible"];

/// Weighted vectors `{(α, h_α)}` in `C^N` with a symmetric bilinear form.
#[derive(Debug, Clone, PartialEq)]
pub struct VeeSystem {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
    weights: Vec<Complex64>,
    form: DMatrix<Complex64>,
    lattice_basis: Option<Vec<Vec<Complex64>>>,
}

impl VeeSystem {
    pub fn new(
        dim: usize,
        vectors: Vec<Vec<Complex64>>,
        weights: Vec<Complex64>,
        form: DMatrix<Complex64>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if vectors.len() != weights.len() {
            return Err(Error::Domain(format!(
                "{} vectors but {} weights",
                vectors.len(),
                weights.len()
            )));
        }
        if form.shape() != (dim, dim) {
            return Err(Error::Domain(format!("form must be {dim}x{dim}")));
        }
        if (&form - form.transpose()).iter().any(|x| x.norm() > 1e-12) {
            return Err(Error::Domain("form is not symmetric".into()));
        }
        let det = form.clone().determinant();
        if !(det.norm() > 1e-12) {
            return Err(Error::Domain("form is degenerate".into()));
        }
        for (k, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::Domain(format!("vector {k} has length {}", v.len())));
            }
            if v.iter().all(|x| x.norm() == 0.0) {
                return Err(Error::Domain(format!("vector {k} is zero")));
            }
            if v.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
                return Err(Error::Domain(format!("vector {k} is not finite")));
            }
        }
        if weights.iter().any(|h| !h.re.is_finite() || !h.im.is_finite()) {
            return Err(Error::Domain("weights must be finite".into()));
        }
        Ok(Self {
            dim,
            vectors,
            weights,
            form,
            lattice_basis: None,
        })
    }

    /// Euclidean form.
    pub fn euclidean(dim: usize, vectors: Vec<Vec<Complex64>>, weights: Vec<Complex64>) -> Result<Self> {
        Self::new(dim, vectors, weights, DMatrix::identity(dim, dim))
    }

    pub fn with_lattice_basis(mut self, basis: Vec<Vec<Complex64>>) -> Result<Self> {
        if basis.len() != self.dim || basis.iter().any(|p| p.len() != self.dim) {
            return Err(Error::Domain(format!(
                "weight lattice basis needs {0} vectors of length {0}",
                self.dim
            )));
        }
        self.lattice_basis = Some(basis);
        Ok(self)
    }

    /// A built-in configuration by name; see [`BUILTINS`].
    pub fn builtin(name: &str) -> Result<Self> {
        let r = |x: f64| Complex64::new(x, 0.0);
        let rv = |v: &[f64]| v.iter().map(|&x| r(x)).collect::<Vec<_>>();
        match name {
            "a1-dual" => a1_dual_system(),
            "a2-roots-unit-weights" => {
                let roots = crate::identities::RootSystem2D::A2.positive_roots();
                let vectors = roots.iter().map(|(v, _)| rv(v)).collect();
                Self::euclidean(2, vectors, vec![r(1.0); 3])?.with_lattice_basis(vec![
                    rv(&[0.5f64.sqrt(), (1.0f64 / 6.0).sqrt()]),
                    rv(&[0.0, (2.0f64 / 3.0).sqrt()]),
                ])
            }
            "a1xa1-reducible" => {
                let s = 2f64.sqrt();
                Self::euclidean(2, vec![rv(&[s, 0.0]), rv(&[0.0, s])], vec![r(1.0), r(1.0)])?
                    .with_lattice_basis(vec![rv(&[1.0 / s, 0.0]), rv(&[0.0, 1.0 / s])])
            }
            other => Err(Error::Domain(format!(
                "unknown built-in system '{other}' (known: {})",
                BUILTINS.join(", ")
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn form(&self) -> &DMatrix<Complex64> {
        &self.form
    }

    pub fn lattice_basis(&self) -> Option<&[Vec<Complex64>]> {
        self.lattice_basis.as_deref()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Copy with `h_index` multiplied by `factor`.
    pub fn with_weight_scaled(&self, index: usize, factor: f64) -> Result<Self> {
        let mut out = self.clone();
        let h = out.weights.get_mut(index).ok_or(Error::OutOfRange {
            what: "weight index",
            index: index as i64,
            min: 0,
            max: self.len() as i64 - 1,
        })?;
        *h *= factor;
        Ok(out)
    }

    /// `(u, v)` under the form.
    pub fn pairing(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += u[i] * self.form[(i, j)] * v[j];
            }
        }
        s
    }

    /// `G α`, the covector of `(·, α)`.
    pub fn covector(&self, index: usize) -> Vec<Complex64> {
        let a = &self.vectors[index];
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.form[(i, j)] * a[j]).sum())
            .collect()
    }
}

/// The one-dimensional system `{√2, 1/√2}` with weights `{1, -4}` and Euclidean
/// form, so that `Σ h_α f((z, α))` is `h(w) = f(2w) - 4f(w)` at `w = z/√2`.
pub fn a1_dual_system() -> Result<VeeSystem> {
    let r = |x: f64| Complex64::new(x, 0.0);
    let s = 2f64.sqrt();
    VeeSystem::euclidean(1, vec![vec![r(s)], vec![r(1.0 / s)]], vec![r(1.0), r(-4.0)])?
        .with_lattice_basis(vec![vec![r(s)]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_construct() {
        for name in BUILTINS {
            let s = VeeSystem::builtin(name).unwrap();
            assert!(s.lattice_basis().is_some());
        }
        assert!(VeeSystem::builtin("e8").is_err());
    }

    #[test]
    fn invalid_systems() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(VeeSystem::euclidean(1, vec![vec![one]], vec![]).is_err());
        assert!(VeeSystem::euclidean(1, vec![vec![zero]], vec![one]).is_err());
        assert!(VeeSystem::euclidean(2, vec![vec![one]], vec![one]).is_err());
        let degenerate = DMatrix::from_element(2, 2, one);
        assert!(VeeSystem::new(2, vec![vec![one, zero]], vec![one], degenerate).is_err());
    }

    #[test]
    fn a1_dual_weights_balance() {
        let s = a1_dual_system().unwrap();
        let sum: Complex64 = (0..s.len())
            .map(|k| s.weights()[k] * s.pairing(&s.vectors()[k], &s.vectors()[k]))
            .sum();
        assert!(sum.norm() < 1e-15);
    }
}
