use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VeeSystem;
use crate::{Complex64, Error, Result};

const CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellDistributed {
    pub is_wd: bool,
    pub h_vee: Complex64,
    /// Largest entry of `Σ h_α Gα (Gα)ᵀ - 2h∨ G`.
    pub max_deviation: f64,
}

/// Tests `Σ h_α (α,u)(α,v) = 2h∨ (u,v)` by comparing `M = Σ h_α Gα (Gα)ᵀ` with
/// `2h∨ G`, reading `h∨` off the first nonzero entry of `G`, and at `trials`
/// random pairs `(u, v)`.
pub fn check_well_distributed(sys: &VeeSystem, trials: usize, seed: u64) -> Result<WellDistributed> {
    let n = sys.dim();
    let g = sys.form();
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for k in 0..sys.len() {
        let cov = sys.covector(k);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += sys.weights()[k] * cov[i] * cov[j];
            }
        }
    }
    let (i0, j0) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| g[(i, j)].norm() > 0.0)
        .ok_or_else(|| Error::Domain("form is degenerate".into()))?;
    let h_vee = m[(i0, j0)] / (2.0 * g[(i0, j0)]);
    let max_deviation = (&m - g * (h_vee * 2.0))
        .iter()
        .map(|x| x.norm())
        .fold(0.0, f64::max);
    let mut is_wd = max_deviation < CHECK_TOL;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let u = random_vector(&mut rng, n);
        let v = random_vector(&mut rng, n);
        let lhs: Complex64 = (0..sys.len())
            .map(|k| sys.weights()[k] * sys.pairing(&sys.vectors()[k], &u) * sys.pairing(&sys.vectors()[k], &v))
            .sum();
        let rhs = h_vee * 2.0 * sys.pairing(&u, &v);
        if (lhs - rhs).norm() > CHECK_TOL * (1.0 + rhs.norm()) {
            is_wd = false;
        }
    }
    Ok(WellDistributed {
        is_wd,
        h_vee,
        max_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticReport {
    pub holds: bool,
    /// Index of the coefficient with the largest mismatch.
    pub worst_entry: [usize; 4],
    pub worst_deviation: f64,
    /// Largest `|Σ h_α (α,z)⁴ - 3(z,z)²|` over the random points.
    pub random_max: f64,
}

/// `Σ h_α (α,z)⁴ = 3(z,z)²`, compared coefficient-wise as symmetric tensors
/// `Σ h_α (Gα)^{⊗4}` against `G_ij G_kl + G_ik G_jl + G_il G_jk`, and at random
/// points.
pub fn check_quartic(sys: &VeeSystem, trials: usize, seed: u64) -> QuarticReport {
    let n = sys.dim();
    let g = sys.form();
    let covs: Vec<Vec<Complex64>> = (0..sys.len()).map(|k| sys.covector(k)).collect();
    let mut worst_entry = [0; 4];
    let mut worst_deviation: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs: Complex64 = covs
                        .iter()
                        .zip(sys.weights())
                        .map(|(c, h)| h * c[i] * c[j] * c[k] * c[l])
                        .sum();
                    let rhs = g[(i, j)] * g[(k, l)] + g[(i, k)] * g[(j, l)] + g[(i, l)] * g[(j, k)];
                    let d = (lhs - rhs).norm();
                    if d > worst_deviation {
                        worst_deviation = d;
                        worst_entry = [i, j, k, l];
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_max: f64 = 0.0;
    for _ in 0..trials {
        let z = random_vector(&mut rng, n);
        let lhs: Complex64 = (0..sys.len())
            .map(|k| sys.weights()[k] * sys.pairing(&sys.vectors()[k], &z).powu(4))
            .sum();
        let zz = sys.pairing(&z, &z);
        random_max = random_max.max((lhs - 3.0 * zz * zz).norm());
    }
    QuarticReport {
        holds: worst_deviation < CHECK_TOL && random_max < CHECK_TOL * 1e2,
        worst_entry,
        worst_deviation,
        random_max,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRow {
    pub n: u32,
    /// `|Σ h_β (α,β)(β,α⊥)ⁿ|`
    pub first: f64,
    /// `|Σ h_β (α,β)(α∧β)(β,α⊥)ⁿ|`
    pub second: f64,
    /// `|Σ h_β (α,β)(α∧β)²(β,α⊥)ⁿ|`
    pub third: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneReport {
    pub alpha_index: usize,
    /// The plane's vectors split into two nonempty mutually orthogonal sets.
    pub reducible: bool,
    pub rows: Vec<PlaneRow>,
}

impl PlaneReport {
    /// All sums below `tol`, or the plane is reducible.
    pub fn holds(&self, tol: f64) -> bool {
        self.reducible
            || self
                .rows
                .iter()
                .all(|r| r.first < tol && r.second < tol && r.third < tol)
    }
}

/// The three plane sums for `α = vectors[alpha_index]` and `n = 0..=n_max`.
///
/// Only two-dimensional systems are supported, where the plane through `α` is
/// the whole space. The prepotential only sees each vector up to sign, so the
/// sums run over `U ∪ (-U)` with `h_{-β} = h_β`. Vectors collinear with `α` are
/// left out.
/// `α⊥` is form-orthogonal to `α` with `(α⊥, α⊥) = (α, α)`, and `α∧β` is the
/// determinant of the coordinates of `α` and `β`.
pub fn check_plane_conditions(sys: &VeeSystem, alpha_index: usize, n_max: u32) -> Result<PlaneReport> {
    if sys.dim() != 2 {
        return Err(Error::Domain(format!(
            "plane conditions need a plane basis; unavailable for dimension {}",
            sys.dim()
        )));
    }
    if alpha_index >= sys.len() {
        return Err(Error::OutOfRange {
            what: "vector index",
            index: alpha_index as i64,
            min: 0,
            max: sys.len() as i64 - 1,
        });
    }
    let alpha = &sys.vectors()[alpha_index];
    let ga = sys.covector(alpha_index);
    let perp_raw = [-ga[1], ga[0]];
    let norm2 = sys.pairing(&perp_raw, &perp_raw);
    let scale = (sys.pairing(alpha, alpha) / norm2).sqrt();
    let perp = [perp_raw[0] * scale, perp_raw[1] * scale];

    let wedge = |b: &[Complex64]| alpha[0] * b[1] - alpha[1] * b[0];
    let mut terms = Vec::new();
    for (k, beta) in sys.vectors().iter().enumerate() {
        let w = wedge(beta);
        if w.norm() < 1e-12 * (1.0 + beta[0].norm() + beta[1].norm()) {
            continue;
        }
        for sign in [1.0, -1.0] {
            terms.push((
                sys.weights()[k] * sys.pairing(alpha, beta) * sign,
                w * sign,
                sys.pairing(beta, &perp) * sign,
            ));
        }
    }
    let rows = (0..=n_max)
        .map(|n| {
            let mut s = [Complex64::new(0.0, 0.0); 3];
            for &(ha, w, bp) in &terms {
                let base = ha * bp.powu(n);
                s[0] += base;
                s[1] += base * w;
                s[2] += base * w * w;
            }
            PlaneRow {
                n,
                first: s[0].norm(),
                second: s[1].norm(),
                third: s[2].norm(),
            }
        })
        .collect();
    Ok(PlaneReport {
        alpha_index,
        reducible: is_reducible(sys),
        rows,
    })
}

/// The vectors split into two nonempty, mutually orthogonal sets.
pub fn is_reducible(sys: &VeeSystem) -> bool {
    let n = sys.len();
    if n < 2 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && sys.pairing(&sys.vectors()[i], &sys.vectors()[j]).norm() > 1e-12 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().any(|s| !s)
}

/// `(p, α) ∈ Z` for every basis vector `p` and every `α`, within `1e-10`.
pub fn check_weight_lattice(sys: &VeeSystem, basis: &[Vec<Complex64>]) -> bool {
    basis.iter().all(|p| {
        sys.vectors().iter().all(|a| {
            let x = sys.pairing(p, a);
            (x.re - x.re.round()).abs() < CHECK_TOL && x.im.abs() < CHECK_TOL
        })
    })
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn a2_is_well_distributed() {
        let s = VeeSystem::builtin("a2-roots-unit-weights").unwrap();
        let wd = check_well_distributed(&s, 10, 1).unwrap();
        assert!(wd.is_wd);
        assert!((wd.h_vee - 1.5).norm() < 1e-12);
        let doubled = VeeSystem::euclidean(2, s.vectors().to_vec(), vec![r(2.0); 3]).unwrap();
        let wd2 = check_well_distributed(&doubled, 10, 1).unwrap();
        assert_eq!(wd2.h_vee, wd.h_vee * 2.0);
    }

    #[test]
    fn single_vector_is_not_well_distributed() {
        let s = VeeSystem::euclidean(2, vec![vec![r(1.0), r(0.5)]], vec![r(1.0)]).unwrap();
        assert!(!check_well_distributed(&s, 10, 1).unwrap().is_wd);
    }

    #[test]
    fn a1_dual_quartic() {
        let s = super::super::a1_dual_system().unwrap();
        assert!(check_quartic(&s, 10, 3).holds);
        let wd = check_well_distributed(&s, 10, 3).unwrap();
        assert!(wd.is_wd && wd.h_vee.norm() < 1e-15);
    }

    #[test]
    fn zero_weights_fail_quartic() {
        let s = VeeSystem::euclidean(2, vec![vec![r(1.0), r(0.0)]], vec![r(0.0)]).unwrap();
        let q = check_quartic(&s, 10, 3);
        assert!(!q.holds);
        assert!(q.worst_deviation > 1.0);
    }

    #[test]
    fn a2_plane_sums_vanish() {
        let s = VeeSystem::builtin("a2-roots-unit-weights").unwrap();
        for a in 0..3 {
            let rep = check_plane_conditions(&s, a, 4).unwrap();
            assert!(!rep.reducible);
            assert!(rep.holds(1e-10), "{rep:?}");
        }
    }

    #[test]
    fn n_zero_first_sum_is_direct() {
        let s = VeeSystem::builtin("a2-roots-unit-weights").unwrap();
        let rep = check_plane_conditions(&s, 1, 0).unwrap();
        let alpha = &s.vectors()[1];
        let mut direct = Complex64::new(0.0, 0.0);
        for k in [0, 2] {
            let beta = &s.vectors()[k];
            let neg: Vec<Complex64> = beta.iter().map(|x| -x).collect();
            direct += s.weights()[k] * s.pairing(alpha, beta);
            direct += s.weights()[k] * s.pairing(alpha, &neg);
        }
        assert_eq!(rep.rows[0].first, direct.norm());
    }

    #[test]
    fn reducible_pair() {
        let s = VeeSystem::builtin("a1xa1-reducible").unwrap();
        let rep = check_plane_conditions(&s, 0, 2).unwrap();
        assert!(rep.reducible && rep.holds(1e-10));
    }

    #[test]
    fn plane_needs_dimension_two() {
        let s = super::super::a1_dual_system().unwrap();
        assert!(check_plane_conditions(&s, 0, 2).is_err());
    }

    #[test]
    fn weight_lattices() {
        let a2 = VeeSystem::builtin("a2-roots-unit-weights").unwrap();
        assert!(check_weight_lattice(&a2, a2.lattice_basis().unwrap()));
        let std = vec![vec![r(1.0), r(0.0)], vec![r(0.0), r(1.0)]];
        assert!(!check_weight_lattice(&a2, &std));
        let empty = VeeSystem::euclidean(2, vec![], vec![]).unwrap();
        assert!(check_weight_lattice(&empty, &std));
    }
}
