use crate::special::{eisenstein, HalfPlanePoint, SeriesPolicy};
use crate::trilog::ThirdDerivs;
use crate::{Complex64, Error, Result};

/// The rank-two Coxeter root systems, normalised so that
/// A₂: (α,α)=(β,β)=2, (α,β)=-1; B₂: (α,α)=2, (β,β)=1, (α,β)=-1;
/// G₂: (α,α)=6, (β,β)=2, (α,β)=-3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootSystem2D {
    A2,
    B2,
    G2,
}

impl RootSystem2D {
    pub const ALL: [RootSystem2D; 3] = [RootSystem2D::A2, RootSystem2D::B2, RootSystem2D::G2];

    pub fn name(&self) -> &'static str {
        match self {
            RootSystem2D::A2 => "a2",
            RootSystem2D::B2 => "b2",
            RootSystem2D::G2 => "g2",
        }
    }

    /// Simple roots `(α, β)` in Euclidean coordinates.
    pub fn simple_roots(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            RootSystem2D::A2 => ([2f64.sqrt(), 0.0], [-(0.5f64.sqrt()), 1.5f64.sqrt()]),
            RootSystem2D::B2 => ([2f64.sqrt(), 0.0], [-(0.5f64.sqrt()), 0.5f64.sqrt()]),
            RootSystem2D::G2 => ([6f64.sqrt(), 0.0], [-3.0 / 6f64.sqrt(), 0.5f64.sqrt()]),
        }
    }

    /// Positive roots with their multiplicities `k_α`.
    pub fn positive_roots(&self) -> Vec<([f64; 2], f64)> {
        let (a, b) = self.simple_roots();
        let comb = |i: f64, j: f64| [i * a[0] + j * b[0], i * a[1] + j * b[1]];
        match self {
            RootSystem2D::A2 => vec![(a, 1.0), (b, 1.0), (comb(1.0, 1.0), 1.0)],
            RootSystem2D::B2 => vec![
                (a, 1.0),
                (b, 2.0),
                (comb(1.0, 1.0), 2.0),
                (comb(1.0, 2.0), 1.0),
            ],
            RootSystem2D::G2 => vec![
                (a, 6.0),
                (b, 10.0),
                (comb(1.0, 1.0), 10.0),
                (comb(1.0, 2.0), 10.0),
                (comb(1.0, 3.0), 6.0),
                (comb(2.0, 3.0), 6.0),
            ],
        }
    }
}

impl std::str::FromStr for RootSystem2D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a2" => Ok(RootSystem2D::A2),
            "b2" => Ok(RootSystem2D::B2),
            "g2" => Ok(RootSystem2D::G2),
            other => Err(Error::Domain(format!("unknown rank-2 root system '{other}'"))),
        }
    }
}

pub(crate) fn pair(v: [f64; 2], z: [Complex64; 2]) -> Complex64 {
    z[0] * v[0] + z[1] * v[1]
}

/// `Σ_{α<β} (α,β) f^(3,0)((z,α)) f^(3,0)((z,β)) + Σ_α k_α f^(2,1)((z,α))` over
/// positive roots, each unordered pair counted once.
pub fn residual_rank2(
    system: RootSystem2D,
    z: [Complex64; 2],
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let roots = system.positive_roots();
    let d: Vec<ThirdDerivs> = roots
        .iter()
        .map(|(v, _)| ThirdDerivs::at(pair(*v, z), tau, policy))
        .collect::<Result<_>>()?;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..roots.len() {
        total += d[i].f21 * roots[i].1;
        for j in i + 1..roots.len() {
            let dot = roots[i].0[0] * roots[j].0[0] + roots[i].0[1] * roots[j].0[1];
            total += d[i].f30 * d[j].f30 * dot;
        }
    }
    Ok(total)
}

/// `f^(3,0) f^(1,2) - (f^(2,1))² + f^(0,3)/3 + E₄/144`.
pub fn residual_delta(z: Complex64, tau: &HalfPlanePoint, policy: &SeriesPolicy) -> Result<Complex64> {
    let d = ThirdDerivs::at(z, tau, policy)?;
    let e4 = eisenstein(4, tau, 0, policy)?;
    Ok(d.f30 * d.f12 - d.f21 * d.f21 + d.f03 / 3.0 + e4 / 144.0)
}

fn derivs<const N: usize>(
    points: [Complex64; N],
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<[ThirdDerivs; N]> {
    let v: Vec<ThirdDerivs> = points
        .iter()
        .map(|&z| ThirdDerivs::at(z, tau, policy))
        .collect::<Result<_>>()?;
    Ok(v.try_into().expect("length preserved"))
}

/// First A₂ identity, with `s = x + y`:
///
/// ```text
/// f30(s)[f21(x) - f21(y)] + f30(y)[f21(s) - f21(x)] + f12(x) - ½ f12(y) + ½ f12(s)
/// ```
pub fn residual_a2_first(
    x: Complex64,
    y: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let [dx, dy, ds] = derivs([x, y, x + y], tau, policy)?;
    Ok(ds.f30 * (dx.f21 - dy.f21)
        + dy.f30 * (ds.f21 - dx.f21)
        + dx.f12
        - 0.5 * dy.f12
        + 0.5 * ds.f12)
}

/// Second A₂ identity, symmetric in `x ↔ y`, with constant `E₄/108`.
pub fn residual_a2_second(
    x: Complex64,
    y: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let [dx, dy, ds] = derivs([x, y, x + y], tau, policy)?;
    let e4 = eisenstein(4, tau, 0, policy)?;
    let two_thirds = 2.0 / 3.0;
    Ok(dx.f30 * (ds.f12 - dy.f12)
        + dy.f30 * (ds.f12 - dx.f12)
        - two_thirds * ds.f30 * (dx.f12 + dy.f12)
        + two_thirds * ds.f21 * dx.f21
        + two_thirds * ds.f21 * dy.f21
        - 8.0 / 3.0 * dx.f21 * dy.f21
        + 10.0 / 9.0 * ds.f03
        + e4 / 108.0)
}

/// The four B₂ identities in the points `x, y, x+y, x+2y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum B2Set {
    A1,
    A2,
    B1,
    /// Unamended form: `(1/3){f03(x) + 8 f03(x+y) + f03(x+2y) + 8 f03(y)} + E₄/18`.
    /// This form does not vanish.
    B2,
    /// `B2` with the coefficient of `f03(x)` inside the braces raised from 1 to 3,
    /// the unique single-coefficient change that makes the identity hold.
    B2Amended,
}

impl B2Set {
    pub fn name(&self) -> &'static str {
        match self {
            B2Set::A1 => "a1",
            B2Set::A2 => "a2",
            B2Set::B1 => "b1",
            B2Set::B2 => "b2",
            B2Set::B2Amended => "b2_amended",
        }
    }
}

pub fn residual_b2(
    set: B2Set,
    x: Complex64,
    y: Complex64,
    tau: &HalfPlanePoint,
    policy: &SeriesPolicy,
) -> Result<Complex64> {
    let [dx, dy, ds, dt] = derivs([x, y, x + y, x + 2.0 * y], tau, policy)?;
    let e4 = || eisenstein(4, tau, 0, policy);
    let r = match set {
        B2Set::A1 => {
            dx.f30 * (dy.f21 - ds.f21)
                + ds.f30 * (dx.f21 - dt.f21)
                + dt.f30 * (ds.f21 - dy.f21)
                + 0.5 * dx.f12
                - 0.5 * dt.f12
                - 2.0 * dy.f12
        }
        B2Set::A2 => {
            dy.f30 * (dt.f21 - dx.f21)
                + ds.f30 * (dx.f21 - dt.f21)
                + 2.0 * dt.f30 * (ds.f21 - dy.f21)
                + dx.f12
                + 2.0 * ds.f12
                - 2.0 * dy.f12
        }
        B2Set::B1 => {
            dx.f30 * (ds.f12 - dy.f12)
                + ds.f30 * (dx.f12 + dt.f12)
                + dt.f30 * (ds.f12 + dy.f12)
                - 2.0 * (ds.f21 * dx.f21 + ds.f21 * dt.f21)
                + (dx.f03 + 2.0 * ds.f03 + dt.f03 + 6.0 * dy.f03) / 3.0
                + e4()? / 36.0
        }
        B2Set::B2 | B2Set::B2Amended => {
            let x_coeff = if set == B2Set::B2 { 1.0 } else { 3.0 };
            dy.f30 * (dt.f12 - dx.f12)
                + 4.0 * dt.f30 * (dy.f12 + ds.f12)
                + ds.f30 * (dx.f12 + dt.f12)
                - 4.0 * (dt.f21 * ds.f21 + dt.f21 * dy.f21)
                + (x_coeff * dx.f03 + 8.0 * ds.f03 + dt.f03 + 8.0 * dy.f03) / 3.0
                + e4()? / 18.0
        }
    };
    Ok(r)
}
