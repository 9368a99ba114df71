//! Field parameters, the boundary-independent free contribution, and the
//! result types shared by both wall geometries.

use crate::error::{Result, VacpolError};
use crate::specialfns::{gamma, harmonic};
use serde::Serialize;
use std::f64::consts::PI;

pub const MAX_DIMENSION: u32 = 11;

/// Space dimension `d`, mass `m` and renormalization scale `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldConfig {
    pub d: u32,
    pub m: f64,
    pub kappa: f64,
}

impl FieldConfig {
    pub fn new(d: u32, m: f64, kappa: f64) -> Result<Self> {
        if !(1..=MAX_DIMENSION).contains(&d) {
            return Err(VacpolError::param(format!(
                "space dimension must lie in [1, {MAX_DIMENSION}], got {d}"
            )));
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(VacpolError::param(format!(
                "mass must be finite and >= 0, got {m}"
            )));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(VacpolError::param(format!(
                "renormalization scale must be positive, got {kappa}"
            )));
        }
        Ok(FieldConfig { d, m, kappa })
    }

    /// Massive field with the default scale `kappa = 1`.
    pub fn massive(d: u32, m: f64) -> Result<Self> {
        let cfg = Self::new(d, m, 1.0)?;
        cfg.require_massive()?;
        Ok(cfg)
    }

    pub fn is_massless(&self) -> bool {
        self.m == 0.0
    }

    pub fn parity(&self) -> Parity {
        if self.d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub(crate) fn require_massive(&self) -> Result<()> {
        if self.m > 0.0 {
            Ok(())
        } else {
            Err(VacpolError::param(
                "this operation needs m > 0; use the massless evaluation for m = 0",
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Neumann,
    Dirichlet,
    Robin,
    /// Semitransparent wall with `beta = 0` (delta-type).
    DeltaLike,
    /// Semitransparent wall with `beta != 0` (delta-prime-type).
    DeltaPrimeLike,
}

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub parity: Parity,
    pub family: Family,
    pub massless: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// The damping rate of a boundary integral is close to zero, so the
    /// integrand decays slowly and quadrature is expensive.
    SlowDecay { rate: f64 },
    /// `beta` was nonzero but below the dispatch threshold and was treated
    /// as zero; the two families are not continuously connected.
    BetaTreatedAsZero { beta: f64 },
    /// Massless `d = 1`: free and plane parts diverge separately; the
    /// finite sum is stored in `plane_term` and `free_term` is zero.
    InfraredCompensated,
}

/// Coefficients of `c_{-1}/u + c_0 + c_1 u` fitted near `u = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaurentFit {
    pub c_minus1: f64,
    pub c0: f64,
    pub c1: f64,
    /// Root-mean-square misfit of the three-term model on the stencil.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarizationValue {
    pub free_term: f64,
    pub plane_term: f64,
    pub total: f64,
    pub branch: Branch,
    pub warnings: Vec<Warning>,
    pub laurent: Option<LaurentFit>,
}

impl PolarizationValue {
    pub(crate) fn new(
        free_term: f64,
        plane_term: f64,
        branch: Branch,
        warnings: Vec<Warning>,
    ) -> Self {
        PolarizationValue {
            free_term,
            plane_term,
            total: free_term + plane_term,
            branch,
            warnings,
            laurent: None,
        }
    }
}

/// x-independent part of the renormalized polarization.
///
/// Zero for a massless field in `d >= 2`; infrared divergent for a massless
/// field in `d = 1`.
pub fn free_term(cfg: &FieldConfig) -> Result<f64> {
    let d = cfg.d;
    let m = cfg.m;
    if m == 0.0 {
        return if d == 1 {
            Err(VacpolError::infrared(
                "the free contribution diverges as log(1/m) for a massless field in d = 1",
            ))
        } else {
            Ok(0.0)
        };
    }
    let df = d as f64;
    let denom = (4.0 * PI).powf((df + 1.0) / 2.0) * gamma((df + 1.0) / 2.0);
    let mpow = m.powi(d as i32 - 1);
    if d.is_multiple_of(2) {
        let sign = if (d / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * PI * mpow / denom)
    } else {
        let n = (d - 1) / 2;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * mpow * (harmonic(n) + 2.0 * (2.0 * cfg.kappa / m).ln()) / denom)
    }
}

/// Residue at `u = 0` of the regularized polarization (odd `d`; zero for
/// even `d`). It does not depend on the boundary condition.
pub fn residue_at_zero(cfg: &FieldConfig) -> f64 {
    if cfg.d.is_multiple_of(2) {
        return 0.0;
    }
    let n = (cfg.d - 1) / 2;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let nfact: f64 = (1..=n).map(f64::from).product();
    sign * cfg.m.powi(cfg.d as i32 - 1)
        / (nfact * 2f64.powi(cfg.d as i32) * PI.powf((cfg.d as f64 + 1.0) / 2.0))
}

/// Poles of the continued polarization sit at `u = d - 1 - 2l`, `l >= 0`.
pub fn check_pole(d: u32, u: f64) -> Result<()> {
    let k = (d as f64 - 1.0 - u) / 2.0;
    if k >= -1e-12 && (k - k.round()).abs() < 1e-12 {
        return Err(VacpolError::Pole { u });
    }
    Ok(())
}

/// First term of the continued polarization: the Gamma-ratio carrying the
/// bulk (free) divergence.
pub(crate) fn bulk_term(cfg: &FieldConfig, u: f64) -> f64 {
    let df = cfg.d as f64;
    cfg.m.powf(df - 1.0) * (cfg.kappa / cfg.m).powf(u) * gamma((u - df + 1.0) / 2.0)
        / (2f64.powf(df + 1.0) * PI.powf(df / 2.0) * gamma((u + 1.0) / 2.0))
}

/// Prefactor multiplying the boundary bracket in the continued formula; at
/// `u = 0` it reduces to `1 / (2^{(3d-1)/2} pi^{(d+1)/2} |x|^{d-1})`.
pub(crate) fn boundary_prefactor(cfg: &FieldConfig, x_abs: f64, u: f64) -> f64 {
    let df = cfg.d as f64;
    2f64.powf((u - 3.0 * df + 1.0) / 2.0) * (cfg.kappa * x_abs).powf(u)
        / (PI.powf(df / 2.0) * gamma((u + 1.0) / 2.0) * x_abs.powf(df - 1.0))
}

pub const LAURENT_STEP: f64 = 1e-3;

/// Fits `c_{-1}/u + c_0 + c_1 u` to `f` on `u in {±eps, ±2 eps}`.
///
/// The odd part fixes `c_{-1}` and `c_1` exactly. For `c_0` the even part
/// is Richardson-extrapolated, which removes the `O(eps^2)` bias a plain
/// least-squares fit would carry. `residual` is the least-squares misfit of
/// the three-term model and measures the neglected higher orders.
pub fn laurent_fit<F>(f: F, eps: f64) -> Result<LaurentFit>
where
    F: Fn(f64) -> Result<f64>,
{
    let fp1 = f(eps)?;
    let fm1 = f(-eps)?;
    let fp2 = f(2.0 * eps)?;
    let fm2 = f(-2.0 * eps)?;
    let odd1 = 0.5 * (fp1 - fm1);
    let odd2 = 0.5 * (fp2 - fm2);
    let even1 = 0.5 * (fp1 + fm1);
    let even2 = 0.5 * (fp2 + fm2);
    // odd1 = c/eps + c1 eps, odd2 = c/(2 eps) + 2 c1 eps
    let c1 = (2.0 * odd2 - odd1) / (3.0 * eps);
    let c_minus1 = eps * (odd1 - c1 * eps);
    let c0 = (4.0 * even1 - even2) / 3.0;
    let ls_c0 = 0.5 * (even1 + even2);
    let model = |u: f64, c0: f64| c_minus1 / u + c0 + c1 * u;
    let residual = ((fp1 - model(eps, ls_c0)).powi(2)
        + (fm1 - model(-eps, ls_c0)).powi(2)
        + (fp2 - model(2.0 * eps, ls_c0)).powi(2)
        + (fm2 - model(-2.0 * eps, ls_c0)).powi(2))
    .sqrt()
        / 2.0;
    Ok(LaurentFit {
        c_minus1,
        c0,
        c1,
        residual,
    })
}
