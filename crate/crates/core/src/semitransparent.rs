//! Semitransparent plane described by a U(2) point interaction (delta,
//! delta-prime and their mixtures).
//!
//! Two families are distinguished by `beta`. For `beta = 0` (delta-type)
//! the wall enters through `L = (alpha - sigma)/(alpha + sigma) sgn(x1)` and
//! the rate `gamma/(alpha + sigma)`; otherwise through `Lambda_±` and
//! `M_±(x1)`. The phase `omega` only affects kernels between points on
//! opposite sides, so none of the quantities in this module depend on it.

use crate::error::{Result, VacpolError};
use crate::field::{free_term, Branch, Family, FieldConfig, PolarizationValue, Warning};
use crate::heatkernel::SemitransparentBC;
use crate::wall::{self, Profile};
use serde::Serialize;

/// A slow-decay warning is attached when the slowest boundary integral
/// decays at a rate below this fraction of `m`.
pub const SLOW_DECAY_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub continuous_threshold: f64,
    pub lambda_plus: Option<f64>,
    pub lambda_minus: Option<f64>,
    pub point_eigenvalues: Vec<f64>,
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalCoefficients {
    pub l: f64,
    pub m_plus: f64,
    pub m_minus: f64,
}

pub fn spectrum(bc: &SemitransparentBC, m: f64) -> SpectrumReport {
    let mut point_eigenvalues = Vec::new();
    let (lambda_plus, lambda_minus) = match bc.lambdas() {
        None => {
            let r = bc.delta_rate();
            if r < 0.0 {
                point_eigenvalues.push(m * m - r * r);
            }
            (None, None)
        }
        Some((lp, lm)) => {
            if lm < 0.0 {
                point_eigenvalues.push(m * m - lm * lm);
            }
            if lp < 0.0 {
                point_eigenvalues.push(m * m - lp * lp);
            }
            (Some(lp), Some(lm))
        }
    };
    point_eigenvalues.sort_by(f64::total_cmp);
    SpectrumReport {
        continuous_threshold: m * m,
        lambda_plus,
        lambda_minus,
        point_eigenvalues,
        positive: bc.is_positive(m),
    }
}

/// `L(x1)` and `M_±(x1)` on the diagonal. Entries of the family that does
/// not apply are zero.
pub fn diagonal_coefficients(bc: &SemitransparentBC, x1: f64) -> Result<DiagonalCoefficients> {
    check_x(x1)?;
    Ok(match bc.m_coeffs(x1, x1) {
        None => DiagonalCoefficients {
            l: bc.l_coeff(x1, x1).re,
            m_plus: 0.0,
            m_minus: 0.0,
        },
        Some((mp, mm)) => DiagonalCoefficients {
            l: 0.0,
            m_plus: mp.re,
            m_minus: mm.re,
        },
    })
}

fn check_x(x1: f64) -> Result<()> {
    if x1 == 0.0 || !x1.is_finite() {
        return Err(VacpolError::domain(
            "x1 must be finite and nonzero: the polarization is not defined on the plane",
        ));
    }
    Ok(())
}

fn check_positive(bc: &SemitransparentBC, m: f64) -> Result<()> {
    if bc.is_positive(m) {
        return Ok(());
    }
    let (name, rate) = match bc.lambdas() {
        None => ("gamma/(alpha+sigma)", bc.delta_rate()),
        Some((_, lm)) => ("Lambda_-", lm),
    };
    let bound = if m > 0.0 {
        "> -m"
    } else {
        ">= 0 for a massless field"
    };
    Err(VacpolError::param(format!(
        "positivity requires {name} {bound}; got {rate} with m = {m}"
    )))
}

fn branch(cfg: &FieldConfig, bc: &SemitransparentBC) -> Branch {
    Branch {
        parity: cfg.parity(),
        family: if bc.beta_is_zero() {
            Family::DeltaLike
        } else {
            Family::DeltaPrimeLike
        },
        massless: cfg.is_massless(),
    }
}

fn warnings(cfg: &FieldConfig, bc: &SemitransparentBC, p: &Profile) -> Vec<Warning> {
    let mut w = Vec::new();
    if bc.beta != 0.0 && bc.beta_is_zero() {
        w.push(Warning::BetaTreatedAsZero { beta: bc.beta });
    }
    if cfg.m > 0.0 {
        if let Some(r) = p.min_rate() {
            if r + cfg.m < SLOW_DECAY_FRACTION * cfg.m {
                w.push(Warning::SlowDecay {
                    rate: 2.0 * (r + cfg.m),
                });
            }
        }
    }
    w
}

fn prepare(cfg: &FieldConfig, bc: &SemitransparentBC, x1: f64) -> Result<Profile> {
    cfg.require_massive()?;
    check_x(x1)?;
    check_positive(bc, cfg.m)?;
    Ok(bc.profile(x1))
}

/// Boundary-dependent part of the renormalized polarization (massive field).
pub fn plane_term(cfg: &FieldConfig, bc: &SemitransparentBC, x1: f64) -> Result<f64> {
    let p = prepare(cfg, bc, x1)?;
    wall::plane_term(cfg, &p, x1.abs())
}

/// Plane term by direct proper-time integration with quadrature for every
/// boundary integral.
pub fn plane_term_oracle(cfg: &FieldConfig, bc: &SemitransparentBC, x1: f64) -> Result<f64> {
    let p = prepare(cfg, bc, x1)?;
    Ok(wall::plane_term_oracle(cfg, &p, x1.abs())?.value)
}

pub fn regularized_polarization(
    cfg: &FieldConfig,
    bc: &SemitransparentBC,
    x1: f64,
    u: f64,
) -> Result<f64> {
    let p = prepare(cfg, bc, x1)?;
    wall::regularized(cfg, &p, x1.abs(), u)
}

/// Proper-time representation of the regularized polarization, `u > d - 1`.
pub fn regularized_polarization_oracle(
    cfg: &FieldConfig,
    bc: &SemitransparentBC,
    x1: f64,
    u: f64,
) -> Result<f64> {
    let p = prepare(cfg, bc, x1)?;
    wall::strip_oracle(cfg, &p, x1.abs(), u)
}

pub fn evaluate(cfg: &FieldConfig, bc: &SemitransparentBC, x1: f64) -> Result<PolarizationValue> {
    if cfg.is_massless() {
        return massless_value(cfg, bc, x1);
    }
    let p = prepare(cfg, bc, x1)?;
    let plane = wall::plane_term(cfg, &p, x1.abs())?;
    Ok(PolarizationValue::new(
        free_term(cfg)?,
        plane,
        branch(cfg, bc),
        warnings(cfg, bc, &p),
    ))
}

pub fn renormalize_at_zero(
    cfg: &FieldConfig,
    bc: &SemitransparentBC,
    x1: f64,
) -> Result<PolarizationValue> {
    let value = evaluate(cfg, bc, x1)?;
    let fit = wall::fit_at_zero(cfg, &bc.profile(x1), x1.abs())?;
    wall::attach_fit(value, fit)
}

/// Leading small-distance term: the reflecting one, weighted by
/// `sgn(x1)(alpha - sigma)/(alpha + sigma)` for `beta = 0`.
pub fn small_x_asymptotic(cfg: &FieldConfig, bc: &SemitransparentBC, x1: f64) -> Result<f64> {
    cfg.require_massive()?;
    check_x(x1)?;
    let weight = if bc.beta_is_zero() {
        x1.signum() * (bc.alpha - bc.sigma_param) / (bc.alpha + bc.sigma_param)
    } else {
        1.0
    };
    Ok(weight * wall::small_x_leading(cfg, x1.abs()))
}

pub fn large_x_asymptotic(cfg: &FieldConfig, bc: &SemitransparentBC, x1: f64) -> Result<f64> {
    cfg.require_massive()?;
    check_x(x1)?;
    let m = cfg.m;
    let (a, s, g, b) = (bc.alpha, bc.sigma_param, bc.gamma_coupling, bc.beta);
    let sg = x1.signum();
    let ratio = if bc.beta_is_zero() {
        ((a - s) * m * sg - g) / ((a + s) * m + g)
    } else {
        (b * m * m + (a - s) * m * sg - g) / (b * m * m + (a + s) * m + g)
    };
    Ok(ratio * wall::large_x_envelope(cfg, x1.abs()))
}

/// Massless polarization (the `m -> 0` limit of free + plane).
pub fn massless_value(
    cfg: &FieldConfig,
    bc: &SemitransparentBC,
    x1: f64,
) -> Result<PolarizationValue> {
    check_x(x1)?;
    check_positive(bc, 0.0)?;
    let p = bc.profile(x1);
    let x = x1.abs();
    let br = Branch {
        massless: true,
        ..branch(cfg, bc)
    };
    let w = warnings(cfg, bc, &p);
    if cfg.d == 1 {
        // finite only when the wall reflects like Dirichlet at zero momentum,
        // which happens exactly when gamma != 0
        if bc.gamma_coupling == 0.0 {
            return Err(VacpolError::infrared(
                "massless d = 1 with gamma = 0: the wall is not reflecting at low momenta and the polarization diverges in the infrared",
            ));
        }
        let total = wall::massless_d1(cfg.kappa, &p, x)?;
        let mut w = w;
        w.push(Warning::InfraredCompensated);
        return Ok(PolarizationValue::new(0.0, total, br, w));
    }
    Ok(PolarizationValue::new(
        0.0,
        wall::massless_high_d(cfg.d, &p, x)?,
        br,
        w,
    ))
}
