//! Perfectly reflecting plane: independent Robin conditions on each face.
//!
//! The two half-spaces decouple, so at `x1` only the parameter of the face
//! on that side (`b_s`) matters. Positivity is still checked on both faces
//! because it is a property of the whole operator.

use crate::error::{Result, VacpolError};
use crate::field::{free_term, Branch, Family, FieldConfig, PolarizationValue, Warning};
use crate::heatkernel::{ReflectingBC, RobinParam};
use crate::semitransparent::SpectrumReport;
use crate::specialfns::frak_k;
use crate::wall;
use std::f64::consts::PI;

/// Relative width of the near-threshold band `b_s in (-m, -m(1 - 1e-6)]`.
pub const SLOW_DECAY_BAND: f64 = 1e-6;

pub fn spectrum(bc: &ReflectingBC, m: f64) -> SpectrumReport {
    let mut point_eigenvalues: Vec<f64> = [bc.b_plus, bc.b_minus]
        .iter()
        .filter_map(|b| b.finite())
        .filter(|&b| b < 0.0)
        .map(|b| m * m - b * b)
        .collect();
    point_eigenvalues.sort_by(f64::total_cmp);
    SpectrumReport {
        continuous_threshold: m * m,
        lambda_plus: None,
        lambda_minus: None,
        point_eigenvalues,
        positive: bc.b_plus.is_positive(m) && bc.b_minus.is_positive(m),
    }
}

fn check_positive(bc: &ReflectingBC, m: f64) -> Result<()> {
    for (face, b) in [("b_plus", bc.b_plus), ("b_minus", bc.b_minus)] {
        if !b.is_positive(m) {
            let bound = if m > 0.0 {
                "> -m"
            } else {
                ">= 0 for a massless field"
            };
            return Err(VacpolError::param(format!(
                "positivity requires {face} {bound}; got {b} with m = {m}"
            )));
        }
    }
    Ok(())
}

fn check_x(x1: f64) -> Result<()> {
    if x1 == 0.0 || !x1.is_finite() {
        return Err(VacpolError::domain(
            "x1 must be finite and nonzero: the polarization diverges on the plane",
        ));
    }
    Ok(())
}

fn branch(cfg: &FieldConfig, b: RobinParam) -> Branch {
    let family = match b {
        RobinParam::Dirichlet => Family::Dirichlet,
        RobinParam::Finite(v) if v == 0.0 => Family::Neumann,
        RobinParam::Finite(_) => Family::Robin,
    };
    Branch {
        parity: cfg.parity(),
        family,
        massless: cfg.is_massless(),
    }
}

fn warnings(cfg: &FieldConfig, b: RobinParam) -> Vec<Warning> {
    match b {
        RobinParam::Finite(v) if cfg.m > 0.0 && v <= -cfg.m * (1.0 - SLOW_DECAY_BAND) => {
            vec![Warning::SlowDecay {
                rate: 2.0 * (v + cfg.m),
            }]
        }
        _ => Vec::new(),
    }
}

fn prepare(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<RobinParam> {
    cfg.require_massive()?;
    check_x(x1)?;
    check_positive(bc, cfg.m)?;
    Ok(bc.side(x1))
}

/// Neumann (`sign = +1`) or Dirichlet (`sign = -1`) plane term in closed form.
pub fn plane_term_dn(cfg: &FieldConfig, x1: f64, sign: f64) -> Result<f64> {
    cfg.require_massive()?;
    check_x(x1)?;
    let x = x1.abs();
    let df = cfg.d as f64;
    let k = frak_k((df - 1.0) / 2.0, 2.0 * cfg.m * x)?;
    Ok(sign.signum() * k
        / (2f64.powf((3.0 * df - 1.0) / 2.0) * PI.powf((df + 1.0) / 2.0) * x.powf(df - 1.0)))
}

/// Boundary-dependent part of the renormalized polarization (massive field).
pub fn plane_term(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<f64> {
    match prepare(cfg, bc, x1)? {
        RobinParam::Dirichlet => plane_term_dn(cfg, x1, -1.0),
        RobinParam::Finite(b) if b == 0.0 => plane_term_dn(cfg, x1, 1.0),
        side => wall::plane_term(cfg, &side.profile(), x1.abs()),
    }
}

/// Plane term by direct proper-time integration of the heat kernel, every
/// inner integral done by quadrature. Independent of [`plane_term`].
pub fn plane_term_oracle(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<f64> {
    let side = prepare(cfg, bc, x1)?;
    Ok(wall::plane_term_oracle(cfg, &side.profile(), x1.abs())?.value)
}

/// Analytic continuation in `u` of the zeta-regularized polarization.
pub fn regularized_polarization(
    cfg: &FieldConfig,
    bc: &ReflectingBC,
    x1: f64,
    u: f64,
) -> Result<f64> {
    let side = prepare(cfg, bc, x1)?;
    wall::regularized(cfg, &side.profile(), x1.abs(), u)
}

/// The same quantity from its proper-time integral, valid for `u > d - 1`.
pub fn regularized_polarization_oracle(
    cfg: &FieldConfig,
    bc: &ReflectingBC,
    x1: f64,
    u: f64,
) -> Result<f64> {
    let side = prepare(cfg, bc, x1)?;
    wall::strip_oracle(cfg, &side.profile(), x1.abs(), u)
}

/// Closed-form renormalized polarization (massive) or its massless limit.
pub fn evaluate(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<PolarizationValue> {
    if cfg.is_massless() {
        return massless_value(cfg, bc, x1);
    }
    let plane = plane_term(cfg, bc, x1)?;
    let side = bc.side(x1);
    Ok(PolarizationValue::new(
        free_term(cfg)?,
        plane,
        branch(cfg, side),
        warnings(cfg, side),
    ))
}

/// Regular part at `u = 0` extracted from the continued formula, checked
/// against the closed forms and attached to the returned value.
pub fn renormalize_at_zero(
    cfg: &FieldConfig,
    bc: &ReflectingBC,
    x1: f64,
) -> Result<PolarizationValue> {
    let value = evaluate(cfg, bc, x1)?;
    let fit = wall::fit_at_zero(cfg, &bc.side(x1).profile(), x1.abs())?;
    wall::attach_fit(value, fit)
}

/// Leading term of the plane contribution as `x1 -> 0`; independent of the
/// Robin parameter except for the Dirichlet sign flip.
pub fn small_x_asymptotic(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<f64> {
    cfg.require_massive()?;
    check_x(x1)?;
    let sign = match bc.side(x1) {
        RobinParam::Dirichlet => -1.0,
        RobinParam::Finite(_) => 1.0,
    };
    Ok(sign * wall::small_x_leading(cfg, x1.abs()))
}

/// Leading term of the plane contribution as `|x1| -> inf`.
pub fn large_x_asymptotic(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<f64> {
    cfg.require_massive()?;
    check_x(x1)?;
    let m = cfg.m;
    let ratio = match bc.side(x1) {
        RobinParam::Dirichlet => -1.0,
        RobinParam::Finite(b) => (m - b) / (m + b),
    };
    Ok(ratio * wall::large_x_envelope(cfg, x1.abs()))
}

/// Massless polarization, defined as the `m -> 0` limit of free + plane.
pub fn massless_value(cfg: &FieldConfig, bc: &ReflectingBC, x1: f64) -> Result<PolarizationValue> {
    check_x(x1)?;
    check_positive(bc, 0.0)?;
    let side = bc.side(x1);
    let p = side.profile();
    let x = x1.abs();
    let br = Branch {
        massless: true,
        ..branch(cfg, side)
    };
    if cfg.d == 1 {
        if side == RobinParam::NEUMANN {
            return Err(VacpolError::infrared(
                "massless d = 1 with a Neumann face: the polarization diverges in the infrared",
            ));
        }
        let total = wall::massless_d1(cfg.kappa, &p, x)?;
        return Ok(PolarizationValue::new(
            0.0,
            total,
            br,
            vec![Warning::InfraredCompensated],
        ));
    }
    Ok(PolarizationValue::new(
        0.0,
        wall::massless_high_d(cfg.d, &p, x)?,
        br,
        Vec::new(),
    ))
}
