//! Machinery shared by the two wall geometries.
//!
//! On the diagonal, every reduced heat kernel considered here has the form
//!
//! ```text
//! K(tau; x, x) = e^{-m^2 tau} / sqrt(4 pi tau) * [ 1 + A e^{-x^2/tau}
//!                + sum_j c_j \int_0^inf dw e^{-lambda_j w - (w + 2|x|)^2 / (4 tau)} ]
//! ```
//!
//! so a wall is described on one side by the image weight `A` and a short
//! list of damped terms `(c_j, lambda_j)`. Everything below works on that
//! description.

use crate::error::{Result, VacpolError};
use crate::field::{
    boundary_prefactor, bulk_term, check_pole, laurent_fit, FieldConfig, LaurentFit,
    PolarizationValue, LAURENT_STEP,
};
use crate::quadrature::{integrate_finite, integrate_semi_infinite_scaled, Integral, QuadSpec};
use crate::specialfns::{frak_k_scaled, gamma, upper_inc_gamma_scaled, EULER_GAMMA};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Damped {
    pub coeff: f64,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Profile {
    pub image: f64,
    pub damped: Vec<Damped>,
}

impl Profile {
    pub fn image_only(image: f64) -> Self {
        Profile {
            image,
            damped: Vec::new(),
        }
    }

    /// Drop terms whose coefficient is exactly zero.
    pub fn pruned(mut self) -> Self {
        self.damped.retain(|t| t.coeff != 0.0);
        self
    }

    pub fn min_rate(&self) -> Option<f64> {
        self.damped.iter().map(|t| t.rate).reduce(f64::min)
    }
}

fn inner_spec() -> QuadSpec {
    QuadSpec::relative(1e-13)
}

/// `2|x| \int_0^inf dv e^{-2 lambda |x| v} (v+1)^{p} K~_nu(w0 (v+1))`, with the
/// overall `e^{-w0}` removed (`K~` is the exponentially scaled Macdonald
/// function and `w0 = 2 m |x|`).
fn damped_bessel_integral_scaled(
    nu: f64,
    power: f64,
    rate: f64,
    m: f64,
    x_abs: f64,
    spec: &QuadSpec,
) -> Result<f64> {
    let w0 = 2.0 * m * x_abs;
    let decay = 2.0 * (rate + m) * x_abs;
    if !(decay > 0.0) {
        return Err(VacpolError::param(format!(
            "boundary integral does not converge: rate {rate} <= -m = {}",
            -m
        )));
    }
    let integrand = |v: f64| -> f64 {
        let k = frak_k_scaled(nu, w0 * (v + 1.0)).unwrap_or(0.0);
        (-decay * v).exp() * (v + 1.0).powf(power) * k
    };
    let value = if decay >= 1.0 {
        integrate_semi_infinite_scaled(integrand, 1.0 / decay, spec)?.value
    } else {
        let head = integrate_finite(integrand, 0.0, 1.0, spec)?.value;
        let tail = integrate_semi_infinite_scaled(|t| integrand(1.0 + t), 1.0 / decay, spec)?.value;
        head + tail
    };
    Ok(2.0 * x_abs * value)
}

/// Boundary bracket `A K_nu(2m|x|) + sum_j c_j 2|x| \int ...` of the continued
/// formula, with the common factor `e^{-2m|x|}` removed.
fn bracket_scaled(
    cfg: &FieldConfig,
    p: &Profile,
    x_abs: f64,
    u: f64,
    spec: &QuadSpec,
) -> Result<f64> {
    let d = cfg.d as f64;
    let nu = (d - 1.0 - u) / 2.0;
    let w0 = 2.0 * cfg.m * x_abs;
    let mut acc = if p.image != 0.0 {
        p.image * frak_k_scaled(nu, w0)?
    } else {
        0.0
    };
    for t in &p.damped {
        acc +=
            t.coeff * damped_bessel_integral_scaled(nu, u - d + 1.0, t.rate, cfg.m, x_abs, spec)?;
    }
    Ok(acc)
}

/// Closed-form plane term (massive field).
pub(crate) fn plane_term(cfg: &FieldConfig, p: &Profile, x_abs: f64) -> Result<f64> {
    let spec = QuadSpec::relative(1e-12);
    let b = bracket_scaled(cfg, p, x_abs, 0.0, &spec)?;
    Ok(boundary_prefactor(cfg, x_abs, 0.0) * b * (-2.0 * cfg.m * x_abs).exp())
}

/// Analytically continued regularized polarization.
pub(crate) fn regularized(cfg: &FieldConfig, p: &Profile, x_abs: f64, u: f64) -> Result<f64> {
    check_pole(cfg.d, u)?;
    let spec = QuadSpec::relative(1e-13);
    let b = bracket_scaled(cfg, p, x_abs, u, &spec)?;
    Ok(bulk_term(cfg, u) + boundary_prefactor(cfg, x_abs, u) * b * (-2.0 * cfg.m * x_abs).exp())
}

/// `\int_0^inf dw e^{-lambda w - (w+s)^2/(4 tau)}` by quadrature (oracle use).
pub(crate) fn gauss_damped_quadrature(rate: f64, s: f64, tau: f64) -> Result<f64> {
    gauss_damped_quadrature_shifted(rate, s, tau, 0.0)
}

/// `e^{-shift}` times the damped integral, with the shift kept inside the
/// exponent so that growth like `e^{rate^2 tau}` cannot overflow.
fn gauss_damped_quadrature_shifted(rate: f64, s: f64, tau: f64, shift: f64) -> Result<f64> {
    let spec = inner_spec();
    let peak = -2.0 * rate * tau - s;
    let width = (2.0 * tau).sqrt();
    if peak > 0.0 {
        // completed square: the large terms cancel analytically
        let top = rate * rate * tau + rate * s - shift;
        let exponent = |w: f64| top - (w - peak) * (w - peak) / (4.0 * tau);
        // below peak - 40 width the integrand is under e^{-800} of its peak
        let lo = (peak - 40.0 * width).max(0.0);
        let head = integrate_finite(|w| exponent(w).exp(), lo, peak, &spec)?.value;
        let tail =
            integrate_semi_infinite_scaled(|w| exponent(peak + w).exp(), width, &spec)?.value;
        Ok(head + tail)
    } else {
        let exponent = |w: f64| -rate * w - (w + s) * (w + s) / (4.0 * tau) - shift;
        let slope = rate + s / (2.0 * tau);
        let scale = if slope > 0.0 {
            width.min(1.0 / slope)
        } else {
            width
        };
        Ok(integrate_semi_infinite_scaled(|w| exponent(w).exp(), scale, &spec)?.value)
    }
}

/// Diagonal heat-trace bracket without the constant bulk "1", times
/// `e^{-m^2 tau}`.
fn tau_bracket(p: &Profile, x_abs: f64, tau: f64, m: f64) -> Result<f64> {
    let shift = m * m * tau;
    let mut acc = p.image * (-x_abs * x_abs / tau - shift).exp();
    for t in &p.damped {
        acc += t.coeff * gauss_damped_quadrature_shifted(t.rate, 2.0 * x_abs, tau, shift)?;
    }
    Ok(acc)
}

fn propagate<T>(slot: &std::cell::RefCell<Option<VacpolError>>, r: Result<T>, fallback: T) -> T {
    match r {
        Ok(v) => v,
        Err(e) => {
            slot.borrow_mut().get_or_insert(e);
            fallback
        }
    }
}

/// Proper-time scale of the slowest decay: `e^{-m^2 tau}` is offset by
/// `e^{lambda^2 tau}` from a negative damping rate.
fn tau_decay_scale(p: &Profile, m: f64) -> f64 {
    let slow = p
        .damped
        .iter()
        .filter(|t| t.coeff != 0.0 && t.rate < 0.0)
        .map(|t| t.rate * t.rate)
        .fold(0.0, f64::max);
    1.0 / (m * m - slow)
}

/// `int_0^inf f`, split at `head` with the remainder mapped on `scale`.
fn split_semi_infinite(
    f: impl Fn(f64) -> f64,
    head: f64,
    scale: f64,
    spec: &QuadSpec,
) -> Result<Integral> {
    let a = integrate_finite(&f, 0.0, head, spec)?;
    let b = integrate_semi_infinite_scaled(|t| f(head + t), scale.max(head), spec)?;
    Ok(Integral {
        value: a.value + b.value,
        err_estimate: a.err_estimate + b.err_estimate,
    })
}

/// Plane term from direct proper-time integration of the heat kernel at
/// `u = 0`, with every boundary integral done by quadrature.
pub(crate) fn plane_term_oracle(cfg: &FieldConfig, p: &Profile, x_abs: f64) -> Result<Integral> {
    let d = cfg.d as f64;
    let m = cfg.m;
    let norm = 1.0 / (2.0 * (4.0 * PI).powf(d / 2.0) * PI.sqrt());
    let failure = std::cell::RefCell::new(None);
    let integrand = |tau: f64| {
        let b = propagate(&failure, tau_bracket(p, x_abs, tau, m), 0.0);
        tau.powf(-(d + 1.0) / 2.0) * b
    };
    let spec = QuadSpec::relative(1e-11);
    let r = split_semi_infinite(integrand, x_abs / m, tau_decay_scale(p, m), &spec)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(Integral {
        value: norm * r.value,
        err_estimate: norm * r.err_estimate,
    })
}

/// Regularized polarization from the proper-time representation, valid in
/// the strip `u > d - 1`. The bulk "1" is integrated numerically too.
pub(crate) fn strip_oracle(cfg: &FieldConfig, p: &Profile, x_abs: f64, u: f64) -> Result<f64> {
    let d = cfg.d as f64;
    if !(u > d - 1.0) {
        return Err(VacpolError::domain(format!(
            "the proper-time representation needs u > d - 1 = {}, got {u}",
            d - 1.0
        )));
    }
    let m = cfg.m;
    let norm = cfg.kappa.powf(u) / (2.0 * (4.0 * PI).powf(d / 2.0) * gamma((u + 1.0) / 2.0));
    let failure = std::cell::RefCell::new(None);
    // tau = t^2 removes the integrable tau^{(u-d-1)/2} endpoint singularity
    let integrand = |t: f64| {
        let tau = t * t;
        let b = propagate(&failure, tau_bracket(p, x_abs, tau, m), 0.0);
        2.0 * t.powf(u - d) * ((-m * m * tau).exp() + b)
    };
    let spec = QuadSpec::relative(1e-11);
    let r = split_semi_infinite(integrand, 1.0 / m, tau_decay_scale(p, m).sqrt(), &spec)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(norm * r.value)
}

/// `z^{d-1} e^z Gamma(2-d, z)` for `d >= 3`, switching to its leading
/// behaviour `z/(d-2)` when `z` is tiny.
fn incomplete_gamma_weight(d: u32, z: f64) -> Result<f64> {
    if d >= 3 && z < 1e-12 {
        return Ok(z / (d as f64 - 2.0));
    }
    Ok(z.powi(d as i32 - 1) * upper_inc_gamma_scaled(2.0 - d as f64, z)?)
}

/// Massless total for `d >= 2`, the `m -> 0` limit of the plane term.
pub(crate) fn massless_high_d(d: u32, p: &Profile, x_abs: f64) -> Result<f64> {
    debug_assert!(d >= 2);
    let df = d as f64;
    let lead = gamma((df - 1.0) / 2.0) / ((4.0 * PI).powf((df + 1.0) / 2.0) * x_abs.powf(df - 1.0));
    let mut bracket = p.image;
    for t in &p.damped {
        if t.coeff == 0.0 {
            continue;
        }
        if t.rate < 0.0 {
            return Err(VacpolError::param(format!(
                "massless theory needs non-negative damping rates, got {}",
                t.rate
            )));
        }
        if t.rate == 0.0 {
            if d == 2 {
                return Err(VacpolError::BoundaryCase(
                    "d = 2 with a vanishing damping rate: the boundary integral diverges logarithmically and no closed form exists".into(),
                ));
            }
            bracket += t.coeff * 2.0 * x_abs / (df - 2.0);
        } else {
            let z = 2.0 * t.rate * x_abs;
            let w = if d == 2 {
                z * upper_inc_gamma_scaled(0.0, z)?
            } else {
                incomplete_gamma_weight(d, z)?
            };
            bracket += t.coeff / t.rate * w;
        }
    }
    Ok(lead * bracket)
}

/// Massless total for `d = 1`: finite only when the `log m` pieces of the free
/// and plane parts cancel, i.e. when `A + sum_j c_j / lambda_j = -1`.
pub(crate) fn massless_d1(kappa: f64, p: &Profile, x_abs: f64) -> Result<f64> {
    let mut weight = p.image;
    let mut tail = 0.0;
    for t in &p.damped {
        if t.coeff == 0.0 {
            continue;
        }
        if !(t.rate > 0.0) {
            return Err(VacpolError::infrared(
                "massless d = 1: a boundary integral without damping diverges in the infrared",
            ));
        }
        weight += t.coeff / t.rate;
        tail += t.coeff / t.rate * upper_inc_gamma_scaled(0.0, 2.0 * t.rate * x_abs)?;
    }
    if (weight + 1.0).abs() > 1e-10 * (1.0 + weight.abs()) {
        return Err(VacpolError::infrared(format!(
            "massless d = 1: the log(m) terms do not cancel (net weight {}), the polarization diverges",
            weight + 1.0
        )));
    }
    Ok(((2.0 * kappa * x_abs).ln() + EULER_GAMMA - tail) / (2.0 * PI))
}

/// Leading large-distance coefficient: `A + sum_j c_j / (lambda_j + m)`.
pub(crate) fn large_x_ratio(p: &Profile, m: f64) -> f64 {
    p.image + p.damped.iter().map(|t| t.coeff / (t.rate + m)).sum::<f64>()
}

/// Leading small-distance behaviour of a Neumann-like plane term.
pub(crate) fn small_x_leading(cfg: &FieldConfig, x_abs: f64) -> f64 {
    match cfg.d {
        1 => -(cfg.m * x_abs).ln() / (2.0 * PI),
        2 => 1.0 / (8.0 * PI * x_abs),
        d => {
            let df = d as f64;
            gamma((df - 1.0) / 2.0) / ((4.0 * PI).powf((df + 1.0) / 2.0) * x_abs.powf(df - 1.0))
        }
    }
}

/// `m^{(d-2)/2} e^{-2 m |x|} / (2 (4 pi)^{d/2} |x|^{d/2})`.
pub(crate) fn large_x_envelope(cfg: &FieldConfig, x_abs: f64) -> f64 {
    let df = cfg.d as f64;
    cfg.m.powf((df - 2.0) / 2.0) * (-2.0 * cfg.m * x_abs).exp()
        / (2.0 * (4.0 * PI).powf(df / 2.0) * x_abs.powf(df / 2.0))
}

/// Laurent fit of the continued polarization around `u = 0`.
pub(crate) fn fit_at_zero(cfg: &FieldConfig, p: &Profile, x_abs: f64) -> Result<LaurentFit> {
    laurent_fit(|u| regularized(cfg, p, x_abs, u), LAURENT_STEP)
}

/// Tolerance of the Laurent-fit quality checks.
pub const FIT_TOL: f64 = 1e-6;

/// Attach a Laurent fit to a closed-form value and check that the two agree.
pub(crate) fn attach_fit(
    mut value: PolarizationValue,
    fit: LaurentFit,
) -> Result<PolarizationValue> {
    let scale = value.total.abs().max(1.0);
    if fit.residual > FIT_TOL * scale {
        return Err(VacpolError::NumericalFailure {
            what: "Laurent fit residual above tolerance".into(),
            estimate: fit.c0,
            error: fit.residual,
        });
    }
    if (fit.c0 - value.total).abs() > FIT_TOL * scale {
        return Err(VacpolError::NumericalFailure {
            what: "regular part of the Laurent fit disagrees with the closed form".into(),
            estimate: fit.c0,
            error: (fit.c0 - value.total).abs(),
        });
    }
    value.laurent = Some(fit);
    Ok(value)
}
