//! Reduced one-dimensional heat kernels `exp(-tau A_1)(x, y)` for the
//! reflecting (Robin) and semitransparent (U(2) point interaction) walls.
//!
//! The damped Gaussian integrals that appear in both families,
//! `\int_0^inf dw exp(-lambda w - (w + s)^2 / (4 tau))`, are evaluated in
//! closed form through the scaled complementary error function. A
//! quadrature version of the Robin kernel and an eigenfunction expansion
//! are kept as independent checks.

use crate::error::{Result, VacpolError};
use crate::quadrature::{integrate_finite, Integral, QuadSpec};
use crate::specialfns::erfcx;
use crate::wall::{gauss_damped_quadrature, Damped, Profile};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Below this `|beta|` the semitransparent wall is treated as `beta = 0`.
pub const BETA_ZERO_THRESHOLD: f64 = 1e-12;
const UNITARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatQuery {
    pub tau: f64,
    pub x1: f64,
    pub y1: f64,
}

impl HeatQuery {
    pub fn new(tau: f64, x1: f64, y1: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(VacpolError::param(format!(
                "tau must be positive, got {tau}"
            )));
        }
        if x1 == 0.0 || y1 == 0.0 || !x1.is_finite() || !y1.is_finite() {
            return Err(VacpolError::param(
                "x1 and y1 must be finite and nonzero (the wall itself is excluded)",
            ));
        }
        Ok(HeatQuery { tau, x1, y1 })
    }
}

/// Robin parameter of one face: a finite `b` (`b = 0` is Neumann) or the
/// Dirichlet point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RobinParam {
    Finite(f64),
    Dirichlet,
}

impl RobinParam {
    pub const NEUMANN: RobinParam = RobinParam::Finite(0.0);

    pub fn finite(self) -> Option<f64> {
        match self {
            RobinParam::Finite(b) => Some(b),
            RobinParam::Dirichlet => None,
        }
    }

    /// Positivity of `-d^2 + m^2` on the half-line with this condition:
    /// `b > -m` for a massive field, `b >= 0` for a massless one.
    pub fn is_positive(self, m: f64) -> bool {
        match self {
            RobinParam::Dirichlet => true,
            RobinParam::Finite(b) if m > 0.0 => b > -m,
            RobinParam::Finite(b) => b >= 0.0,
        }
    }

    pub(crate) fn profile(self) -> Profile {
        match self {
            RobinParam::Dirichlet => Profile::image_only(-1.0),
            RobinParam::Finite(b) => Profile {
                image: 1.0,
                damped: vec![Damped {
                    coeff: -2.0 * b,
                    rate: b,
                }],
            }
            .pruned(),
        }
    }
}

impl std::fmt::Display for RobinParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RobinParam::Finite(b) => write!(f, "{b}"),
            RobinParam::Dirichlet => f.write_str("dirichlet"),
        }
    }
}

impl std::str::FromStr for RobinParam {
    type Err = VacpolError;

    /// A finite number, or `dirichlet` (also `inf`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("dirichlet") || t.eq_ignore_ascii_case("inf") {
            return Ok(RobinParam::Dirichlet);
        }
        match t.parse::<f64>() {
            Ok(b) if b.is_finite() => Ok(RobinParam::Finite(b)),
            _ => Err(VacpolError::param(format!(
                "Robin parameter must be a finite number or 'dirichlet', got '{s}'"
            ))),
        }
    }
}

/// Independent Robin conditions on the two faces of the plane:
/// `b_plus` for `x1 > 0`, `b_minus` for `x1 < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectingBC {
    pub b_plus: RobinParam,
    pub b_minus: RobinParam,
}

impl ReflectingBC {
    pub fn new(b_plus: RobinParam, b_minus: RobinParam) -> Result<Self> {
        for b in [b_plus, b_minus] {
            if let RobinParam::Finite(v) = b {
                if !v.is_finite() {
                    return Err(VacpolError::param(
                        "Robin parameters must be finite or Dirichlet",
                    ));
                }
            }
        }
        Ok(ReflectingBC { b_plus, b_minus })
    }

    pub fn symmetric(b: RobinParam) -> Self {
        ReflectingBC {
            b_plus: b,
            b_minus: b,
        }
    }

    pub fn neumann() -> Self {
        Self::symmetric(RobinParam::NEUMANN)
    }

    pub fn dirichlet() -> Self {
        Self::symmetric(RobinParam::Dirichlet)
    }

    /// Parameter of the face on the side of `x1`.
    pub fn side(&self, x1: f64) -> RobinParam {
        if x1 > 0.0 {
            self.b_plus
        } else {
            self.b_minus
        }
    }
}

/// U(2) point interaction: `(psi(0+), psi'(0+)) = omega [[alpha, beta], [gamma, sigma]] (psi(0-), psi'(0-))`
/// with `|omega| = 1` and `alpha sigma - beta gamma = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemitransparentBC {
    pub omega: Complex64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_coupling: f64,
    pub sigma_param: f64,
}

impl SemitransparentBC {
    pub fn new(
        omega: Complex64,
        alpha: f64,
        beta: f64,
        gamma_coupling: f64,
        sigma_param: f64,
    ) -> Result<Self> {
        if [omega.re, omega.im, alpha, beta, gamma_coupling, sigma_param]
            .iter()
            .any(|v| !v.is_finite())
        {
            return Err(VacpolError::param(
                "semitransparent parameters must be finite",
            ));
        }
        if (omega.norm() - 1.0).abs() > UNITARITY_TOL {
            return Err(VacpolError::param(format!(
                "|omega| must be 1, got {}",
                omega.norm()
            )));
        }
        let det = alpha * sigma_param - beta * gamma_coupling;
        if (det - 1.0).abs() > UNITARITY_TOL {
            return Err(VacpolError::param(format!(
                "alpha*sigma - beta*gamma must be 1, got {det}"
            )));
        }
        if beta.abs() < BETA_ZERO_THRESHOLD && alpha + sigma_param == 0.0 {
            return Err(VacpolError::param(
                "alpha + sigma must not vanish when beta = 0",
            ));
        }
        Ok(SemitransparentBC {
            omega,
            alpha,
            beta,
            gamma_coupling,
            sigma_param,
        })
    }

    /// No interaction at all.
    pub fn free() -> Self {
        Self::pure_delta(0.0)
    }

    /// `-d^2 + gamma delta`.
    pub fn pure_delta(gamma_coupling: f64) -> Self {
        SemitransparentBC {
            omega: Complex64::new(1.0, 0.0),
            alpha: 1.0,
            beta: 0.0,
            gamma_coupling,
            sigma_param: 1.0,
        }
    }

    /// `-d^2 + beta delta'`.
    pub fn pure_delta_prime(beta: f64) -> Self {
        SemitransparentBC {
            omega: Complex64::new(1.0, 0.0),
            alpha: 1.0,
            beta,
            gamma_coupling: 0.0,
            sigma_param: 1.0,
        }
    }

    pub fn beta_is_zero(&self) -> bool {
        self.beta.abs() < BETA_ZERO_THRESHOLD
    }

    fn root(&self) -> f64 {
        let a = self.alpha - self.sigma_param;
        (a * a + 4.0).sqrt()
    }

    /// `(Lambda_+, Lambda_-)`, defined for `beta != 0`.
    pub fn lambdas(&self) -> Option<(f64, f64)> {
        if self.beta_is_zero() {
            return None;
        }
        let mid = (self.alpha + self.sigma_param) / (2.0 * self.beta);
        let half = self.root() / (2.0 * self.beta.abs());
        Some((mid + half, mid - half))
    }

    /// `gamma / (alpha + sigma)`, the delta-type damping rate.
    pub fn delta_rate(&self) -> f64 {
        self.gamma_coupling / (self.alpha + self.sigma_param)
    }

    /// Positivity of the reduced operator: for `m > 0` the relevant rate
    /// must exceed `-m`; for `m = 0` it must be non-negative.
    pub fn is_positive(&self, m: f64) -> bool {
        let rate = match self.lambdas() {
            None => self.delta_rate(),
            Some((_, lm)) => lm,
        };
        if m > 0.0 {
            rate > -m
        } else {
            rate >= 0.0
        }
    }

    /// `L(x1, y1)` (delta-type branch).
    pub fn l_coeff(&self, x1: f64, y1: f64) -> Complex64 {
        let s = self.alpha + self.sigma_param;
        if x1 * y1 > 0.0 {
            Complex64::new((self.alpha - self.sigma_param) / s * x1.signum(), 0.0)
        } else {
            let w = Complex64::new(self.omega.re, x1.signum() * self.omega.im);
            -(Complex64::new(1.0, 0.0) - 2.0 * w / s)
        }
    }

    /// `(M_+(x1, y1), M_-(x1, y1))` (delta-prime-type branch). The kernel
    /// carries `-(M_+ e^{-Lambda_+ w} - M_- e^{-Lambda_- w})`.
    pub fn m_coeffs(&self, x1: f64, y1: f64) -> Option<(Complex64, Complex64)> {
        let (lp, lm) = self.lambdas()?;
        let pre = self.beta.signum() / self.root();
        let s = self.alpha + self.sigma_param;
        let a = self.alpha - self.sigma_param;
        let f = |lam: f64| -> Complex64 {
            if x1 * y1 > 0.0 {
                Complex64::new(
                    pre * (s * lam - 2.0 * self.gamma_coupling - a * lam * x1.signum()),
                    0.0,
                )
            } else {
                let w = Complex64::new(self.omega.re, x1.signum() * self.omega.im);
                -2.0 * pre * lam * w
            }
        };
        Some((f(lp), f(lm)))
    }

    /// Kernel coefficients for the pair `(x1, y1)`: the image weight and
    /// the damped terms `(c_j, lambda_j)`.
    fn kernel_terms(&self, x1: f64, y1: f64) -> (Complex64, Vec<(Complex64, f64)>) {
        match self.lambdas() {
            None => {
                let l = self.l_coeff(x1, y1);
                let rate = self.delta_rate();
                (l, vec![(-(1.0 + l) * rate, rate)])
            }
            Some((lp, lm)) => {
                let (mp, mm) = self.m_coeffs(x1, y1).expect("beta != 0");
                let sign = if x1 * y1 > 0.0 { 1.0 } else { -1.0 };
                (Complex64::new(sign, 0.0), vec![(-mp, lp), (mm, lm)])
            }
        }
    }

    /// Diagonal description used by the polarization formulas.
    pub(crate) fn profile(&self, x1: f64) -> Profile {
        let (a, terms) = self.kernel_terms(x1, x1);
        Profile {
            image: a.re,
            damped: terms
                .into_iter()
                .map(|(c, rate)| Damped { coeff: c.re, rate })
                .collect(),
        }
        .pruned()
    }
}

/// `\int_0^inf dw exp(-lambda w - (w + s)^2 / (4 tau))` in closed form.
pub fn gauss_damped_integral(lambda: f64, s: f64, tau: f64) -> f64 {
    let rt = tau.sqrt();
    let z = lambda * rt + s / (2.0 * rt);
    let pre = (PI * tau).sqrt();
    if z >= 0.0 {
        pre * (-s * s / (4.0 * tau)).exp() * erfcx(z)
    } else {
        // erfcx(z) = 2 e^{z^2} - erfcx(-z); merge exponents to avoid overflow
        pre * (2.0 * (lambda * lambda * tau + lambda * s).exp()
            - (-s * s / (4.0 * tau)).exp() * erfcx(-z))
    }
}

fn gaussian(tau: f64, r: f64) -> f64 {
    (-r * r / (4.0 * tau)).exp()
}

/// Robin heat kernel on the half-line `x, y > 0` (any finite real `b`).
pub fn robin_half_line_kernel(q: &HeatQuery, b: f64, m: f64) -> Result<f64> {
    check_half_line(q)?;
    let s = q.x1 + q.y1;
    let mut k = gaussian(q.tau, q.x1 - q.y1) + gaussian(q.tau, s);
    if b != 0.0 {
        k -= 2.0 * b * gauss_damped_integral(b, s, q.tau);
    }
    Ok((-m * m * q.tau).exp() * k / (4.0 * PI * q.tau).sqrt())
}

/// Dirichlet heat kernel on the half-line.
pub fn dirichlet_half_line_kernel(q: &HeatQuery, m: f64) -> Result<f64> {
    check_half_line(q)?;
    let k = gaussian(q.tau, q.x1 - q.y1) - gaussian(q.tau, q.x1 + q.y1);
    Ok((-m * m * q.tau).exp() * k / (4.0 * PI * q.tau).sqrt())
}

/// Robin kernel with the damped Gaussian integral done by quadrature.
pub fn robin_half_line_kernel_quadrature(q: &HeatQuery, b: f64, m: f64) -> Result<f64> {
    check_half_line(q)?;
    let s = q.x1 + q.y1;
    let mut k = gaussian(q.tau, q.x1 - q.y1) + gaussian(q.tau, s);
    if b != 0.0 {
        k -= 2.0 * b * gauss_damped_quadrature(b, s, q.tau)?;
    }
    Ok((-m * m * q.tau).exp() * k / (4.0 * PI * q.tau).sqrt())
}

fn check_half_line(q: &HeatQuery) -> Result<()> {
    if q.x1 > 0.0 && q.y1 > 0.0 {
        Ok(())
    } else {
        Err(VacpolError::param(
            "half-line kernel needs x1 > 0 and y1 > 0",
        ))
    }
}

/// Kernel for the perfectly reflecting plane. The two half-spaces
/// decouple, so points on opposite sides give zero.
pub fn reflecting_kernel(q: &HeatQuery, bc: &ReflectingBC, m: f64) -> Result<f64> {
    if q.x1 * q.y1 < 0.0 {
        return Ok(0.0);
    }
    let mirrored = HeatQuery {
        tau: q.tau,
        x1: q.x1.abs(),
        y1: q.y1.abs(),
    };
    match bc.side(q.x1) {
        RobinParam::Finite(b) => robin_half_line_kernel(&mirrored, b, m),
        RobinParam::Dirichlet => dirichlet_half_line_kernel(&mirrored, m),
    }
}

/// Eigenfunction expansion of the Robin half-line kernel.
///
/// The continuum integral is truncated at `k_max = 10 / sqrt(tau)`; the
/// bound on the discarded Gaussian tail is added to `err_estimate`.
pub fn spectral_oracle_robin(q: &HeatQuery, b: f64, m: f64) -> Result<Integral> {
    check_half_line(q)?;
    if q.tau < 1e-3 {
        return Err(VacpolError::param(
            "spectral expansion is only offered for tau >= 1e-3",
        ));
    }
    let (x, y, tau) = (q.x1, q.y1, q.tau);
    let k_max = 10.0 / tau.sqrt();
    let integrand = |k: f64| {
        let norm = k * k + b * b;
        let fx = k * (k * x).cos() + b * (k * x).sin();
        let fy = k * (k * y).cos() + b * (k * y).sin();
        let ratio = if norm > 0.0 {
            fx * fy / norm
        } else {
            (k * x).cos() * (k * y).cos()
        };
        (-tau * k * k).exp() * ratio
    };
    let spec = QuadSpec::relative(1e-13);
    let cont = integrate_finite(integrand, 0.0, k_max, &spec)?;
    let bound_state = if b < 0.0 {
        2.0 * b.abs() * (tau * b * b - b.abs() * (x + y)).exp()
    } else {
        0.0
    };
    // |f_x f_y| / (k^2 + b^2) <= (k + |b|)^2 / (k^2 + b^2) <= 2
    let tail = 2.0 * (2.0 / PI) * (-tau * k_max * k_max).exp() / (2.0 * tau * k_max);
    let damp = (-m * m * tau).exp();
    Ok(Integral {
        value: damp * (2.0 / PI * cont.value + bound_state),
        err_estimate: damp * (2.0 / PI * cont.err_estimate + tail),
    })
}

/// Kernel for the semitransparent plane. Real whenever `Im omega = 0` or
/// both points lie on the same side.
pub fn semitransparent_kernel(q: &HeatQuery, bc: &SemitransparentBC, m: f64) -> Result<Complex64> {
    let (a, terms) = bc.kernel_terms(q.x1, q.y1);
    let s = q.x1.abs() + q.y1.abs();
    let mut k = Complex64::new(gaussian(q.tau, q.x1 - q.y1), 0.0) + a * gaussian(q.tau, s);
    for (c, rate) in terms {
        if c != Complex64::new(0.0, 0.0) {
            k += c * gauss_damped_integral(rate, s, q.tau);
        }
    }
    Ok(k * ((-m * m * q.tau).exp() / (4.0 * PI * q.tau).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hq(tau: f64, x: f64, y: f64) -> HeatQuery {
        HeatQuery::new(tau, x, y).unwrap()
    }

    #[test]
    fn neumann_and_dirichlet_values() {
        let q = hq(1.0, 1.0, 1.0);
        let n = robin_half_line_kernel(&q, 0.0, 0.0).unwrap();
        assert!((n - 0.385_871_666_129_026_8).abs() < 1e-14);
        let d = dirichlet_half_line_kernel(&q, 0.0).unwrap();
        assert!((d - 0.178_317_917_418_729_47).abs() < 1e-14);
    }

    #[test]
    fn robin_large_b_approaches_dirichlet() {
        let q = hq(0.8, 0.6, 1.1);
        let d = dirichlet_half_line_kernel(&q, 0.3).unwrap();
        let r = robin_half_line_kernel(&q, 1e7, 0.3).unwrap();
        assert!((r - d).abs() < 1e-6);
    }

    #[test]
    fn closed_form_matches_quadrature_form() {
        for &(tau, x, y, b) in &[
            (1.0, 1.0, 1.0, -1.0),
            (0.5, 0.3, 0.7, 5.0),
            (2.0, 0.1, 3.0, 0.4),
            (0.05, 0.2, 0.25, -3.0),
        ] {
            let q = hq(tau, x, y);
            let a = robin_half_line_kernel(&q, b, 0.7).unwrap();
            let w = robin_half_line_kernel_quadrature(&q, b, 0.7).unwrap();
            assert!(
                (a - w).abs() < 1e-12 * a.abs().max(1e-3),
                "{tau} {x} {y} {b}: {a} vs {w}"
            );
        }
    }

    #[test]
    fn spectral_examples() {
        let q = hq(1.0, 1.0, 1.0);
        let s = spectral_oracle_robin(&q, -1.0, 0.0).unwrap();
        assert!(
            (s.value - 0.753_751_107_300_469_1).abs() < 1e-9,
            "{}",
            s.value
        );
        let q = hq(0.5, 0.3, 0.7);
        let s = spectral_oracle_robin(&q, 5.0, 0.0).unwrap();
        assert!(
            (s.value - 0.217_334_462_293_078_74).abs() < 1e-9,
            "{}",
            s.value
        );
    }

    #[test]
    fn reflecting_dispatch() {
        let bc = ReflectingBC::new(RobinParam::Finite(2.0), RobinParam::NEUMANN).unwrap();
        assert_eq!(
            reflecting_kernel(&hq(1.0, 1.0, -1.0), &bc, 0.0).unwrap(),
            0.0
        );
        let neg = reflecting_kernel(&hq(1.0, -1.0, -1.0), &bc, 0.0).unwrap();
        let pos = robin_half_line_kernel(&hq(1.0, 1.0, 1.0), 0.0, 0.0).unwrap();
        assert_eq!(neg, pos);
    }

    #[test]
    fn free_wall_gives_free_kernel() {
        let bc = SemitransparentBC::free();
        for &(x, y) in &[(0.3, 1.2), (-0.5, 0.9), (-1.0, -0.2)] {
            let k = semitransparent_kernel(&hq(0.7, x, y), &bc, 0.4).unwrap();
            let free = (-0.16 * 0.7 - (x - y) * (x - y) / 2.8).exp() / (4.0 * PI * 0.7f64).sqrt();
            assert!((k.re - free).abs() < 1e-15 && k.im == 0.0);
        }
    }

    #[test]
    fn pure_delta_prime_coefficients() {
        let bc = SemitransparentBC::pure_delta_prime(1.0);
        let (lp, lm) = bc.lambdas().unwrap();
        assert_eq!((lp, lm), (2.0, 0.0));
        for x in [0.4, -0.4] {
            let (mp, mm) = bc.m_coeffs(x, x).unwrap();
            assert!((mp.re - 2.0).abs() < 1e-15 && mm.re.abs() < 1e-15);
        }
    }

    #[test]
    fn validation() {
        assert!(SemitransparentBC::new(Complex64::new(1.0, 0.1), 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(SemitransparentBC::new(Complex64::new(1.0, 0.0), 2.0, 0.0, 0.0, 1.0).is_err());
        assert!(SemitransparentBC::new(Complex64::new(0.0, 1.0), 2.0, 1.0, 1.0, 1.0).is_ok());
        assert!(HeatQuery::new(0.0, 1.0, 1.0).is_err());
        assert!(HeatQuery::new(1.0, 0.0, 1.0).is_err());
        assert!(ReflectingBC::new(RobinParam::Finite(f64::NAN), RobinParam::Dirichlet).is_err());
    }

    #[test]
    fn positivity_rules() {
        assert!(RobinParam::Finite(-0.5).is_positive(1.0));
        assert!(!RobinParam::Finite(-1.0).is_positive(1.0));
        assert!(RobinParam::Finite(0.0).is_positive(0.0));
        assert!(!RobinParam::Finite(-1e-9).is_positive(0.0));
        assert!(SemitransparentBC::pure_delta_prime(1.0).is_positive(0.0));
        assert!(SemitransparentBC::pure_delta(-1.0).is_positive(1.0));
        assert!(!SemitransparentBC::pure_delta(-2.0).is_positive(1.0));
    }
}
