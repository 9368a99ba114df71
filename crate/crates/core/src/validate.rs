//! Run-time invariant suites.
//!
//! Every check measures one deviation and compares it with a pinned
//! tolerance, scaled by a user multiplier. Checks are evaluated in parallel
//! and reported in a fixed order.

use crate::error::{Result, VacpolError};
use crate::field::{residue_at_zero, FieldConfig};
use crate::heatkernel::{
    reflecting_kernel, robin_half_line_kernel, semitransparent_kernel, spectral_oracle_robin,
    HeatQuery, ReflectingBC, RobinParam, SemitransparentBC,
};
use crate::quadrature::{integrate_semi_infinite_scaled, QuadSpec};
use crate::specialfns::{bessel_k, erf, frak_k_scaled, upper_inc_gamma};
use crate::{reflecting, semitransparent, wall};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Specialfns,
    Heatkernel,
    Reflecting,
    Semitransparent,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::All,
        Suite::Specialfns,
        Suite::Heatkernel,
        Suite::Reflecting,
        Suite::Semitransparent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Specialfns => "specialfns",
            Suite::Heatkernel => "heatkernel",
            Suite::Reflecting => "reflecting",
            Suite::Semitransparent => "semitransparent",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VacpolError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| VacpolError::param(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    /// `None` when the check could not be evaluated.
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tol_multiplier: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Measure = fn() -> Result<f64>;

struct Spec {
    suite: Suite,
    name: &'static str,
    tolerance: f64,
    measure: Measure,
}

const fn spec(suite: Suite, name: &'static str, tolerance: f64, measure: Measure) -> Spec {
    Spec {
        suite,
        name,
        tolerance,
        measure,
    }
}

/// Runs the selected suite. `tol_multiplier` scales every tolerance.
pub fn run(suite: Suite, tol_multiplier: f64) -> Result<Report> {
    if !(tol_multiplier > 0.0) || !tol_multiplier.is_finite() {
        return Err(VacpolError::param(format!(
            "tolerance multiplier must be positive and finite, got {tol_multiplier}"
        )));
    }
    let selected: Vec<&Spec> = CHECKS.iter().filter(|s| suite.includes(s.suite)).collect();
    let checks = selected
        .par_iter()
        .map(|s| {
            let tolerance = s.tolerance * tol_multiplier;
            let (deviation, note) = match (s.measure)() {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            Check {
                suite: s.suite,
                name: s.name,
                deviation,
                tolerance,
                passed: deviation.is_some_and(|v| v <= tolerance),
                note,
            }
        })
        .collect();
    Ok(Report {
        tol_multiplier,
        checks,
    })
}

/// Names of the checks a suite runs, in report order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    CHECKS
        .iter()
        .filter(|s| suite.includes(s.suite))
        .map(|s| s.name)
        .collect()
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

fn hq(tau: f64, x: f64, y: f64) -> Result<HeatQuery> {
    HeatQuery::new(tau, x, y)
}

fn massive(d: u32, m: f64) -> FieldConfig {
    FieldConfig::massive(d, m).expect("fixed valid configuration")
}

fn massless(d: u32) -> FieldConfig {
    FieldConfig::new(d, 0.0, 1.0).expect("fixed valid configuration")
}

fn robin(b: f64) -> ReflectingBC {
    ReflectingBC::symmetric(RobinParam::Finite(b))
}

fn mixed_wall() -> SemitransparentBC {
    SemitransparentBC::new(Complex64::new(0.0, 1.0), 2.0, 0.5, 1.0, 0.75).expect("valid wall")
}

fn asymmetric_delta() -> SemitransparentBC {
    SemitransparentBC::new(Complex64::new(0.6, 0.8), 2.0, 0.0, 0.7, 0.5).expect("valid wall")
}

fn walls() -> Vec<SemitransparentBC> {
    vec![
        SemitransparentBC::pure_delta(1.5),
        SemitransparentBC::pure_delta(-0.4),
        asymmetric_delta(),
        SemitransparentBC::pure_delta_prime(1.0),
        mixed_wall(),
    ]
}

/// Value and derivative at 0 from the quadratic through `f(h), f(2h), f(3h)`.
fn one_sided(f: impl Fn(f64) -> Result<Complex64>, h: f64) -> Result<(Complex64, Complex64)> {
    let (f1, f2, f3) = (f(h)?, f(2.0 * h)?, f(3.0 * h)?);
    Ok((
        f1 * 3.0 - f2 * 3.0 + f3,
        (f2 * 8.0 - f1 * 5.0 - f3 * 3.0) / (2.0 * h),
    ))
}

static CHECKS: &[Spec] = &[
    spec(Suite::Specialfns, "frak_k_half_order_exact", 1e-12, || {
        let want = (PI / 2.0).sqrt();
        max_of(log_grid(0.01, 50.0, 60).map(|w| Ok(rel(frak_k_scaled(0.5, w)?, want))))
    }),
    spec(Suite::Specialfns, "bessel_k_recurrence", 1e-10, || {
        let mut out = Vec::new();
        for nu in [0.3, 1.0, 2.7, 6.5] {
            for w in [0.05, 0.8, 3.0, 20.0] {
                let lhs = bessel_k(nu + 1.0, w);
                let rhs =
                    bessel_k(nu - 1.0, w).and_then(|a| Ok(a + 2.0 * nu / w * bessel_k(nu, w)?));
                out.push(lhs.and_then(|l| Ok(rel(l, rhs?))));
            }
        }
        max_of(out)
    }),
    spec(
        Suite::Specialfns,
        "incomplete_gamma_recurrence",
        1e-10,
        || {
            let mut out = Vec::new();
            for a in [-2.5, -1.0, -0.5, 0.0, 0.5, 1.7, 4.0] {
                for z in [0.01, 0.5, 2.0, 10.0, 40.0] {
                    let lhs = upper_inc_gamma(a + 1.0, z);
                    let rhs = upper_inc_gamma(a, z).map(|g| a * g + z.powf(a) * (-z).exp());
                    out.push(lhs.and_then(|l| Ok(rel(l, rhs?))));
                }
            }
            max_of(out)
        },
    ),
    spec(Suite::Specialfns, "erf_odd", 1e-15, || {
        Ok(log_grid(1e-6, 6.0, 50)
            .map(|x| (erf(x) + erf(-x)).abs())
            .fold(0.0, f64::max))
    }),
    spec(Suite::Specialfns, "erf_reference_value", 1e-12, || {
        Ok((erf(1.0) - 0.842_700_792_949_714_9).abs())
    }),
    spec(Suite::Heatkernel, "spectral_vs_closed_form", 1e-7, || {
        let pts = [
            (1.0, 1.0, 1.0, -1.0),
            (0.5, 0.3, 0.7, 5.0),
            (0.2, 0.1, 0.4, 0.0),
            (2.0, 0.5, 1.5, -0.3),
            (0.05, 0.2, 0.25, 2.0),
            (1.5, 2.0, 0.1, 0.8),
            (0.8, 0.6, 0.6, -2.0),
            (3.0, 1.0, 3.0, 10.0),
            (0.4, 0.9, 0.2, 0.5),
            (1.2, 0.05, 0.05, -0.6),
        ];
        let mut out = Vec::new();
        for (tau, x, y, b) in pts {
            for m in [0.0, 0.7] {
                out.push((|| {
                    let q = hq(tau, x, y)?;
                    Ok(
                        (robin_half_line_kernel(&q, b, m)?
                            - spectral_oracle_robin(&q, b, m)?.value)
                            .abs(),
                    )
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Heatkernel, "semigroup", 1e-6, || {
        let spec = QuadSpec::new(1e-13, 1e-11, 4000)?;
        let bc = ReflectingBC::new(RobinParam::Finite(-0.6), RobinParam::Finite(2.0))?;
        let mut out = Vec::new();
        for (t1, t2, x, y) in [(0.5, 0.5, 0.4f64, 1.1), (0.3, 0.7, -0.3, -0.9)] {
            out.push((|| {
                let sign = x.signum();
                let f = |z: f64| {
                    let z = sign * z;
                    Ok::<_, VacpolError>(
                        reflecting_kernel(&hq(t1, x, z)?, &bc, 0.5)?
                            * reflecting_kernel(&hq(t2, z, y)?, &bc, 0.5)?,
                    )
                };
                let lhs =
                    integrate_semi_infinite_scaled(|z| f(z).unwrap_or(f64::NAN), 1.0, &spec)?.value;
                Ok((lhs - reflecting_kernel(&hq(t1 + t2, x, y)?, &bc, 0.5)?).abs())
            })());
        }
        for bc in walls() {
            let (t1, t2, x, y) = (0.4, 0.6, -0.3, 0.9);
            out.push((|| {
                let part = |sign: f64, im: bool| -> Result<f64> {
                    let f = |z: f64| -> Result<f64> {
                        let z = sign * z;
                        let v = semitransparent_kernel(&hq(t1, x, z)?, &bc, 0.3)?
                            * semitransparent_kernel(&hq(t2, z, y)?, &bc, 0.3)?;
                        Ok(if im { v.im } else { v.re })
                    };
                    Ok(
                        integrate_semi_infinite_scaled(|z| f(z).unwrap_or(f64::NAN), 1.0, &spec)?
                            .value,
                    )
                };
                let lhs = Complex64::new(
                    part(1.0, false)? + part(-1.0, false)?,
                    part(1.0, true)? + part(-1.0, true)?,
                );
                Ok((lhs - semitransparent_kernel(&hq(t1 + t2, x, y)?, &bc, 0.3)?).norm())
            })());
        }
        max_of(out)
    }),
    spec(Suite::Heatkernel, "robin_boundary_residual", 1e-6, || {
        let mut out = Vec::new();
        for b in [-1.2, -0.3, 0.0, 0.8, 4.0] {
            for (tau, y) in [(0.5, 0.7), (1.3, 0.2)] {
                out.push((|| {
                    let k = |x: f64| {
                        Ok(Complex64::new(
                            robin_half_line_kernel(&hq(tau, x, y)?, b, 0.4)?,
                            0.0,
                        ))
                    };
                    let (k0, dk0) = one_sided(k, 1e-4)?;
                    Ok((b * k0.re - dk0.re).abs())
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Heatkernel, "neumann_conservation", 1e-8, || {
        let spec = QuadSpec::relative(1e-12);
        max_of([(0.3f64, 0.2), (1.0, 1.0), (4.0, 0.5)].map(|(tau, x)| {
            let total = integrate_semi_infinite_scaled(
                |y| {
                    robin_half_line_kernel(&hq(tau, x, y).expect("valid query"), 0.0, 0.0)
                        .unwrap_or(f64::NAN)
                },
                tau.sqrt(),
                &spec,
            )?;
            Ok((total.value - 1.0).abs())
        }))
    }),
    spec(Suite::Heatkernel, "transfer_relation", 1e-5, || {
        let mut out = Vec::new();
        for bc in walls() {
            for y in [0.6, -0.8] {
                out.push((|| {
                    let k = |x: f64| semitransparent_kernel(&hq(0.45, x, y)?, &bc, 0.2);
                    let (p0, dp0) = one_sided(k, 1e-4)?;
                    let (n0, dn) = one_sided(|s| k(-s), 1e-4)?;
                    let dn0 = -dn;
                    let r1 = p0 - bc.omega * (n0 * bc.alpha + dn0 * bc.beta);
                    let r2 = dp0 - bc.omega * (n0 * bc.gamma_coupling + dn0 * bc.sigma_param);
                    Ok(r1.norm().max(r2.norm()) / p0.norm().max(1.0))
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Heatkernel, "hermiticity", 1e-14, || {
        let mut out = Vec::new();
        for bc in walls() {
            for (x, y) in [(0.3, -0.9), (-1.2, 0.4), (0.5, 0.8)] {
                out.push((|| {
                    let a = semitransparent_kernel(&hq(0.6, x, y)?, &bc, 0.5)?;
                    let b = semitransparent_kernel(&hq(0.6, y, x)?, &bc, 0.5)?;
                    Ok((a - b.conj()).norm())
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Reflecting, "oracle_grid", 1e-8, || {
        let mut pts = Vec::new();
        for d in 1..=4 {
            for m in [0.5, 1.0, 2.0] {
                for b in [-0.4 * m, 0.0, 1.0, 10.0] {
                    for x in [0.1, 0.5, 1.0, 3.0] {
                        pts.push((d, m, b, x));
                    }
                }
            }
        }
        let devs: Vec<Result<f64>> = pts
            .par_iter()
            .map(|&(d, m, b, x)| {
                let c = massive(d, m);
                Ok(rel(
                    reflecting::plane_term(&c, &robin(b), x)?,
                    reflecting::plane_term_oracle(&c, &robin(b), x)?,
                ))
            })
            .collect();
        max_of(devs)
    }),
    spec(Suite::Reflecting, "laurent_consistency", 1e-6, || {
        let mut out = Vec::new();
        for d in [1, 2, 3] {
            for bc in [robin(0.0), robin(0.5), ReflectingBC::dirichlet()] {
                out.push((|| {
                    let c = massive(d, 1.0);
                    let v = reflecting::renormalize_at_zero(&c, &bc, 0.9)?;
                    let fit = v.laurent.expect("fit attached");
                    Ok((fit.c0 - v.total)
                        .abs()
                        .max((fit.c_minus1 - residue_at_zero(&c)).abs()))
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Reflecting, "small_x_ratio", 1e-2, || {
        let mut out = Vec::new();
        for d in [2, 3, 4] {
            for b in [0.0, 0.25, -0.4] {
                out.push((|| {
                    let c = massive(d, 1.0);
                    Ok(rel(
                        reflecting::plane_term(&c, &robin(b), 1e-3)?,
                        reflecting::small_x_asymptotic(&c, &robin(b), 1e-3)?,
                    ))
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Reflecting, "large_x_ratio", 1e-2, || {
        let mut out = Vec::new();
        for d in [1, 2, 3] {
            for bc in [ReflectingBC::neumann(), ReflectingBC::dirichlet()] {
                out.push((|| {
                    let c = massive(d, 1.0);
                    Ok(rel(
                        reflecting::plane_term(&c, &bc, 20.0)?,
                        reflecting::large_x_asymptotic(&c, &bc, 20.0)?,
                    ))
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Reflecting, "decay_rate", 1e-2, || {
        let mut out = Vec::new();
        for d in [1, 2, 3] {
            for m in [1.0, 2.0] {
                out.push((|| {
                    let c = massive(d, m);
                    let g = |x: f64| -> Result<f64> {
                        Ok((reflecting::plane_term(&c, &robin(0.3), x)?.abs()
                            * x.powf(d as f64 / 2.0))
                        .ln())
                    };
                    let rate = -(g(10.0)? - g(5.0)?) / 5.0;
                    Ok(rel(rate, 2.0 * m))
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Reflecting, "massless_limit", 1e-3, || {
        let mut out = Vec::new();
        for d in [2, 3, 4] {
            for bc in [robin(1.0), robin(0.0), ReflectingBC::dirichlet()] {
                out.push((|| {
                    let m0 = reflecting::massless_value(&massless(d), &bc, 1.0)?.total;
                    let v = reflecting::evaluate(&FieldConfig::new(d, 1e-4, 1.0)?, &bc, 1.0)?.total;
                    Ok((v - m0).abs())
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Semitransparent, "oracle_grid", 1e-8, || {
        let mut pts = Vec::new();
        for d in 1..=3 {
            for m in [0.5, 1.0] {
                for bc in [
                    SemitransparentBC::pure_delta(-m),
                    SemitransparentBC::pure_delta(1.0),
                    SemitransparentBC::pure_delta(5.0),
                    SemitransparentBC::pure_delta_prime(1.0),
                    asymmetric_delta(),
                    mixed_wall(),
                ] {
                    for x in [0.2, 1.0, 3.0, -1.0] {
                        pts.push((d, m, bc, x));
                    }
                }
            }
        }
        let devs: Vec<Result<f64>> = pts
            .par_iter()
            .map(|(d, m, bc, x)| {
                let c = massive(*d, *m);
                Ok(rel(
                    semitransparent::plane_term(&c, bc, *x)?,
                    semitransparent::plane_term_oracle(&c, bc, *x)?,
                ))
            })
            .collect();
        max_of(devs)
    }),
    spec(Suite::Semitransparent, "phase_independence", 0.0, || {
        let c = massive(3, 0.8);
        let mut worst = 0.0f64;
        for w in [Complex64::new(1.0, 0.0), Complex64::new(-0.6, 0.8)] {
            let bc = SemitransparentBC::new(w, 2.0, 0.5, 1.0, 0.75)?;
            for x in [0.4, -1.1] {
                let a = semitransparent::plane_term(&c, &bc, x)?;
                let b = semitransparent::plane_term(&c, &mixed_wall(), x)?;
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }),
    spec(
        Suite::Semitransparent,
        "zero_momentum_reflection",
        1e-12,
        || {
            let bc = mixed_wall();
            let (lp, lm) = bc.lambdas().expect("beta != 0");
            max_of([0.5, -0.5].map(|x| {
                let c = semitransparent::diagonal_coefficients(&bc, x)?;
                Ok((1.0 - c.m_plus / lp + c.m_minus / lm + 1.0).abs())
            }))
        },
    ),
    spec(
        Suite::Semitransparent,
        "large_x_ratio_is_image_sum",
        1e-12,
        || {
            let c = massive(3, 0.9);
            let env = crate::wall::large_x_envelope(&c, 1.3);
            let mut worst = 0.0f64;
            for bc in walls().into_iter().filter(|b| b.is_positive(0.9)) {
                for x in [1.3, -1.3] {
                    let closed = semitransparent::large_x_asymptotic(&c, &bc, x)? / env;
                    worst = worst.max((closed - wall::large_x_ratio(&bc.profile(x), 0.9)).abs());
                }
            }
            Ok(worst)
        },
    ),
    spec(Suite::Semitransparent, "delta_softening", 0.1, || {
        // ratio of |x|^{d-1} plane at 1e-4 to that at 1e-2; at most 1/10
        max_of([2u32, 3].map(|d| {
            let c = massive(d, 1.0);
            let bc = SemitransparentBC::pure_delta(1.0);
            let s = |x: f64| -> Result<f64> {
                Ok(x.powi(d as i32 - 1) * semitransparent::plane_term(&c, &bc, x)?)
            };
            Ok((s(1e-4)? / s(1e-2)?).abs())
        }))
    }),
    spec(Suite::Semitransparent, "asymmetric_control", 5e-2, || {
        max_of([2u32, 3].map(|d| {
            let c = massive(d, 1.0);
            let bc = asymmetric_delta();
            Ok(rel(
                semitransparent::plane_term(&c, &bc, 1e-4)?,
                semitransparent::small_x_asymptotic(&c, &bc, 1e-4)?,
            ))
        }))
    }),
    spec(Suite::Semitransparent, "small_x_ratio", 1e-2, || {
        let mut out = Vec::new();
        for d in [2, 3, 4] {
            for bc in [SemitransparentBC::pure_delta_prime(1.0), mixed_wall()] {
                out.push((|| {
                    let c = massive(d, 100.0);
                    Ok(rel(
                        semitransparent::plane_term(&c, &bc, 1e-5)?,
                        semitransparent::small_x_asymptotic(&c, &bc, 1e-5)?,
                    ))
                })());
            }
        }
        max_of(out)
    }),
    spec(Suite::Semitransparent, "massless_limit", 1e-3, || {
        let mut out = Vec::new();
        for d in [2, 3] {
            for bc in [
                SemitransparentBC::pure_delta(1.0),
                SemitransparentBC::pure_delta_prime(1.0),
                mixed_wall(),
                asymmetric_delta(),
            ] {
                out.push((|| {
                    let m0 = semitransparent::massless_value(&massless(d), &bc, 0.8)?.total;
                    let v = semitransparent::evaluate(&FieldConfig::new(d, 1e-4, 1.0)?, &bc, 0.8)?
                        .total;
                    Ok((v - m0).abs())
                })());
            }
        }
        max_of(out)
    }),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_has_checks() {
        for s in Suite::ALL {
            assert!(!check_names(s).is_empty(), "{s}");
        }
        assert_eq!(check_names(Suite::All).len(), CHECKS.len());
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Specialfns, Suite::Heatkernel] {
            let r = run(s, 1.0).unwrap();
            let first = r.failures().next().cloned();
            if let Some(c) = first {
                panic!(
                    "{} {}: {:?} > {} {:?}",
                    c.suite, c.name, c.deviation, c.tolerance, c.note
                );
            }
        }
    }

    #[test]
    fn multiplier_must_be_positive() {
        assert!(run(Suite::Specialfns, 0.0).is_err());
        assert!(run(Suite::Specialfns, f64::NAN).is_err());
    }
}
