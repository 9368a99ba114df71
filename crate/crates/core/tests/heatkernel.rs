use num_complex::Complex64;
use proptest::prelude::*;
use vacpol::heatkernel::*;
use vacpol::quadrature::{integrate_finite, integrate_semi_infinite_scaled, QuadSpec};

fn hq(tau: f64, x: f64, y: f64) -> HeatQuery {
    HeatQuery::new(tau, x, y).unwrap()
}

fn walls() -> Vec<SemitransparentBC> {
    vec![
        SemitransparentBC::pure_delta(1.5),
        SemitransparentBC::pure_delta(-0.4),
        SemitransparentBC::new(Complex64::new(0.6, 0.8), 2.0, 0.0, 0.7, 0.5).unwrap(),
        SemitransparentBC::pure_delta_prime(1.0),
        SemitransparentBC::new(Complex64::new(0.0, 1.0), 2.0, 0.5, 1.0, 0.75).unwrap(),
        SemitransparentBC::new(Complex64::new(-0.8, 0.6), 1.0, -0.4, 0.5, 0.8).unwrap(),
    ]
}

#[test]
fn spectral_expansion_matches_closed_form() {
    let points = [
        (1.0, 1.0, 1.0, -1.0),
        (0.5, 0.3, 0.7, 5.0),
        (0.2, 0.1, 0.4, 0.0),
        (2.0, 0.5, 1.5, -0.3),
        (0.05, 0.2, 0.25, 2.0),
        (1.5, 2.0, 0.1, 0.8),
        (0.8, 0.6, 0.6, -2.0),
        (3.0, 1.0, 3.0, 10.0),
    ];
    for &(tau, x, y, b) in &points {
        for m in [0.0, 0.7] {
            let q = hq(tau, x, y);
            let k = robin_half_line_kernel(&q, b, m).unwrap();
            let s = spectral_oracle_robin(&q, b, m).unwrap();
            assert!(
                (k - s.value).abs() < 1e-7,
                "{tau} {x} {y} {b}: {k} vs {}",
                s.value
            );
            assert!(s.err_estimate < 1e-7);
        }
    }
}

#[test]
fn spectral_neumann_is_the_cosine_transform() {
    let q = hq(0.7, 0.4, 1.3);
    let s = spectral_oracle_robin(&q, 0.0, 0.0).unwrap().value;
    let image = ((-(0.9f64).powi(2) / 2.8).exp() + (-(1.7f64).powi(2) / 2.8).exp())
        / (4.0 * std::f64::consts::PI * 0.7).sqrt();
    assert!((s - image).abs() < 1e-10);
}

fn reflecting_semigroup(bc: &ReflectingBC, m: f64, t1: f64, t2: f64, x: f64, y: f64) -> f64 {
    let spec = QuadSpec::relative(1e-11);
    let f = |z: f64| {
        reflecting_kernel(&hq(t1, x, z), bc, m).unwrap()
            * reflecting_kernel(&hq(t2, z, y), bc, m).unwrap()
    };
    // points on the other side contribute nothing
    if x > 0.0 {
        integrate_semi_infinite_scaled(f, 1.0, &spec).unwrap().value
    } else {
        integrate_semi_infinite_scaled(|z| f(-z), 1.0, &spec)
            .unwrap()
            .value
    }
}

#[test]
fn semigroup_reflecting() {
    let bc = ReflectingBC::new(RobinParam::Finite(-0.6), RobinParam::Finite(2.0)).unwrap();
    for (t1, t2) in [(0.5, 0.5), (0.3, 0.7)] {
        for (x, y) in [(0.4, 1.1), (-0.3, -0.9)] {
            let lhs = reflecting_semigroup(&bc, 0.5, t1, t2, x, y);
            let rhs = reflecting_kernel(&hq(t1 + t2, x, y), &bc, 0.5).unwrap();
            assert!(
                (lhs - rhs).abs() < 1e-6,
                "{t1} {t2} {x} {y}: {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn semigroup_semitransparent() {
    for bc in walls() {
        for (t1, t2) in [(0.5, 0.5), (0.3, 0.7)] {
            for (x, y) in [(0.4, 1.1), (-0.3, 0.9), (-0.5, -0.2)] {
                // the last wall is not positive and its kernel grows like e^{Lambda_-^2 tau}
                let rhs = semitransparent_kernel(&hq(t1 + t2, x, y), &bc, 0.3).unwrap();
                let scale = rhs.norm().max(1.0);
                let spec = QuadSpec::new(1e-13 * scale, 1e-11, 4000).unwrap();
                let part = |sign: f64, im: bool| {
                    integrate_semi_infinite_scaled(
                        |z: f64| {
                            let z = sign * z;
                            let v = semitransparent_kernel(&hq(t1, x, z), &bc, 0.3).unwrap()
                                * semitransparent_kernel(&hq(t2, z, y), &bc, 0.3).unwrap();
                            if im {
                                v.im
                            } else {
                                v.re
                            }
                        },
                        1.0,
                        &spec,
                    )
                    .unwrap()
                    .value
                };
                let lhs = Complex64::new(
                    part(1.0, false) + part(-1.0, false),
                    part(1.0, true) + part(-1.0, true),
                );
                assert!(
                    (lhs - rhs).norm() < 1e-6 * scale,
                    "{bc:?} {t1} {t2} {x} {y}: {lhs} vs {rhs}"
                );
            }
        }
    }
}

#[test]
fn heat_equation_residual() {
    let h = 1e-4;
    let m = 0.6;
    let check = |k: &dyn Fn(f64, f64) -> f64, tau: f64, x: f64| {
        let dt = (k(tau + h, x) - k(tau - h, x)) / (2.0 * h);
        let dxx = (k(tau, x + h) - 2.0 * k(tau, x) + k(tau, x - h)) / (h * h);
        let resid = dt - dxx + m * m * k(tau, x);
        assert!(
            resid.abs() <= 1e-4 * k(tau, x).abs().max(1e-2),
            "tau={tau} x={x}: {resid}"
        );
    };
    let y = 0.9;
    for b in [-0.5, 0.0, 1.7] {
        let bc = ReflectingBC::symmetric(RobinParam::Finite(b));
        let k = |tau: f64, x: f64| reflecting_kernel(&hq(tau, x, y), &bc, m).unwrap();
        for (tau, x) in [(0.4, 0.3), (1.0, 1.6), (0.2, 2.2)] {
            check(&k, tau, x);
        }
    }
    for bc in walls() {
        let k = |tau: f64, x: f64| semitransparent_kernel(&hq(tau, x, y), &bc, m).unwrap().re;
        for (tau, x) in [(0.4, 0.3), (1.0, -1.6), (0.2, -0.4)] {
            check(&k, tau, x);
        }
    }
}

/// Value and derivative at 0 from a quadratic through `f(h), f(2h), f(3h)`.
fn one_sided<T>(f: impl Fn(f64) -> T, h: f64) -> (T, T)
where
    T: Copy
        + std::ops::Mul<f64, Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>,
{
    let (f1, f2, f3) = (f(h), f(2.0 * h), f(3.0 * h));
    (
        f1 * 3.0 - f2 * 3.0 + f3,
        (f2 * 8.0 - f1 * 5.0 - f3 * 3.0) * (1.0 / (2.0 * h)),
    )
}

#[test]
fn robin_boundary_condition() {
    for b in [-1.2, -0.3, 0.0, 0.8, 4.0] {
        for (tau, y) in [(0.5, 0.7), (1.3, 0.2)] {
            let (k0, dk0) = one_sided(
                |x| robin_half_line_kernel(&hq(tau, x, y), b, 0.4).unwrap(),
                1e-4,
            );
            let resid = -dk0 + b * k0;
            assert!(resid.abs() < 1e-6, "b={b} tau={tau} y={y}: {resid}");
        }
    }
}

#[test]
fn neumann_conserves_probability() {
    let spec = QuadSpec::relative(1e-12);
    for (tau, x) in [(0.3f64, 0.2), (1.0, 1.0), (4.0, 0.5)] {
        let total = integrate_semi_infinite_scaled(
            |y| robin_half_line_kernel(&hq(tau, x, y), 0.0, 0.0).unwrap(),
            tau.sqrt(),
            &spec,
        )
        .unwrap()
        .value;
        assert!((total - 1.0).abs() < 1e-8, "{tau} {x}: {total}");
    }
}

#[test]
fn transfer_relation_at_the_wall() {
    let h = 1e-4;
    for bc in walls() {
        for y in [0.6, -0.8] {
            let tau = 0.45;
            let k = |x: f64| semitransparent_kernel(&hq(tau, x, y), &bc, 0.2).unwrap();
            let (p0, dp0) = one_sided(k, h);
            let (mv0, dm) = one_sided(|s| k(-s), h);
            let dm0 = dm * -1.0;
            let w = bc.omega;
            let r1 = p0 - w * (mv0 * bc.alpha + dm0 * bc.beta);
            let r2 = dp0 - w * (mv0 * bc.gamma_coupling + dm0 * bc.sigma_param);
            let scale = p0.norm().max(1.0);
            assert!(
                r1.norm() < 1e-5 * scale && r2.norm() < 1e-5 * scale,
                "{bc:?} y={y}: {r1} {r2}"
            );
        }
    }
}

#[test]
fn kernels_are_hermitian() {
    for bc in walls() {
        for (x, y) in [(0.3, -0.9), (-1.2, 0.4), (0.5, 0.8), (-0.2, -0.7)] {
            let a = semitransparent_kernel(&hq(0.6, x, y), &bc, 0.5).unwrap();
            let b = semitransparent_kernel(&hq(0.6, y, x), &bc, 0.5).unwrap();
            assert!((a - b.conj()).norm() < 1e-14);
            if x * y > 0.0 || bc.omega.im == 0.0 {
                assert_eq!(a.im, 0.0);
            }
        }
    }
}

#[test]
fn mass_enters_as_an_overall_factor() {
    let q = hq(0.9, 0.3, 1.4);
    for b in [-0.7, 0.0, 2.5] {
        let k0 = robin_half_line_kernel(&q, b, 0.0).unwrap();
        let km = robin_half_line_kernel(&q, b, 1.3).unwrap();
        assert!((km - (-1.69f64 * 0.9).exp() * k0).abs() < 1e-15 * k0.abs());
    }
    for bc in walls() {
        let q = hq(0.9, -0.3, 1.4);
        let k0 = semitransparent_kernel(&q, &bc, 0.0).unwrap();
        let km = semitransparent_kernel(&q, &bc, 1.3).unwrap();
        assert!((km - k0 * (-1.69f64 * 0.9).exp()).norm() < 1e-15 * k0.norm());
    }
}

#[test]
fn delta_kernel_agrees_with_direct_quadrature() {
    // pure delta: the transmitted and reflected parts share the damped integral
    let bc = SemitransparentBC::pure_delta(1.2);
    let q = hq(0.7, 0.4, -0.9);
    let spec = QuadSpec::relative(1e-13);
    let s = 1.3;
    let j = integrate_finite(
        |w: f64| (-0.6 * w - (w + s) * (w + s) / 2.8).exp(),
        0.0,
        40.0,
        &spec,
    )
    .unwrap()
    .value;
    let want = ((-(s * s) / 2.8).exp() - 0.6 * j) / (4.0 * std::f64::consts::PI * 0.7).sqrt();
    assert!((semitransparent_kernel(&q, &bc, 0.0).unwrap().re - want).abs() < 1e-13);
}

proptest! {
    #[test]
    fn reflecting_kernel_is_symmetric(tau in 0.05f64..5.0, x in 0.01f64..4.0, y in 0.01f64..4.0, b in -2.0f64..5.0, m in 0.0f64..2.0) {
        let bc = ReflectingBC::symmetric(RobinParam::Finite(b));
        let a = reflecting_kernel(&hq(tau, x, y), &bc, m).unwrap();
        let c = reflecting_kernel(&hq(tau, y, x), &bc, m).unwrap();
        prop_assert!((a - c).abs() <= 1e-13 * a.abs().max(1e-300));
        prop_assert_eq!(reflecting_kernel(&hq(tau, x, -y), &bc, m).unwrap(), 0.0);
    }

    #[test]
    fn reflecting_kernel_positive_for_neumann_like(tau in 0.05f64..5.0, x in 0.01f64..4.0, y in 0.01f64..4.0, b in 0.0f64..5.0) {
        let bc = ReflectingBC::symmetric(RobinParam::Finite(b));
        prop_assert!(reflecting_kernel(&hq(tau, x, y), &bc, 0.0).unwrap() > 0.0);
    }
}
