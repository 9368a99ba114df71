//! Special functions against frozen high-precision references (computed
//! once with 40-digit arithmetic) plus recurrence and shape properties.

use proptest::prelude::*;
use vacpol::specialfns::*;

include!("data/specialfns_reference.rs");

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn frak_k_reference_grid() {
    for &(nu, w, want) in FRAK_K_GRID {
        let got = frak_k(nu, w).unwrap();
        let tol = if (0.0..=10.0).contains(&nu) {
            1e-12
        } else {
            1e-11
        };
        assert!(
            rel(got, want) < tol,
            "nu={nu} w={w}: {got} vs {want} ({:e})",
            rel(got, want)
        );
    }
}

#[test]
fn incomplete_gamma_reference_grid() {
    for &(a, z, want) in INC_GAMMA_GRID {
        let got = upper_inc_gamma(a, z).unwrap();
        let tol = if a <= -10.0 { 1e-8 } else { 1e-10 };
        assert!(
            rel(got, want) < tol,
            "a={a} z={z}: {got} vs {want} ({:e})",
            rel(got, want)
        );
    }
}

#[test]
fn erfcx_reference_grid() {
    for &(z, want) in ERFCX_GRID {
        let got = erfcx(z);
        assert!(rel(got, want) < 1e-13, "z={z}: {got} vs {want}");
    }
}

#[test]
fn bessel_k_recurrence() {
    for &nu in &[0.2, 1.0, 1.7, 3.5, 6.0, 9.25] {
        for &w in &[0.01, 0.3, 1.0, 2.0, 5.0, 20.0, 45.0] {
            let lhs = bessel_k(nu + 1.0, w).unwrap();
            let rhs = bessel_k(nu - 1.0, w).unwrap() + 2.0 * nu / w * bessel_k(nu, w).unwrap();
            assert!(rel(lhs, rhs) < 1e-10, "nu={nu} w={w}");
        }
    }
}

#[test]
fn incomplete_gamma_recurrence() {
    for a in [-3.0, -2.5, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0] {
        for z in [0.1, 1.0, 10.0] {
            let lhs = upper_inc_gamma(a + 1.0, z).unwrap();
            let rhs = a * upper_inc_gamma(a, z).unwrap() + f64::powf(z, a) * (-z).exp();
            assert!(rel(lhs, rhs) < 1e-10, "a={a} z={z}");
        }
    }
}

#[test]
fn half_order_is_elementary() {
    let c = (std::f64::consts::PI / 2.0).sqrt();
    let mut w: f64 = 0.01;
    while w <= 50.0 {
        assert!((frak_k(0.5, w).unwrap() * w.exp() - c).abs() < 1e-12);
        w *= 1.1;
    }
}

#[test]
fn small_argument_order_zero() {
    // K_0(w) = -log(w/2) - gamma_EM + O(w^2 log w)
    let w: f64 = 1e-3;
    let lead = -(w / 2.0).ln() - EULER_GAMMA;
    assert!((frak_k(0.0, w).unwrap() - lead).abs() < 1e-5);
    assert!((frak_k(0.0, w).unwrap() - 7.023_688_800_562_381).abs() < 1e-12);
}

#[test]
fn exponential_integral_value() {
    assert!(rel(upper_inc_gamma(0.0, 1.0).unwrap(), 0.219_383_934_395_520_27) < 1e-14);
    assert!(
        rel(
            upper_inc_gamma(-1.0, 1.0).unwrap(),
            0.148_495_506_775_922_05
        ) < 1e-13
    );
    assert!(rel(EULER_GAMMA.exp(), 1.781_072_417_990_198) < 1e-15);
}

proptest! {
    #[test]
    fn erf_is_odd_and_bounded(z in -30.0f64..30.0) {
        prop_assert_eq!(erf(-z), -erf(z));
        prop_assert!(erf(z).abs() <= 1.0);
        prop_assert!((erf(z) + erfc(z) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn erf_is_monotone(z in -6.0f64..6.0, dz in 1e-3f64..1.0) {
        prop_assert!(erf(z + dz) >= erf(z));
    }

    #[test]
    fn frak_k_positive_and_decreasing(nu in 0.0f64..10.0, w in 1e-4f64..40.0, dw in 1e-3f64..2.0) {
        let a = frak_k(nu, w).unwrap();
        let b = frak_k(nu, w + dw).unwrap();
        prop_assert!(a > 0.0 && b > 0.0);
        prop_assert!(b < a);
    }

    #[test]
    fn scaled_variant_consistent(nu in -1.0f64..10.0, w in 1e-3f64..60.0) {
        let s = frak_k_scaled(nu, w).unwrap();
        let k = frak_k(nu, w).unwrap();
        prop_assert!(((s * (-w).exp()) - k).abs() <= 1e-13 * k.abs());
    }
}
