use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;
use vacpol_ffi::*;

fn last_error() -> String {
    let p = vacpol_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const NEUMANN: VacpolRobin = VacpolRobin {
    dirichlet: 0,
    b: 0.0,
};
const DIRICHLET: VacpolRobin = VacpolRobin {
    dirichlet: 1,
    b: 0.0,
};

struct Handles {
    field: *mut VacpolField,
    wall: *mut VacpolWall,
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            vacpol_field_free(self.field);
            vacpol_wall_free(self.wall);
        }
    }
}

fn reflecting(d: u32, m: f64, plus: VacpolRobin, minus: VacpolRobin) -> Handles {
    let mut h = Handles {
        field: ptr::null_mut(),
        wall: ptr::null_mut(),
    };
    unsafe {
        assert_eq!(vacpol_field_new(d, m, 1.0, &mut h.field), VACPOL_OK);
        assert_eq!(
            vacpol_wall_reflecting_new(plus, minus, &mut h.wall),
            VACPOL_OK
        );
    }
    h
}

#[test]
fn evaluate_matches_library() {
    let h = reflecting(3, 1.0, NEUMANN, DIRICHLET);
    let mut v = VacpolValue::default();
    unsafe {
        assert_eq!(vacpol_evaluate(h.field, h.wall, 0.7, &mut v), VACPOL_OK);
    }
    assert!(vacpol_last_error().is_null());
    let cfg = vacpol::FieldConfig::massive(3, 1.0).unwrap();
    let bc = vacpol::ReflectingBC::new(vacpol::RobinParam::NEUMANN, vacpol::RobinParam::Dirichlet)
        .unwrap();
    let lib = vacpol::reflecting::evaluate(&cfg, &bc, 0.7).unwrap();
    assert_eq!(v.plane_term, lib.plane_term);
    assert_eq!(v.total, lib.total);

    unsafe {
        assert_eq!(vacpol_evaluate(h.field, h.wall, -0.7, &mut v), VACPOL_OK);
    }
    assert!(v.plane_term < 0.0);

    let mut oracle = 0.0;
    unsafe {
        assert_eq!(
            vacpol_plane_term_oracle(h.field, h.wall, -0.7, &mut oracle),
            VACPOL_OK
        );
    }
    assert!((oracle / v.plane_term - 1.0).abs() < 1e-8);
}

#[test]
fn error_codes_and_messages() {
    let h = reflecting(1, 0.0, NEUMANN, NEUMANN);
    let mut v = VacpolValue::default();
    unsafe {
        assert_eq!(
            vacpol_evaluate(h.field, h.wall, 0.5, &mut v),
            VACPOL_ERR_INFRARED
        );
    }
    assert!(last_error().contains("infrared"));

    unsafe {
        assert_eq!(
            vacpol_evaluate(h.field, h.wall, 0.0, &mut v),
            VACPOL_ERR_INVALID
        );
        assert_eq!(
            vacpol_evaluate(ptr::null(), h.wall, 0.5, &mut v),
            VACPOL_ERR_NULL
        );
    }
    assert!(last_error().contains("field"));

    let mut wall = ptr::null_mut();
    let bad = VacpolRobin {
        dirichlet: 0,
        b: f64::NAN,
    };
    unsafe {
        assert_eq!(
            vacpol_wall_reflecting_new(bad, bad, &mut wall),
            VACPOL_ERR_INVALID
        );
        assert_eq!(
            vacpol_wall_semitransparent_new(1.0, 0.0, 2.0, 0.0, 0.0, 1.0, &mut wall),
            VACPOL_ERR_INVALID
        );
        assert_eq!(
            vacpol_wall_reflecting_new(NEUMANN, NEUMANN, ptr::null_mut()),
            VACPOL_ERR_NULL
        );
    }
    assert!(wall.is_null());

    let mut field = ptr::null_mut();
    unsafe {
        assert_eq!(
            vacpol_field_new(0, 1.0, 1.0, &mut field),
            VACPOL_ERR_INVALID
        );
    }
    assert!(field.is_null());
}

#[test]
fn positivity_violation_is_invalid() {
    let h = reflecting(
        3,
        1.0,
        VacpolRobin {
            dirichlet: 0,
            b: -2.0,
        },
        NEUMANN,
    );
    let mut v = VacpolValue::default();
    let mut s = VacpolSpectrum::default();
    unsafe {
        assert_eq!(
            vacpol_evaluate(h.field, h.wall, 0.5, &mut v),
            VACPOL_ERR_INVALID
        );
        assert_eq!(vacpol_spectrum(h.wall, 1.0, &mut s), VACPOL_OK);
    }
    assert_eq!(s.positive, 0);
    assert_eq!(s.n_eigenvalues, 1);
    assert_eq!(s.eigenvalues[0], -3.0);
}

#[test]
fn semitransparent_kernel_and_spectrum() {
    let mut wall = ptr::null_mut();
    unsafe {
        assert_eq!(
            vacpol_wall_semitransparent_new(0.0, 1.0, 1.0, 1.0, 0.0, 1.0, &mut wall),
            VACPOL_OK
        );
    }
    let mut s = VacpolSpectrum::default();
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(vacpol_spectrum(wall, 0.0, &mut s), VACPOL_OK);
        assert_eq!(
            vacpol_heat_kernel(wall, 1.0, 0.5, -1.0, 0.5, &mut re, &mut im),
            VACPOL_OK
        );
        assert_eq!(
            vacpol_heat_kernel(wall, 1.0, 0.0, -1.0, 0.5, &mut re, &mut im),
            VACPOL_ERR_INVALID
        );
        vacpol_wall_free(wall);
    }
    assert_eq!(s.has_lambdas, 1);
    assert_eq!((s.lambda_plus, s.lambda_minus), (2.0, 0.0));
    assert_eq!(s.positive, 1);
}

#[test]
fn batch_and_profile_entry_points() {
    let h = reflecting(2, 1.0, DIRICHLET, DIRICHLET);
    let xs = [0.2, 1.0, 3.0];
    let mut vals = [VacpolValue::default(); 3];
    let mut failed = usize::MAX;
    unsafe {
        assert_eq!(
            vacpol_evaluate_many(
                h.field,
                h.wall,
                xs.as_ptr(),
                3,
                vals.as_mut_ptr(),
                &mut failed
            ),
            VACPOL_OK
        );
    }
    assert!(vals.iter().all(|v| v.plane_term < 0.0));

    let with_zero = [0.2, 0.0, 3.0];
    unsafe {
        assert_eq!(
            vacpol_evaluate_many(
                h.field,
                h.wall,
                with_zero.as_ptr(),
                3,
                vals.as_mut_ptr(),
                &mut failed
            ),
            VACPOL_ERR_INVALID
        );
    }
    assert_eq!(failed, 1);

    let mut px = [0.0; 4];
    let mut pv = [VacpolValue::default(); 4];
    unsafe {
        assert_eq!(
            vacpol_profile(
                h.field,
                h.wall,
                0.1,
                10.0,
                4,
                1,
                px.as_mut_ptr(),
                pv.as_mut_ptr()
            ),
            VACPOL_OK
        );
    }
    assert_eq!(px[0], 0.1);
    assert_eq!(px[3], 10.0);
    assert!((px[1] - 10f64.powf(-1.0 / 3.0)).abs() < 1e-15);

    let (mut small, mut large) = (0.0, 0.0);
    unsafe {
        assert_eq!(
            vacpol_asymptotics(h.field, h.wall, 20.0, &mut small, &mut large),
            VACPOL_OK
        );
    }
    assert!(small < 0.0 && large < 0.0);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(vacpol_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/vacpol.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "vacpol_evaluate",
        "vacpol_last_error",
        "VACPOL_ERR_PANIC",
        "typedef struct VacpolWall VacpolWall",
    ] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{cc} rejected the header"),
            Err(_) => eprintln!("{cc} not available; header syntax check skipped"),
        }
    }
}
