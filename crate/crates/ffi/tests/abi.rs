use std::f64::consts::SQRT_2;
use std::ffi::CStr;
use std::ptr;

use hv_ffi::*;

fn v(x: f64, y: f64, z: f64) -> HvVec3 {
    HvVec3 { x, y, z }
}

fn model(f: impl FnOnce(*mut *mut HvModel) -> HvStatus) -> *mut HvModel {
    let mut m = ptr::null_mut();
    assert_eq!(f(&mut m), HvStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = hv_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn qm_chsh_and_table() {
    unsafe {
        let m = model(|o| hv_model_qm(o));
        let mut r = HvReport::default();
        assert_eq!(hv_inequality(m, HvInequality::Chsh as u32, 0.0, &mut r), HvStatus::Ok);
        assert!((r.value - 2.0 * SQRT_2).abs() < 1e-12);
        assert_eq!(r.violated, 1);
        let mut t = HvTable::default();
        let z = v(0.0, 0.0, 1.0);
        assert_eq!(hv_joint_table(m, z, z, HvHidden::default(), &mut t), HvStatus::Ok);
        assert_eq!((t.pp, t.pm, t.mp, t.mm), (0.0, 0.5, 0.5, 0.0));
        hv_model_free(m);
    }
}

#[test]
fn fhv_correlator_and_mc() {
    unsafe {
        let m = model(|o| hv_model_fhv(0.4, o));
        let (a, b) = (v(0.0, 0.0, 1.0), v(1.0, 0.0, 1.0));
        let mut c = 0.0;
        assert_eq!(hv_correlator(m, a, b, &mut c), HvStatus::Ok);
        assert!((c + (0.5f64).sqrt() / 1.4).abs() < 1e-12);
        let mut e1 = HvMcEstimate::default();
        let mut e2 = HvMcEstimate::default();
        assert_eq!(hv_mc_correlator(m, a, b, 200_000, 7, 4, &mut e1), HvStatus::Ok);
        assert_eq!(hv_mc_correlator(m, a, b, 200_000, 7, 4, &mut e2), HvStatus::Ok);
        assert_eq!(e1, e2);
        assert!((e1.mean - c).abs() <= 4.0 * e1.stderr_);
        hv_model_free(m);
    }
}

#[test]
fn leggett_and_branciard_margins() {
    unsafe {
        let m = model(|o| hv_model_qm(o));
        let phi = 2.0 * (1.0 / (2.0 * std::f64::consts::PI)).asin();
        let mut r = HvReport::default();
        assert_eq!(hv_inequality(m, HvInequality::Leggett as u32, phi, &mut r), HvStatus::Ok);
        assert!((r.margin - 1.0 / std::f64::consts::PI.powi(2)).abs() < 1e-10);
        let phi = 2.0 * (1.0 / 10f64.sqrt()).asin();
        assert_eq!(hv_inequality(m, HvInequality::Branciard as u32, phi, &mut r), HvStatus::Ok);
        assert!((r.margin - (2.0 / 3.0 * 10f64.sqrt() - 2.0)).abs() < 1e-10);
        assert_eq!(hv_inequality(m, 9, phi, &mut r), HvStatus::InvalidArgument);
        hv_model_free(m);
    }
}

#[test]
fn invalid_models_report_constraint() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(hv_model_thv(2.5, &mut m), HvStatus::InvalidModel);
        assert!(m.is_null());
        assert!(last_error().contains("positivity"), "{}", last_error());
        assert_eq!(hv_model_fhv(-1.0, &mut m), HvStatus::InvalidModel);
        assert_eq!(hv_model_qm(ptr::null_mut()), HvStatus::NullPointer);
    }
}

#[test]
fn hidden_states_and_bad_vectors() {
    unsafe {
        let m = model(|o| hv_model_shv_constant(v(0.0, 0.0, 0.5), o));
        let (a, b) = (v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0));
        let mut t = HvTable::default();
        let h = HvHidden { p: v(0.0, 0.0, 0.5), ..Default::default() };
        assert_eq!(hv_joint_table(m, a, b, h, &mut t), HvStatus::Ok);
        assert!((t.pp + t.pm + t.mp + t.mm - 1.0).abs() < 1e-12);
        let too_long = HvHidden { p: v(0.0, 0.0, 0.9), ..Default::default() };
        assert_eq!(hv_joint_table(m, a, b, too_long, &mut t), HvStatus::InvalidArgument);
        let mut c = 0.0;
        assert_eq!(hv_correlator(m, v(0.0, 0.0, 0.0), b, &mut c), HvStatus::Undefined);
        assert_eq!(hv_correlator(m, v(f64::NAN, 0.0, 0.0), b, &mut c), HvStatus::InvalidArgument);
        assert_eq!(hv_correlator(m, a, b, ptr::null_mut()), HvStatus::NullPointer);
        assert_eq!(hv_correlator(ptr::null(), a, b, &mut c), HvStatus::NullPointer);
        hv_model_free(m);
        hv_model_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/hv.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["hv_model_fhv", "hv_model_free", "hv_inequality", "hv_last_error", "HV_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
