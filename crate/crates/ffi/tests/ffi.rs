use std::ffi::CStr;
use std::ptr;

use osp_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(osp_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(osp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn genfun_handles() {
    unsafe {
        let mut f = ptr::null_mut();
        let mut g = ptr::null_mut();
        assert_eq!(osp_genfun_build(4, OspSide::Tableaux, &mut f), OspStatus::Ok);
        assert_eq!(osp_genfun_build(4, OspSide::Networks, &mut g), OspStatus::Ok);
        assert_eq!(osp_genfun_len(f), 6);
        let mut eq = false;
        assert_eq!(osp_genfun_equal(f, g, &mut eq), OspStatus::Ok);
        assert!(eq);

        let id = [1u32, 2, 3];
        let mut needed = 0usize;
        let st = osp_genfun_component_text(f, id.as_ptr(), 3, ptr::null_mut(), 0, &mut needed);
        assert_eq!(st, OspStatus::BufferTooSmall);
        assert!(needed > 1);
        let mut buf = vec![0 as std::ffi::c_char; needed];
        let st = osp_genfun_component_text(f, id.as_ptr(), 3, buf.as_mut_ptr(), buf.len(), &mut needed);
        assert_eq!(st, OspStatus::Ok);
        let text = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
        assert!(text.contains("x1"), "{text}");

        let point = [3u64, 5, 7];
        let mut a = [0u64; 6];
        let mut b = [0u64; 6];
        let p = (1u64 << 61) - 1;
        assert_eq!(osp_genfun_eval_mod_p(f, point.as_ptr(), 3, p, a.as_mut_ptr(), 6), OspStatus::Ok);
        assert_eq!(osp_genfun_eval_mod_p(g, point.as_ptr(), 3, p, b.as_mut_ptr(), 6), OspStatus::Ok);
        assert_eq!(a, b);

        let bad = [1u32, 1, 3];
        let st = osp_genfun_component_text(f, bad.as_ptr(), 3, buf.as_mut_ptr(), buf.len(), &mut needed);
        assert_eq!(st, OspStatus::InvalidArgument);
        assert!(!last_error().is_empty());

        osp_genfun_free(f);
        osp_genfun_free(g);
        osp_genfun_free(ptr::null_mut());
    }
}

#[test]
fn build_rejects_large_orders() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_ne!(osp_genfun_build(9, OspSide::Tableaux, &mut f), OspStatus::Ok);
        assert!(f.is_null());
        assert_eq!(osp_genfun_build(3, OspSide::Tableaux, ptr::null_mut()), OspStatus::NullPointer);
    }
}

#[test]
fn modular_verification() {
    unsafe {
        let mut eq = false;
        let mut bound = 0.0;
        assert_eq!(osp_verify_modular(5, 10, 7, &mut eq, &mut bound), OspStatus::Ok);
        assert!(eq);
        assert!(bound < -100.0);
        assert_eq!(osp_verify_modular(5, 10, 7, &mut eq, ptr::null_mut()), OspStatus::Ok);
    }
}

#[test]
fn edelman_greene_round_trip() {
    let word = [5u32, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3];
    let mut entries = [0u32; 15];
    let mut back = [0u32; 15];
    unsafe {
        assert_eq!(osp_edelman_greene_inverse(6, word.as_ptr(), 15, entries.as_mut_ptr(), 15), OspStatus::Ok);
        assert_eq!(osp_edelman_greene(6, entries.as_ptr(), 15, back.as_mut_ptr(), 15), OspStatus::Ok);
        assert_eq!(back, word);
        let mut small = [0u32; 3];
        assert_eq!(osp_edelman_greene(6, entries.as_ptr(), 15, small.as_mut_ptr(), 3), OspStatus::BufferTooSmall);
        let t3 = [1u32, 3, 2];
        let mut w = [0u32; 3];
        assert_eq!(osp_edelman_greene(3, t3.as_ptr(), 3, w.as_mut_ptr(), 3), OspStatus::Ok);
        assert_eq!(osp_edelman_greene(3, t3.as_ptr(), 2, w.as_mut_ptr(), 3), OspStatus::InvalidArgument);
        let not_reduced = [1u32, 1, 2];
        assert_eq!(osp_edelman_greene_inverse(3, not_reduced.as_ptr(), 3, w.as_mut_ptr(), 3), OspStatus::InvalidArgument);
    }
}

#[test]
fn densities() {
    unsafe {
        let mut d = 0.0;
        assert_eq!(osp_hypoexp_density([1.0f64, 1.0].as_ptr(), 2, 1.0, &mut d), OspStatus::Ok);
        assert!((d - (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(osp_hypoexp_density([1.0f64, 0.0].as_ptr(), 2, 1.0, &mut d), OspStatus::InvalidArgument);

        let pt = [0.4, 0.9];
        let (mut u, mut v) = (0.0, 0.0);
        assert_eq!(osp_joint_density(OspDensityModel::U, 3, pt.as_ptr(), 2, &mut u), OspStatus::Ok);
        assert_eq!(osp_joint_density(OspDensityModel::V, 3, pt.as_ptr(), 2, &mut v), OspStatus::Ok);
        assert!(u > 0.0 && (u - v).abs() < 1e-12);
        assert_ne!(osp_joint_density(OspDensityModel::U, 9, pt.as_ptr(), 2, &mut u), OspStatus::Ok);
    }
}

#[test]
fn sampling_is_reproducible() {
    unsafe {
        let mut a = [0.0; 4];
        let mut b = [0.0; 4];
        assert_eq!(osp_sample(OspModel::Growth, 5, 11, 3, a.as_mut_ptr(), 4), OspStatus::Ok);
        assert_eq!(osp_sample(OspModel::Growth, 5, 11, 3, b.as_mut_ptr(), 4), OspStatus::Ok);
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.is_finite() && *t > 0.0));
        assert_eq!(osp_sample(OspModel::Osp, 5, 11, 3, a.as_mut_ptr(), 2), OspStatus::BufferTooSmall);
        assert_eq!(osp_sample(OspModel::Dual, 1, 11, 3, a.as_mut_ptr(), 4), OspStatus::InvalidArgument);
    }
}

#[test]
fn lpp_corners() {
    let x = [0.5, 0.3, 0.2];
    let (mut v, mut w) = ([0.0; 2], [0.0; 2]);
    unsafe {
        assert_eq!(osp_lpp_corners(3, x.as_ptr(), 3, v.as_mut_ptr(), w.as_mut_ptr(), 2), OspStatus::Ok);
        assert_eq!(osp_lpp_corners(3, [0.5, -1.0, 0.2].as_ptr(), 3, v.as_mut_ptr(), w.as_mut_ptr(), 2), OspStatus::InvalidArgument);
    }
    assert!(v.iter().chain(&w).all(|t| t.is_finite() && *t > 0.0));
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/osp.h")).unwrap();
    for name in [
        "osp_last_error",
        "osp_version",
        "osp_genfun_build",
        "osp_genfun_free",
        "osp_genfun_len",
        "osp_genfun_equal",
        "osp_genfun_component_text",
        "osp_genfun_eval_mod_p",
        "osp_verify_modular",
        "osp_edelman_greene",
        "osp_edelman_greene_inverse",
        "osp_hypoexp_density",
        "osp_joint_density",
        "osp_sample",
        "osp_lpp_corners",
        "typedef struct OspGenFun OspGenFun",
        "OSP_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
