//! C interface to `osp-core`.
//!
//! Every fallible function returns an [`OspStatus`]; on failure a message is
//! available from [`osp_last_error`] on the same thread. Generating-function
//! vectors are opaque [`OspGenFun`] handles released with
//! [`osp_genfun_free`]. Staircase tableaux cross the boundary as their
//! entries in row-major order (`n-1` entries in the first row, then `n-2`,
//! and so on).

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;
use std::slice;

use osp_core::combinatorics::{staircase, Permutation, SortingNetwork, Tableau};
use osp_core::correspondences::{edelman_greene, edelman_greene_inverse};
use osp_core::lpp::vn_wn_from_weights;
use osp_core::simulate::{Model, RngStream};
use osp_core::stats::{hypoexp_density, joint_density, DensityModel, DensitySpec};
use osp_core::symbolic::{self, BuildOptions, GeneratingFunctionVector, Side};
use osp_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OspStatus {
    Ok = 0,
    InvalidArgument = 1,
    Resource = 2,
    /// An evaluation point lies on a pole; draw another point.
    PoleHit = 3,
    Io = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OspSide {
    /// `F_n`, summed over staircase tableaux.
    Tableaux = 0,
    /// `G_n`, summed over sorting networks.
    Networks = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OspModel {
    Osp = 0,
    Growth = 1,
    Dual = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OspDensityModel {
    U = 0,
    V = 1,
}

/// Opaque generating-function vector.
pub struct OspGenFun {
    inner: GeneratingFunctionVector,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: OspStatus, msg: impl AsRef<str>) -> OspStatus {
    set_error(msg.as_ref());
    status
}

fn from_error(e: Error) -> OspStatus {
    let status = match &e {
        Error::InvalidArgument(_) | Error::Json(_) | Error::Csv(_) => OspStatus::InvalidArgument,
        Error::Resource(_) => OspStatus::Resource,
        Error::PoleHit { .. } => OspStatus::PoleHit,
        Error::Io(_) => OspStatus::Io,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), OspStatus> + UnwindSafe) -> OspStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => OspStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(OspStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, OspStatus>;
}

impl<T> OrStatus<T> for osp_core::Result<T> {
    fn or_status(self) -> Result<T, OspStatus> {
        self.map_err(from_error)
    }
}

unsafe fn input<'a, T>(p: *const T, len: usize) -> Result<&'a [T], OspStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(OspStatus::NullPointer, "null input pointer"));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, needed: usize) -> Result<&'a mut [T], OspStatus> {
    if len < needed {
        return Err(fail(OspStatus::BufferTooSmall, format!("output needs {needed} elements, got {len}")));
    }
    if p.is_null() {
        return Err(fail(OspStatus::NullPointer, "null output pointer"));
    }
    Ok(slice::from_raw_parts_mut(p, needed))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, OspStatus> {
    p.as_mut().ok_or_else(|| fail(OspStatus::NullPointer, "null output pointer"))
}

fn staircase_rows<T: Copy>(n: usize, flat: &[T]) -> Result<Vec<Vec<T>>, OspStatus> {
    if n < 2 || flat.len() != n * (n - 1) / 2 {
        return Err(fail(OspStatus::InvalidArgument, format!("expected {} entries for order {n}", n * n.saturating_sub(1) / 2)));
    }
    let mut rows = Vec::with_capacity(n - 1);
    let mut at = 0;
    for len in (1..n).rev() {
        rows.push(flat[at..at + len].to_vec());
        at += len;
    }
    Ok(rows)
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn osp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn osp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds `F_n` or `G_n` exactly. On success `*out` owns a new handle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn osp_genfun_build(n: u32, side: OspSide, out: *mut *mut OspGenFun) -> OspStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let side = match side {
            OspSide::Tableaux => Side::Tableaux,
            OspSide::Networks => Side::Networks,
        };
        let inner = symbolic::build(n as usize, side, BuildOptions::default()).or_status()?;
        *out = Box::into_raw(Box::new(OspGenFun { inner }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from [`osp_genfun_build`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn osp_genfun_free(g: *mut OspGenFun) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of components, `(n-1)!`; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn osp_genfun_len(g: *const OspGenFun) -> usize {
    g.as_ref().map_or(0, |g| g.inner.len())
}

/// Exact component-wise equality.
///
/// # Safety
/// `a` and `b` must be live handles and `equal` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn osp_genfun_equal(a: *const OspGenFun, b: *const OspGenFun, equal: *mut bool) -> OspStatus {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            return Err(fail(OspStatus::NullPointer, "null handle"));
        };
        let eq = out_ref(equal)?;
        *eq = symbolic::equal(&a.inner, &b.inner).or_status()?.equal;
        Ok(())
    })
}

/// Writes the canonical text of the component at permutation `perm`
/// (one-line notation, values `1..n-1`) into `buf`, NUL-terminated. The
/// required size including the NUL is stored in `*needed` even when `buf`
/// is too small.
///
/// # Safety
/// `g` must be a live handle; `perm` must hold `perm_len` values; `buf`
/// must hold `buf_len` bytes or be null with `buf_len == 0`.
#[no_mangle]
pub unsafe extern "C" fn osp_genfun_component_text(
    g: *const OspGenFun,
    perm: *const u32,
    perm_len: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> OspStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| fail(OspStatus::NullPointer, "null handle"))?;
        let perm = input(perm, perm_len)?;
        let p = Permutation::new(perm.iter().map(|&v| v as usize).collect()).or_status()?;
        let c = g
            .inner
            .component(&p)
            .ok_or_else(|| fail(OspStatus::InvalidArgument, format!("{p} is not a component index")))?;
        let text = c.to_string();
        let need = text.len() + 1;
        *out_ref(needed)? = need;
        let dst = output(buf.cast::<u8>(), buf_len, need)?;
        dst[..text.len()].copy_from_slice(text.as_bytes());
        dst[text.len()] = 0;
        Ok(())
    })
}

/// Component residues at `point` modulo `prime`, in lexicographic order of
/// the permutations.
///
/// # Safety
/// `point` must hold `point_len` values and `out` `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn osp_genfun_eval_mod_p(
    g: *const OspGenFun,
    point: *const u64,
    point_len: usize,
    prime: u64,
    out: *mut u64,
    out_len: usize,
) -> OspStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| fail(OspStatus::NullPointer, "null handle"))?;
        if prime < 3 {
            return Err(fail(OspStatus::InvalidArgument, "prime must be at least 3"));
        }
        let values = g.inner.eval_mod_p(input(point, point_len)?, prime).or_status()?;
        output(out, out_len, values.len())?.copy_from_slice(&values);
        Ok(())
    })
}

/// Randomized check of `F_n = G_n` at `points` points modulo `2^61 - 1`.
///
/// # Safety
/// `equal` must be a valid pointer; `failure_log10` may be null.
#[no_mangle]
pub unsafe extern "C" fn osp_verify_modular(
    n: u32,
    points: u32,
    seed: u64,
    equal: *mut bool,
    failure_log10: *mut f64,
) -> OspStatus {
    guard(|| {
        let eq = out_ref(equal)?;
        let r = symbolic::verify_modular(n as usize, points as usize, seed, symbolic::modp::MERSENNE_61).or_status()?;
        *eq = r.equal;
        if let Some(f) = failure_log10.as_mut() {
            *f = r.failure_bound_log10;
        }
        Ok(())
    })
}

/// Sorting network of a staircase standard tableau.
///
/// # Safety
/// `entries` must hold `len` values and `word` `word_len` values.
#[no_mangle]
pub unsafe extern "C" fn osp_edelman_greene(
    n: u32,
    entries: *const u32,
    len: usize,
    word: *mut u32,
    word_len: usize,
) -> OspStatus {
    guard(|| {
        let n = n as usize;
        let flat: Vec<usize> = input(entries, len)?.iter().map(|&v| v as usize).collect();
        let rows = staircase_rows(n, &flat)?;
        let t = Tableau::with_shape(staircase(n).or_status()?, rows).or_status()?;
        let s = edelman_greene(&t).or_status()?;
        let dst = output(word, word_len, s.word().len())?;
        for (d, &v) in dst.iter_mut().zip(s.word()) {
            *d = v as u32;
        }
        Ok(())
    })
}

/// Staircase tableau (row-major entries) of a sorting network.
///
/// # Safety
/// `word` must hold `len` values and `entries` `entries_len` values.
#[no_mangle]
pub unsafe extern "C" fn osp_edelman_greene_inverse(
    n: u32,
    word: *const u32,
    len: usize,
    entries: *mut u32,
    entries_len: usize,
) -> OspStatus {
    guard(|| {
        let w: Vec<usize> = input(word, len)?.iter().map(|&v| v as usize).collect();
        let s = SortingNetwork::new(n as usize, w).or_status()?;
        let t = edelman_greene_inverse(&s);
        let flat: Vec<u32> = t.rows().iter().flatten().map(|&v| v as u32).collect();
        output(entries, entries_len, flat.len())?.copy_from_slice(&flat);
        Ok(())
    })
}

/// Density of a sum of independent exponentials with the given rates.
///
/// # Safety
/// `rates` must hold `len` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn osp_hypoexp_density(rates: *const f64, len: usize, u: f64, out: *mut f64) -> OspStatus {
    guard(|| {
        let v = hypoexp_density(input(rates, len)?, u).or_status()?;
        *out_ref(out)? = v;
        Ok(())
    })
}

/// Exact joint density of `U_n` or `V_n` (`n <= 5`) at `point`.
///
/// # Safety
/// `point` must hold `len` values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn osp_joint_density(
    model: OspDensityModel,
    n: u32,
    point: *const f64,
    len: usize,
    out: *mut f64,
) -> OspStatus {
    guard(|| {
        let model = match model {
            OspDensityModel::U => DensityModel::U,
            OspDensityModel::V => DensityModel::V,
        };
        let spec = DensitySpec::new(model, n as usize).or_status()?;
        *out_ref(out)? = joint_density(&spec, input(point, len)?).or_status()?;
        Ok(())
    })
}

/// Times of trial `trial` of the stream seeded by `seed`; identical to the
/// corresponding row of the command-line sampler.
///
/// # Safety
/// `times` must hold `len >= n-1` values.
#[no_mangle]
pub unsafe extern "C" fn osp_sample(
    model: OspModel,
    n: u32,
    seed: u64,
    trial: u64,
    times: *mut f64,
    len: usize,
) -> OspStatus {
    guard(|| {
        let model = match model {
            OspModel::Osp => Model::Osp,
            OspModel::Growth => Model::Growth,
            OspModel::Dual => Model::Dual,
        };
        if n < 2 {
            return Err(fail(OspStatus::InvalidArgument, "order must be at least 2"));
        }
        let r = model.sample(n as usize, &mut RngStream::new(seed, trial)).or_status()?;
        output(times, len, r.times.len())?.copy_from_slice(&r.times);
        Ok(())
    })
}

/// Corner vectors `V` and `W` of a staircase weight array given row-major.
///
/// # Safety
/// `weights` must hold `len` values; `v` and `w` must each hold `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn osp_lpp_corners(
    n: u32,
    weights: *const f64,
    len: usize,
    v: *mut f64,
    w: *mut f64,
    out_len: usize,
) -> OspStatus {
    guard(|| {
        let n = n as usize;
        let flat = input(weights, len)?;
        if flat.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(fail(OspStatus::InvalidArgument, "weights must be non-negative and finite"));
        }
        let rows = staircase_rows(n, flat)?;
        let x = Tableau::with_shape(staircase(n).or_status()?, rows).or_status()?;
        let (vv, ww) = vn_wn_from_weights(&x).or_status()?;
        output(v, out_len, vv.len())?.copy_from_slice(&vv);
        output(w, out_len, ww.len())?.copy_from_slice(&ww);
        Ok(())
    })
}
