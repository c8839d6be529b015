// Copyright 2026 The stcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! C ABI for `stcorr`.
//!
//! Every fallible function returns a [`StcorrStatus`] and writes results
//! through out-pointers. On failure a description is available from
//! [`stcorr_last_error_message`] on the same thread. Channels and PDMs are
//! opaque handles released with their `_free` function.
//!
//! Matrices cross the boundary row-major; complex matrices as separate real
//! and imaginary arrays of 16 doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stcorr::channel::{extremal_channel, AxisPermutation, Channel, ExtremalParams, PauliTransferMatrix};
use stcorr::geometry::{classify, dist_to_octahedron, CorrVec3};
use stcorr::inference::infer_causal;
use stcorr::linalg::{Complex64, ComplexMatrix, PauliTable};
use stcorr::pdm::{
    causality_f_tr, corr_vec3, negativity, pdm_from_correlations, pdm_spatial, pdm_temporal, Pdm,
    QubitState,
};
use stcorr::Error;

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StcorrStatus {
    Ok = 0,
    InvalidArgument = 1,
    /// Input failed a physical check (Hermitian, PSD, CPTP, unit trace).
    Validation = 2,
    /// A requested representation does not exist for this value.
    State = 3,
    Format = 4,
    Io = 5,
    NullPointer = 6,
    /// A Rust panic was caught at the boundary; treat as a bug.
    Panic = 7,
}

/// Opaque qubit channel.
pub struct StcorrChannel(Channel);

/// Opaque pseudo-density matrix.
pub struct StcorrPdm(Pdm);

/// Correlation triple `(⟨σ1σ1⟩, ⟨σ2σ2⟩, ⟨σ3σ3⟩)`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StcorrVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StcorrRegionReport {
    pub in_ts: bool,
    pub in_tt: bool,
    pub in_octahedron: bool,
    pub in_elliptope: bool,
    pub in_cube: bool,
    pub dist_octahedron: f64,
    /// `1 + 2xyz − x² − y² − z²`; negative outside the elliptope.
    pub elliptope_defect: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StcorrCausalHypothesis {
    pub compatible_spatial: bool,
    pub compatible_temporal_cptp: bool,
    pub compatible_separable: bool,
    pub requires_mixture: bool,
    pub unphysical: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(StcorrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidArgument(_) => StcorrStatus::InvalidArgument,
            Error::NotHermitian { .. } | Error::Validation(_) => StcorrStatus::Validation,
            Error::State(_) => StcorrStatus::State,
            Error::Format(_) => StcorrStatus::Format,
            Error::Io { .. } => StcorrStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(StcorrStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StcorrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            StcorrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            StcorrStatus::Panic
        }
    }
}

unsafe fn read_array<'a, const N: usize>(p: *const f64, what: &str) -> Result<&'a [f64; N], Failure> {
    // SAFETY: caller guarantees `p` is null or points to N readable doubles.
    unsafe { (p as *const [f64; N]).as_ref() }.ok_or_else(|| null(what))
}

unsafe fn write_out<T>(p: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: caller guarantees `p` is writable when non-null.
    unsafe { p.write(value) };
    Ok(())
}

fn table(t: &[f64; 16]) -> [[f64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| t[4 * i + j]))
}

fn flatten(t: &[[f64; 4]; 4]) -> [f64; 16] {
    std::array::from_fn(|k| t[k / 4][k % 4])
}

unsafe fn read_complex4(re: *const f64, im: *const f64) -> Result<ComplexMatrix, Failure> {
    let re = unsafe { read_array::<16>(re, "re") }?;
    let im = unsafe { read_array::<16>(im, "im") }?;
    let entries: Vec<Complex64> = re.iter().zip(im).map(|(a, b)| Complex64::new(*a, *b)).collect();
    Ok(ComplexMatrix::from_row_major(4, &entries)?)
}

fn vec3(c: CorrVec3) -> StcorrVec3 {
    StcorrVec3 {
        x: c.x,
        y: c.y,
        z: c.z,
    }
}

fn corr(c: StcorrVec3) -> CorrVec3 {
    CorrVec3::new(c.x, c.y, c.z)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn stcorr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stcorr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Extremal channel with angles `u ∈ [0, 2π]`, `v ∈ [0, π]` (radians) and
/// axis permutation given as three digits, e.g. 123 (identity) or 312.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_channel_extremal(
    u: f64,
    v: f64,
    permutation: u32,
    out: *mut *mut StcorrChannel,
) -> StcorrStatus {
    guard(|| {
        let digits = [permutation / 100, permutation / 10 % 10, permutation % 10];
        if permutation >= 1000 {
            return Err(Error::InvalidArgument(format!("permutation {permutation} is not three digits")).into());
        }
        let perm = AxisPermutation::new(digits.map(|d| d as u8))?;
        let ch = extremal_channel(&ExtremalParams::new(u, v, perm)?);
        unsafe { write_out(out, boxed(StcorrChannel(ch)), "out") }
    })
}

/// Named channel: identity, fully-depolarizing, depolarizing, dephasing,
/// amplitude-damping, pauli-x, pauli-y, pauli-z. `param` is read only when
/// `has_param` is true.
///
/// # Safety
/// `name` must be null or a NUL-terminated string; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_channel_named(
    name: *const c_char,
    param: f64,
    has_param: bool,
    out: *mut *mut StcorrChannel,
) -> StcorrStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| Failure(StcorrStatus::InvalidArgument, "name is not UTF-8".into()))?;
        let ch = Channel::named(name, has_param.then_some(param))?;
        ch.require_cptp()?;
        unsafe { write_out(out, boxed(StcorrChannel(ch)), "out") }
    })
}

/// Channel from a row-major 4×4 Pauli transfer matrix; fails unless CPTP.
///
/// # Safety
/// `ptm` must be null or point to 16 doubles; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_channel_from_ptm(ptm: *const f64, out: *mut *mut StcorrChannel) -> StcorrStatus {
    guard(|| {
        let t = unsafe { read_array::<16>(ptm, "ptm") }?;
        let ch = Channel::from_ptm(PauliTransferMatrix(table(t)))?;
        ch.require_cptp()?;
        unsafe { write_out(out, boxed(StcorrChannel(ch)), "out") }
    })
}

/// Writes the row-major Pauli transfer matrix into `out[16]`.
///
/// # Safety
/// `channel` must be null or a live handle; `out` null or 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stcorr_channel_ptm(channel: *const StcorrChannel, out: *mut f64) -> StcorrStatus {
    guard(|| {
        let ch = unsafe { channel.as_ref() }.ok_or_else(|| null("channel"))?;
        unsafe { write_out(out as *mut [f64; 16], flatten(&ch.0.ptm().0), "out") }
    })
}

/// # Safety
/// `channel` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_channel_is_unital(channel: *const StcorrChannel, out: *mut bool) -> StcorrStatus {
    guard(|| {
        let ch = unsafe { channel.as_ref() }.ok_or_else(|| null("channel"))?;
        unsafe { write_out(out, ch.0.is_unital(), "out") }
    })
}

/// Releases a channel; null is ignored.
///
/// # Safety
/// `channel` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stcorr_channel_free(channel: *mut StcorrChannel) {
    if !channel.is_null() {
        drop(unsafe { Box::from_raw(channel) });
    }
}

/// Temporal PDM of a qubit with Bloch vector `bloch[3]` measured before and
/// after `channel`.
///
/// # Safety
/// `bloch` must be null or point to 3 doubles; `channel` null or live;
/// `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_temporal(
    bloch: *const f64,
    channel: *const StcorrChannel,
    out: *mut *mut StcorrPdm,
) -> StcorrStatus {
    guard(|| {
        let b = unsafe { read_array::<3>(bloch, "bloch") }?;
        let ch = unsafe { channel.as_ref() }.ok_or_else(|| null("channel"))?;
        let p = pdm_temporal(&QubitState::from_bloch(*b)?, &ch.0)?;
        unsafe { write_out(out, boxed(StcorrPdm(p)), "out") }
    })
}

/// PDM of a two-qubit density matrix given as row-major real and imaginary parts.
///
/// # Safety
/// `re` and `im` must be null or point to 16 doubles; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_spatial(re: *const f64, im: *const f64, out: *mut *mut StcorrPdm) -> StcorrStatus {
    guard(|| {
        let m = unsafe { read_complex4(re, im) }?;
        let p = pdm_spatial(&m)?;
        unsafe { write_out(out, boxed(StcorrPdm(p)), "out") }
    })
}

/// PDM from a row-major correlation table with `T[0][0] = 1`.
///
/// # Safety
/// `table16` must be null or point to 16 doubles; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_from_table(table16: *const f64, out: *mut *mut StcorrPdm) -> StcorrStatus {
    guard(|| {
        let t = unsafe { read_array::<16>(table16, "table") }?;
        let p = pdm_from_correlations(&PauliTable(table(t)))?;
        unsafe { write_out(out, boxed(StcorrPdm(p)), "out") }
    })
}

/// Writes the row-major correlation table `T[i][j] = Tr[(σi⊗σj) R]` into `out[16]`.
///
/// # Safety
/// `pdm` must be null or live; `out` null or 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_table(pdm: *const StcorrPdm, out: *mut f64) -> StcorrStatus {
    guard(|| {
        let p = unsafe { pdm.as_ref() }.ok_or_else(|| null("pdm"))?;
        unsafe { write_out(out as *mut [f64; 16], flatten(&p.0.table().0), "out") }
    })
}

/// # Safety
/// `pdm` must be null or live; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_corr(pdm: *const StcorrPdm, out: *mut StcorrVec3) -> StcorrStatus {
    guard(|| {
        let p = unsafe { pdm.as_ref() }.ok_or_else(|| null("pdm"))?;
        unsafe { write_out(out, vec3(corr_vec3(&p.0)), "out") }
    })
}

/// Causality measure `‖R‖_tr − 1`.
///
/// # Safety
/// `pdm` must be null or live; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_causality(pdm: *const StcorrPdm, out: *mut f64) -> StcorrStatus {
    guard(|| {
        let p = unsafe { pdm.as_ref() }.ok_or_else(|| null("pdm"))?;
        unsafe { write_out(out, causality_f_tr(&p.0), "out") }
    })
}

/// Releases a PDM; null is ignored.
///
/// # Safety
/// `pdm` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stcorr_pdm_free(pdm: *mut StcorrPdm) {
    if !pdm.is_null() {
        drop(unsafe { Box::from_raw(pdm) });
    }
}

/// Negativity of a two-qubit density matrix.
///
/// # Safety
/// `re` and `im` must be null or point to 16 doubles; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_negativity(re: *const f64, im: *const f64, out: *mut f64) -> StcorrStatus {
    guard(|| {
        let m = unsafe { read_complex4(re, im) }?;
        let n = negativity(&m)?;
        unsafe { write_out(out, n, "out") }
    })
}

/// Euclidean distance to the octahedron `|x|+|y|+|z| ≤ 1`; NaN for non-finite input.
#[no_mangle]
pub extern "C" fn stcorr_dist_to_octahedron(point: StcorrVec3) -> f64 {
    let c = corr(point);
    if c.to_array().iter().all(|x| x.is_finite()) {
        dist_to_octahedron(c)
    } else {
        f64::NAN
    }
}

fn check_point(point: StcorrVec3, tol: f64) -> Result<CorrVec3, Failure> {
    let c = corr(point);
    if !c.to_array().iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidArgument("point must be finite".into()).into());
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument("tolerance must be non-negative".into()).into());
    }
    Ok(c)
}

/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_classify(point: StcorrVec3, tol: f64, out: *mut StcorrRegionReport) -> StcorrStatus {
    guard(|| {
        let r = classify(check_point(point, tol)?, tol);
        let report = StcorrRegionReport {
            in_ts: r.in_ts,
            in_tt: r.in_tt,
            in_octahedron: r.in_octahedron,
            in_elliptope: r.in_elliptope,
            in_cube: r.in_cube,
            dist_octahedron: r.dist_octahedron,
            elliptope_defect: r.elliptope_defect,
        };
        unsafe { write_out(out, report, "out") }
    })
}

/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn stcorr_infer_causal(
    point: StcorrVec3,
    tol: f64,
    out: *mut StcorrCausalHypothesis,
) -> StcorrStatus {
    guard(|| {
        let h = infer_causal(check_point(point, tol)?, tol);
        let hyp = StcorrCausalHypothesis {
            compatible_spatial: h.compatible_spatial,
            compatible_temporal_cptp: h.compatible_temporal_cptp,
            compatible_separable: h.compatible_separable,
            requires_mixture: h.requires_mixture,
            unphysical: h.unphysical,
        };
        unsafe { write_out(out, hyp, "out") }
    })
}
