//! C ABI for the sicpovm library: opaque handles, integer status codes,
//! and JSON strings for structured data. The header `include/sicpovm.h`
//! is generated by cbindgen at build time.
//!
//! Ownership rules: every `*_new`/`*_build`/`from_json` output must be
//! released with the matching `*_free`; every `char*` output must be
//! released with `sic_string_free`. All functions tolerate null inputs
//! and never unwind across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sicpovm::sic::SicFamily;
use sicpovm::{
    construct_sic, dual_frame, gell_mann_basis, make_family, max_purity_sic, pauli_basis, verify,
    Error, SicPovm, TracelessBasis,
};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    VerificationFailed = 4,
    NumericalFailure = 5,
    Panic = 6,
}

/// Opaque handle to an orthonormal basis of the traceless Hermitian
/// operators.
pub struct SicBasisHandle(TracelessBasis);

/// Opaque handle to a one-parameter SIC POVM family with its admissible
/// interval.
pub struct SicFamilyHandle(SicFamily);

/// Opaque handle to a concrete SIC POVM.
pub struct SicPovmHandle(SicPovm);

fn status_of(e: &Error) -> SicStatus {
    match e {
        Error::ZeroT
        | Error::BadDimension(_)
        | Error::DimensionMismatch(..)
        | Error::InvalidArgument(_) => SicStatus::InvalidArgument,
        Error::NotPsd { .. }
        | Error::PurityOutOfRange(_)
        | Error::DegeneratePovm
        | Error::InvalidBasis(_)
        | Error::BadGramStructure(_) => SicStatus::VerificationFailed,
        Error::NotHermitian(_)
        | Error::NoConvergence(_)
        | Error::SingularBlock(_)
        | Error::NoSignChange => SicStatus::NumericalFailure,
    }
}

fn guarded(body: impl FnOnce() -> SicStatus) -> SicStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(SicStatus::Panic)
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> SicStatus {
    if out.is_null() {
        return SicStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(value));
    SicStatus::Ok
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> SicStatus {
    if out.is_null() {
        return SicStatus::NullPointer;
    }
    match CString::new(value) {
        Ok(s) => {
            *out = s.into_raw();
            SicStatus::Ok
        }
        Err(_) => SicStatus::InvalidUtf8,
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SicStatus> {
    if ptr.is_null() {
        return Err(SicStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| SicStatus::InvalidUtf8)
}

/// Frees a string returned by any `*_json` or `*_csv` function.
#[no_mangle]
pub unsafe extern "C" fn sic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the generalized Gell-Mann basis for dimension `d`.
#[no_mangle]
pub unsafe extern "C" fn sic_basis_gell_mann(d: usize, out: *mut *mut SicBasisHandle) -> SicStatus {
    guarded(|| match gell_mann_basis(d) {
        Ok(basis) => write_handle(out, SicBasisHandle(basis)),
        Err(e) => status_of(&e),
    })
}

/// Creates the normalized Pauli basis (dimension 2).
#[no_mangle]
pub unsafe extern "C" fn sic_basis_pauli(out: *mut *mut SicBasisHandle) -> SicStatus {
    guarded(|| write_handle(out, SicBasisHandle(pauli_basis())))
}

/// Parses a basis from its JSON form; validation errors map to
/// `VERIFICATION_FAILED`.
#[no_mangle]
pub unsafe extern "C" fn sic_basis_from_json(
    json: *const c_char,
    out: *mut *mut SicBasisHandle,
) -> SicStatus {
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match serde_json::from_str::<TracelessBasis>(text) {
            Ok(basis) => write_handle(out, SicBasisHandle(basis)),
            Err(_) => SicStatus::VerificationFailed,
        }
    })
}

/// Serializes a basis to JSON.
#[no_mangle]
pub unsafe extern "C" fn sic_basis_to_json(
    basis: *const SicBasisHandle,
    out: *mut *mut c_char,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = basis.as_ref() else {
            return SicStatus::NullPointer;
        };
        match serde_json::to_string(&handle.0) {
            Ok(json) => write_string(out, json),
            Err(_) => SicStatus::NumericalFailure,
        }
    })
}

/// Basis dimension `d`; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sic_basis_dim(basis: *const SicBasisHandle) -> usize {
    basis.as_ref().map_or(0, |h| h.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn sic_basis_free(basis: *mut SicBasisHandle) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

/// Builds the one-parameter family generated by a basis, including the
/// admissible interval `[t0, t1]`.
#[no_mangle]
pub unsafe extern "C" fn sic_family_new(
    basis: *const SicBasisHandle,
    out: *mut *mut SicFamilyHandle,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = basis.as_ref() else {
            return SicStatus::NullPointer;
        };
        match make_family(&handle.0) {
            Ok(family) => write_handle(out, SicFamilyHandle(family)),
            Err(e) => status_of(&e),
        }
    })
}

unsafe fn family_scalar(
    family: *const SicFamilyHandle,
    out: *mut f64,
    get: impl Fn(&SicFamily) -> f64,
) -> SicStatus {
    let Some(handle) = family.as_ref() else {
        return SicStatus::NullPointer;
    };
    if out.is_null() {
        return SicStatus::NullPointer;
    }
    *out = get(&handle.0);
    SicStatus::Ok
}

/// Lower endpoint of the admissible interval.
#[no_mangle]
pub unsafe extern "C" fn sic_family_t0(family: *const SicFamilyHandle, out: *mut f64) -> SicStatus {
    guarded(|| family_scalar(family, out, SicFamily::t0))
}

/// Upper endpoint of the admissible interval.
#[no_mangle]
pub unsafe extern "C" fn sic_family_t1(family: *const SicFamilyHandle, out: *mut f64) -> SicStatus {
    guarded(|| family_scalar(family, out, SicFamily::t1))
}

/// Largest admissible magnitude `max{|t0|, t1}`.
#[no_mangle]
pub unsafe extern "C" fn sic_family_t_m(family: *const SicFamilyHandle, out: *mut f64) -> SicStatus {
    guarded(|| family_scalar(family, out, SicFamily::t_m))
}

#[no_mangle]
pub unsafe extern "C" fn sic_family_free(family: *mut SicFamilyHandle) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Constructs the POVM of a family at parameter `t`. Fails with
/// `INVALID_ARGUMENT` for `t = 0` and `VERIFICATION_FAILED` outside the
/// admissible interval.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_build(
    family: *const SicFamilyHandle,
    t: f64,
    out: *mut *mut SicPovmHandle,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = family.as_ref() else {
            return SicStatus::NullPointer;
        };
        match construct_sic(&handle.0, t) {
            Ok(povm) => write_handle(out, SicPovmHandle(povm)),
            Err(e) => status_of(&e),
        }
    })
}

/// Constructs the maximal-purity POVM of a basis with the positivity
/// convention (the basis sign is chosen so the selected `t` is positive).
#[no_mangle]
pub unsafe extern "C" fn sic_povm_build_max(
    basis: *const SicBasisHandle,
    out: *mut *mut SicPovmHandle,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = basis.as_ref() else {
            return SicStatus::NullPointer;
        };
        match max_purity_sic(&handle.0) {
            Ok((_, povm)) => write_handle(out, SicPovmHandle(povm)),
            Err(e) => status_of(&e),
        }
    })
}

/// Purity `a = Tr(P^2)` of the POVM.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_purity(povm: *const SicPovmHandle, out: *mut f64) -> SicStatus {
    guarded(|| {
        let Some(handle) = povm.as_ref() else {
            return SicStatus::NullPointer;
        };
        if out.is_null() {
            return SicStatus::NullPointer;
        }
        *out = handle.0.a;
        SicStatus::Ok
    })
}

/// Pairwise overlap `b = Tr(P_alpha P_beta)`, distinct pairs.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_overlap(povm: *const SicPovmHandle, out: *mut f64) -> SicStatus {
    guarded(|| {
        let Some(handle) = povm.as_ref() else {
            return SicStatus::NullPointer;
        };
        if out.is_null() {
            return SicStatus::NullPointer;
        }
        *out = handle.0.b;
        SicStatus::Ok
    })
}

/// Hilbert-space dimension `d`; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_dim(povm: *const SicPovmHandle) -> usize {
    povm.as_ref().map_or(0, |h| h.0.dim)
}

/// Serializes a POVM to JSON.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_to_json(
    povm: *const SicPovmHandle,
    out: *mut *mut c_char,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = povm.as_ref() else {
            return SicStatus::NullPointer;
        };
        match serde_json::to_string(&handle.0) {
            Ok(json) => write_string(out, json),
            Err(_) => SicStatus::NumericalFailure,
        }
    })
}

/// Parses a POVM from its JSON form.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_from_json(
    json: *const c_char,
    out: *mut *mut SicPovmHandle,
) -> SicStatus {
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match serde_json::from_str::<SicPovm>(text) {
            Ok(povm) => write_handle(out, SicPovmHandle(povm)),
            Err(_) => SicStatus::VerificationFailed,
        }
    })
}

/// Runs the full property verification and returns the report as JSON.
/// The status reflects only mechanical failure; read `pass` in the report.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_verify_json(
    povm: *const SicPovmHandle,
    out: *mut *mut c_char,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = povm.as_ref() else {
            return SicStatus::NullPointer;
        };
        match verify(&handle.0) {
            Ok(report) => match serde_json::to_string(&report) {
                Ok(json) => write_string(out, json),
                Err(_) => SicStatus::NumericalFailure,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// Serializes the dual frame of a POVM to JSON.
#[no_mangle]
pub unsafe extern "C" fn sic_povm_dual_json(
    povm: *const SicPovmHandle,
    out: *mut *mut c_char,
) -> SicStatus {
    guarded(|| {
        let Some(handle) = povm.as_ref() else {
            return SicStatus::NullPointer;
        };
        match dual_frame(&handle.0) {
            Ok(dual) => match serde_json::to_string(&dual) {
                Ok(json) => write_string(out, json),
                Err(_) => SicStatus::NumericalFailure,
            },
            Err(e) => status_of(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn sic_povm_free(povm: *mut SicPovmHandle) {
    if !povm.is_null() {
        drop(Box::from_raw(povm));
    }
}

/// Runs the dimension scan and returns the CSV
/// (`d,t0,t1,t_m,ratio,a_tm`) as a string.
#[no_mangle]
pub unsafe extern "C" fn sic_scan_csv(
    d_min: usize,
    d_max: usize,
    out: *mut *mut c_char,
) -> SicStatus {
    guarded(|| match sicpovm::bounds::dimension_scan(d_min, d_max) {
        Ok(table) => write_string(out, table.to_csv()),
        Err(e) => status_of(&e),
    })
}
