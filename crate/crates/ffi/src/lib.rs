//! C ABI for the hypcomp workbench: opaque handles, integer status codes,
//! out-parameters for every result.  The generated header lives in
//! `include/hypcomp.h`.

use std::cell::RefCell;
use std::ffi::CString;
use std::os::raw::c_char;

use hypcomp::eigen::{self, Direction, OrbitFamily};
use hypcomp::hardy::{self, BoundaryGrid, H2Function, WeightSpec, DEFAULT_OVERSAMPLE};
use hypcomp::moebius::{self, HyperbolicAutomorphism};
use hypcomp::Error;
use num_complex::Complex64;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    HcOk = 0,
    HcInvalidArgument = 1,
    HcDomainError = 2,
    HcDivergent = 3,
    HcNoConvergence = 4,
    HcInternal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|c| *c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> HcStatus {
    set_error(&err.to_string());
    match err {
        Error::InvalidMultiplier(_) | Error::Config(_) | Error::InsufficientData { .. } => {
            HcStatus::HcInvalidArgument
        }
        Error::Domain(_)
        | Error::DegenerateMap
        | Error::IdentityFixedPoints
        | Error::NotHyperbolic(_)
        | Error::InvalidMap(_)
        | Error::NotInHardySpace(_) => HcStatus::HcDomainError,
        Error::Divergent { .. } => HcStatus::HcDivergent,
        Error::NoConvergence { .. } => HcStatus::HcNoConvergence,
        Error::Io(_) | Error::Json(_) => HcStatus::HcInternal,
    }
}

/// Opaque handle to a validated hyperbolic disc automorphism.
pub struct HcAutomorphism {
    inner: HyperbolicAutomorphism,
}

/// Opaque handle to an H² function (finite Taylor-coefficient vector).
pub struct HcFunction {
    inner: H2Function,
}

/// Opaque handle to an orbit family f∘φ_n, |n| ≤ window.
pub struct HcOrbit {
    inner: OrbitFamily,
}

fn grid_for(budget: usize) -> Result<BoundaryGrid, Error> {
    BoundaryGrid::new((DEFAULT_OVERSAMPLE * budget).next_power_of_two())
}

/// Copies the message of the most recent error on this thread into `buf`
/// (NUL-terminated, truncated to `len`).  Returns the full message length.
///
/// # Safety
/// `buf` must point to `len` writable bytes (or be null, to query the length).
#[no_mangle]
pub unsafe extern "C" fn hc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            // always terminate
            *buf.add(n - 1) = 0;
        }
        bytes.len() - 1
    })
}

/// Builds the canonical hyperbolic automorphism φ(z) = (r+z)/(1+rz) with
/// multiplier `mu` > 1.
///
/// # Safety
/// `out` must be a valid pointer; on success it receives an owned handle
/// that must be released with `hc_automorphism_free`.
#[no_mangle]
pub unsafe extern "C" fn hc_automorphism_canonical(
    mu: f64,
    out: *mut *mut HcAutomorphism,
) -> HcStatus {
    if out.is_null() {
        set_error("null out pointer");
        return HcStatus::HcInvalidArgument;
    }
    match moebius::make_canonical(mu) {
        Ok(phi) => {
            *out = Box::into_raw(Box::new(HcAutomorphism { inner: phi }));
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Builds the hyperbolic automorphism with multiplier `mu` and fixed points
/// alpha (attractive) and beta (repulsive) on the unit circle.
///
/// # Safety
/// `out` must be a valid pointer; the handle must be freed by the caller.
#[no_mangle]
pub unsafe extern "C" fn hc_automorphism_conjugated(
    mu: f64,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    out: *mut *mut HcAutomorphism,
) -> HcStatus {
    if out.is_null() {
        set_error("null out pointer");
        return HcStatus::HcInvalidArgument;
    }
    let canonical = match moebius::make_canonical(mu) {
        Ok(phi) => phi,
        Err(e) => return status_of(&e),
    };
    match moebius::conjugate_automorphism(
        &canonical,
        Complex64::new(alpha_re, alpha_im),
        Complex64::new(beta_re, beta_im),
    ) {
        Ok(phi) => {
            *out = Box::into_raw(Box::new(HcAutomorphism { inner: phi }));
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Multiplier μ of the automorphism.
///
/// # Safety
/// `phi` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_automorphism_multiplier(
    phi: *const HcAutomorphism,
    out: *mut f64,
) -> HcStatus {
    if phi.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    *out = (*phi).inner.mu;
    HcStatus::HcOk
}

/// Image φ(z) of a point of the closed disc.
///
/// # Safety
/// `phi` must be a live handle; `out_re`/`out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_automorphism_apply(
    phi: *const HcAutomorphism,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HcStatus {
    if phi.is_null() || out_re.is_null() || out_im.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    match (*phi).inner.map.apply(Complex64::new(z_re, z_im)) {
        moebius::Point::Finite(w) => {
            *out_re = w.re;
            *out_im = w.im;
            HcStatus::HcOk
        }
        moebius::Point::Infinity => {
            set_error("image at infinity");
            HcStatus::HcDomainError
        }
    }
}

/// Releases an automorphism handle.
///
/// # Safety
/// `phi` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_automorphism_free(phi: *mut HcAutomorphism) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Weight function of the class (z−α)^γ(z−β)^δ H² attached to `phi`, with
/// boundary zeros pinned at the fixed points carrying positive exponents.
///
/// # Safety
/// `phi` must be a live handle; `out` receives an owned function handle.
#[no_mangle]
pub unsafe extern "C" fn hc_weight_function(
    phi: *const HcAutomorphism,
    gamma: f64,
    delta: f64,
    budget: usize,
    bump_order: usize,
    out: *mut *mut HcFunction,
) -> HcStatus {
    if phi.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    let build = || -> Result<H2Function, Error> {
        let spec = WeightSpec::new(gamma, delta)?;
        let grid = grid_for(budget)?;
        eigen::class_weight(&(*phi).inner, spec, budget, &grid, bump_order)
    };
    match build() {
        Ok(f) => {
            *out = Box::into_raw(Box::new(HcFunction { inner: f }));
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Explicit eigenfunction f_a = ((1+z)/(1−z))^a, |Re a| < 1/2.
///
/// # Safety
/// `out` receives an owned function handle.
#[no_mangle]
pub unsafe extern "C" fn hc_eigenfunction(
    a_re: f64,
    a_im: f64,
    budget: usize,
    out: *mut *mut HcFunction,
) -> HcStatus {
    if out.is_null() {
        set_error("null out pointer");
        return HcStatus::HcInvalidArgument;
    }
    match hardy::eigenfunction_fa(Complex64::new(a_re, a_im), budget) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(HcFunction { inner: f }));
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// ℓ² norm of the coefficient vector.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_function_norm(f: *const HcFunction, out: *mut f64) -> HcStatus {
    if f.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    *out = (*f).inner.norm();
    HcStatus::HcOk
}

/// Number of stored Taylor coefficients.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_function_budget(f: *const HcFunction, out: *mut usize) -> HcStatus {
    if f.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    *out = (*f).inner.budget();
    HcStatus::HcOk
}

/// Estimate of the truncated tail mass.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_function_tail_energy(f: *const HcFunction, out: *mut f64) -> HcStatus {
    if f.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    *out = (*f).inner.tail_energy();
    HcStatus::HcOk
}

/// Taylor coefficient c_k.
///
/// # Safety
/// `f` must be a live handle; `out_re`/`out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_function_coeff(
    f: *const HcFunction,
    index: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HcStatus {
    if f.is_null() || out_re.is_null() || out_im.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    let coeffs = (*f).inner.coeffs();
    if index >= coeffs.len() {
        set_error("coefficient index out of range");
        return HcStatus::HcInvalidArgument;
    }
    *out_re = coeffs[index].re;
    *out_im = coeffs[index].im;
    HcStatus::HcOk
}

/// Releases a function handle.
///
/// # Safety
/// `f` must be null or an owned handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_function_free(f: *mut HcFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Composition C_φ f = f∘φ at the function's own budget.
///
/// # Safety
/// `f` and `phi` must be live handles; `out` receives an owned handle.
#[no_mangle]
pub unsafe extern "C" fn hc_compose(
    f: *const HcFunction,
    phi: *const HcAutomorphism,
    out: *mut *mut HcFunction,
) -> HcStatus {
    if f.is_null() || phi.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    let run = || -> Result<H2Function, Error> {
        let grid = grid_for((*f).inner.budget())?;
        hardy::compose(&(*f).inner, &(*phi).inner.map, &grid)
    };
    match run() {
        Ok(g) => {
            *out = Box::into_raw(Box::new(HcFunction { inner: g }));
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// ∫ |f|² P_a dm, the Poisson quadratic form at a point |a| < 1.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_poisson_quadratic_form(
    f: *const HcFunction,
    a_re: f64,
    a_im: f64,
    out: *mut f64,
) -> HcStatus {
    if f.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    match hardy::poisson_quadratic_form(&(*f).inner, Complex64::new(a_re, a_im)) {
        Ok(q) => {
            *out = q;
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Orbit family f∘φ_n for |n| ≤ window.
///
/// # Safety
/// `f` and `phi` must be live handles; `out` receives an owned handle that
/// must be released with `hc_orbit_free`.
#[no_mangle]
pub unsafe extern "C" fn hc_orbit_new(
    f: *const HcFunction,
    phi: *const HcAutomorphism,
    window: usize,
    out: *mut *mut HcOrbit,
) -> HcStatus {
    if f.is_null() || phi.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    let run = || -> Result<OrbitFamily, Error> {
        let grid = grid_for((*f).inner.budget())?;
        eigen::orbit_norms(&(*f).inner, &(*phi).inner, window, &grid)
    };
    match run() {
        Ok(fam) => {
            *out = Box::into_raw(Box::new(HcOrbit { inner: fam }));
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// ‖f∘φ_n‖ for |n| ≤ window.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_orbit_norm(orbit: *const HcOrbit, n: i64, out: *mut f64) -> HcStatus {
    if orbit.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    let fam = &(*orbit).inner;
    if n.unsigned_abs() as usize > fam.window {
        set_error("orbit index outside the window");
        return HcStatus::HcInvalidArgument;
    }
    *out = fam.norm_at(n);
    HcStatus::HcOk
}

/// Fitted decay exponent ε̂ of log‖f∘φ_{±n}‖; direction > 0 fits the
/// forward orbit, otherwise the backward one.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_orbit_decay_fit(
    orbit: *const HcOrbit,
    direction: i32,
    skip: usize,
    out: *mut f64,
) -> HcStatus {
    if orbit.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    let dir = if direction > 0 {
        Direction::Forward
    } else {
        Direction::Backward
    };
    match eigen::decay_fit(&(*orbit).inner, dir, skip) {
        Ok(eps) => {
            *out = eps;
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Laurent eigenfunction report at λ: the relative residual
/// ‖C_φF_λ − λF_λ‖/‖F_λ‖, the norm of F_λ, and the exceptional flag.
///
/// # Safety
/// `orbit` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_laurent_residual(
    orbit: *const HcOrbit,
    lambda_re: f64,
    lambda_im: f64,
    out_residual: *mut f64,
    out_norm: *mut f64,
    out_exceptional: *mut i32,
) -> HcStatus {
    if orbit.is_null() || out_residual.is_null() || out_norm.is_null() || out_exceptional.is_null()
    {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    match eigen::laurent_eigenfunction(&(*orbit).inner, Complex64::new(lambda_re, lambda_im)) {
        Ok(report) => {
            *out_residual = report.relative_residual;
            *out_norm = report.eigenfunction_norm;
            *out_exceptional = report.exceptional as i32;
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Sufficient hypercyclicity criterion on the orbit family.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_hypercyclic_check(
    orbit: *const HcOrbit,
    tol: f64,
    out: *mut i32,
) -> HcStatus {
    if orbit.is_null() || out.is_null() {
        set_error("null pointer");
        return HcStatus::HcInvalidArgument;
    }
    match eigen::hypercyclic_check(&(*orbit).inner, tol) {
        Ok(rep) => {
            *out = rep.hypercyclic as i32;
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// Releases an orbit handle.
///
/// # Safety
/// `orbit` must be null or an owned handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_orbit_free(orbit: *mut HcOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Poisson kernel P_a(e^{iθ}) for |a| < 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_poisson_kernel(
    a_re: f64,
    a_im: f64,
    theta: f64,
    out: *mut f64,
) -> HcStatus {
    if out.is_null() {
        set_error("null out pointer");
        return HcStatus::HcInvalidArgument;
    }
    match hypcomp::poisson::kernel(
        Complex64::new(a_re, a_im),
        Complex64::from_polar(1.0, theta),
    ) {
        Ok(v) => {
            *out = v;
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

/// The pointwise bound 4(1−ρ)/((1−ρ)² + (θ/π)²).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_poisson_kernel_bound(rho: f64, theta: f64, out: *mut f64) -> HcStatus {
    if out.is_null() {
        set_error("null out pointer");
        return HcStatus::HcInvalidArgument;
    }
    match hypcomp::poisson::KernelPoint::new(rho, theta) {
        Ok(p) => {
            *out = hypcomp::poisson::kernel_bound(p);
            HcStatus::HcOk
        }
        Err(e) => status_of(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_roundtrip_through_the_c_api() {
        unsafe {
            let mut phi: *mut HcAutomorphism = std::ptr::null_mut();
            assert_eq!(hc_automorphism_canonical(3.0, &mut phi), HcStatus::HcOk);
            let mut mu = 0.0;
            assert_eq!(hc_automorphism_multiplier(phi, &mut mu), HcStatus::HcOk);
            assert!((mu - 3.0).abs() < 1e-12);
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(
                hc_automorphism_apply(phi, 0.0, 0.0, &mut re, &mut im),
                HcStatus::HcOk
            );
            assert!((re - 0.5).abs() < 1e-15 && im.abs() < 1e-15);
            hc_automorphism_free(phi);
        }
    }

    #[test]
    fn invalid_multiplier_reports_error() {
        unsafe {
            let mut phi: *mut HcAutomorphism = std::ptr::null_mut();
            assert_eq!(
                hc_automorphism_canonical(0.5, &mut phi),
                HcStatus::HcInvalidArgument
            );
            let mut buf = [0 as c_char; 128];
            let n = hc_last_error(buf.as_mut_ptr(), buf.len());
            assert!(n > 0);
        }
    }

    #[test]
    fn compose_and_quadratic_form_agree() {
        unsafe {
            let mut phi: *mut HcAutomorphism = std::ptr::null_mut();
            assert_eq!(hc_automorphism_canonical(2.0, &mut phi), HcStatus::HcOk);
            let mut f: *mut HcFunction = std::ptr::null_mut();
            assert_eq!(
                hc_weight_function(phi, 1.0, 1.0, 256, 32, &mut f),
                HcStatus::HcOk
            );
            let mut g: *mut HcFunction = std::ptr::null_mut();
            assert_eq!(hc_compose(f, phi, &mut g), HcStatus::HcOk);
            let mut lhs = 0.0;
            assert_eq!(hc_function_norm(g, &mut lhs), HcStatus::HcOk);
            // quadratic form at φ(0) = 1/3
            let mut q = 0.0;
            assert_eq!(
                hc_poisson_quadratic_form(f, 1.0 / 3.0, 0.0, &mut q),
                HcStatus::HcOk
            );
            assert!((lhs * lhs - q).abs() < 1e-8, "{} vs {q}", lhs * lhs);
            hc_function_free(g);
            hc_function_free(f);
            hc_automorphism_free(phi);
        }
    }

    #[test]
    fn orbit_and_laurent_through_the_c_api() {
        unsafe {
            let mut phi: *mut HcAutomorphism = std::ptr::null_mut();
            assert_eq!(hc_automorphism_canonical(2.0, &mut phi), HcStatus::HcOk);
            let mut f: *mut HcFunction = std::ptr::null_mut();
            assert_eq!(
                hc_weight_function(phi, 0.75, 0.75, 2048, 64, &mut f),
                HcStatus::HcOk
            );
            let mut orbit: *mut HcOrbit = std::ptr::null_mut();
            assert_eq!(hc_orbit_new(f, phi, 16, &mut orbit), HcStatus::HcOk);
            let mut n0 = 0.0;
            assert_eq!(hc_orbit_norm(orbit, 0, &mut n0), HcStatus::HcOk);
            assert!(n0 > 1.0);
            let mut eps = 0.0;
            assert_eq!(hc_orbit_decay_fit(orbit, 1, 2, &mut eps), HcStatus::HcOk);
            assert!(eps > 0.2, "{eps}");
            let (mut resid, mut norm, mut exc) = (0.0, 0.0, 0);
            assert_eq!(
                hc_laurent_residual(orbit, 1.02, 0.05, &mut resid, &mut norm, &mut exc),
                HcStatus::HcOk
            );
            assert!(resid.is_finite() && norm > 0.0 && exc == 0);
            // λ far outside the annulus diverges
            assert_eq!(
                hc_laurent_residual(orbit, 2.4, 0.0, &mut resid, &mut norm, &mut exc),
                HcStatus::HcDivergent
            );
            hc_orbit_free(orbit);
            hc_function_free(f);
            hc_automorphism_free(phi);
        }
    }

    #[test]
    fn eigenfunction_membership_boundary() {
        unsafe {
            let mut f: *mut HcFunction = std::ptr::null_mut();
            assert_eq!(
                hc_eigenfunction(0.6, 0.0, 256, &mut f),
                HcStatus::HcDomainError
            );
            assert_eq!(hc_eigenfunction(0.2, 0.4, 256, &mut f), HcStatus::HcOk);
            let mut budget = 0usize;
            assert_eq!(hc_function_budget(f, &mut budget), HcStatus::HcOk);
            assert_eq!(budget, 256);
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(hc_function_coeff(f, 1, &mut re, &mut im), HcStatus::HcOk);
            assert!((re - 0.4).abs() < 1e-15 && (im - 0.8).abs() < 1e-15);
            hc_function_free(f);
        }
    }
}
