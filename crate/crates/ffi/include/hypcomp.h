#ifndef HYPCOMP_H
#define HYPCOMP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum HcStatus {
  HcOk = 0,
  HcInvalidArgument = 1,
  HcDomainError = 2,
  HcDivergent = 3,
  HcNoConvergence = 4,
  HcInternal = 5,
} HcStatus;

/**
 * Opaque handle to a validated hyperbolic disc automorphism.
 */
typedef struct HcAutomorphism HcAutomorphism;

/**
 * Opaque handle to an H² function (finite Taylor-coefficient vector).
 */
typedef struct HcFunction HcFunction;

/**
 * Opaque handle to an orbit family f∘φ_n, |n| ≤ window.
 */
typedef struct HcOrbit HcOrbit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the most recent error on this thread into `buf`
 * (NUL-terminated, truncated to `len`).  Returns the full message length.
 *
 * # Safety
 * `buf` must point to `len` writable bytes (or be null, to query the length).
 */
uintptr_t hc_last_error(char *buf, uintptr_t len);

/**
 * Builds the canonical hyperbolic automorphism φ(z) = (r+z)/(1+rz) with
 * multiplier `mu` > 1.
 *
 * # Safety
 * `out` must be a valid pointer; on success it receives an owned handle
 * that must be released with `hc_automorphism_free`.
 */
enum HcStatus hc_automorphism_canonical(double mu, struct HcAutomorphism **out);

/**
 * Builds the hyperbolic automorphism with multiplier `mu` and fixed points
 * alpha (attractive) and beta (repulsive) on the unit circle.
 *
 * # Safety
 * `out` must be a valid pointer; the handle must be freed by the caller.
 */
enum HcStatus hc_automorphism_conjugated(double mu,
                                         double alpha_re,
                                         double alpha_im,
                                         double beta_re,
                                         double beta_im,
                                         struct HcAutomorphism **out);

/**
 * Multiplier μ of the automorphism.
 *
 * # Safety
 * `phi` must be a live handle from this library; `out` must be writable.
 */
enum HcStatus hc_automorphism_multiplier(const struct HcAutomorphism *phi, double *out);

/**
 * Image φ(z) of a point of the closed disc.
 *
 * # Safety
 * `phi` must be a live handle; `out_re`/`out_im` must be writable.
 */
enum HcStatus hc_automorphism_apply(const struct HcAutomorphism *phi,
                                    double z_re,
                                    double z_im,
                                    double *out_re,
                                    double *out_im);

/**
 * Releases an automorphism handle.
 *
 * # Safety
 * `phi` must be null or a handle returned by this library, not yet freed.
 */
void hc_automorphism_free(struct HcAutomorphism *phi);

/**
 * Weight function of the class (z−α)^γ(z−β)^δ H² attached to `phi`, with
 * boundary zeros pinned at the fixed points carrying positive exponents.
 *
 * # Safety
 * `phi` must be a live handle; `out` receives an owned function handle.
 */
enum HcStatus hc_weight_function(const struct HcAutomorphism *phi,
                                 double gamma,
                                 double delta,
                                 uintptr_t budget,
                                 uintptr_t bump_order,
                                 struct HcFunction **out);

/**
 * Explicit eigenfunction f_a = ((1+z)/(1−z))^a, |Re a| < 1/2.
 *
 * # Safety
 * `out` receives an owned function handle.
 */
enum HcStatus hc_eigenfunction(double a_re, double a_im, uintptr_t budget, struct HcFunction **out);

/**
 * ℓ² norm of the coefficient vector.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_function_norm(const struct HcFunction *f, double *out);

/**
 * Number of stored Taylor coefficients.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_function_budget(const struct HcFunction *f, uintptr_t *out);

/**
 * Estimate of the truncated tail mass.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_function_tail_energy(const struct HcFunction *f, double *out);

/**
 * Taylor coefficient c_k.
 *
 * # Safety
 * `f` must be a live handle; `out_re`/`out_im` must be writable.
 */
enum HcStatus hc_function_coeff(const struct HcFunction *f,
                                uintptr_t index,
                                double *out_re,
                                double *out_im);

/**
 * Releases a function handle.
 *
 * # Safety
 * `f` must be null or an owned handle from this library, not yet freed.
 */
void hc_function_free(struct HcFunction *f);

/**
 * Composition C_φ f = f∘φ at the function's own budget.
 *
 * # Safety
 * `f` and `phi` must be live handles; `out` receives an owned handle.
 */
enum HcStatus hc_compose(const struct HcFunction *f,
                         const struct HcAutomorphism *phi,
                         struct HcFunction **out);

/**
 * ∫ |f|² P_a dm, the Poisson quadratic form at a point |a| < 1.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_poisson_quadratic_form(const struct HcFunction *f,
                                        double a_re,
                                        double a_im,
                                        double *out);

/**
 * Orbit family f∘φ_n for |n| ≤ window.
 *
 * # Safety
 * `f` and `phi` must be live handles; `out` receives an owned handle that
 * must be released with `hc_orbit_free`.
 */
enum HcStatus hc_orbit_new(const struct HcFunction *f,
                           const struct HcAutomorphism *phi,
                           uintptr_t window,
                           struct HcOrbit **out);

/**
 * ‖f∘φ_n‖ for |n| ≤ window.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_orbit_norm(const struct HcOrbit *orbit, int64_t n, double *out);

/**
 * Fitted decay exponent ε̂ of log‖f∘φ_{±n}‖; direction > 0 fits the
 * forward orbit, otherwise the backward one.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_orbit_decay_fit(const struct HcOrbit *orbit,
                                 int32_t direction,
                                 uintptr_t skip,
                                 double *out);

/**
 * Laurent eigenfunction report at λ: the relative residual
 * ‖C_φF_λ − λF_λ‖/‖F_λ‖, the norm of F_λ, and the exceptional flag.
 *
 * # Safety
 * `orbit` must be a live handle; out-pointers must be writable.
 */
enum HcStatus hc_laurent_residual(const struct HcOrbit *orbit,
                                  double lambda_re,
                                  double lambda_im,
                                  double *out_residual,
                                  double *out_norm,
                                  int32_t *out_exceptional);

/**
 * Sufficient hypercyclicity criterion on the orbit family.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_hypercyclic_check(const struct HcOrbit *orbit, double tol, int32_t *out);

/**
 * Releases an orbit handle.
 *
 * # Safety
 * `orbit` must be null or an owned handle from this library, not yet freed.
 */
void hc_orbit_free(struct HcOrbit *orbit);

/**
 * Poisson kernel P_a(e^{iθ}) for |a| < 1.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_poisson_kernel(double a_re, double a_im, double theta, double *out);

/**
 * The pointwise bound 4(1−ρ)/((1−ρ)² + (θ/π)²).
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_poisson_kernel_bound(double rho, double theta, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HYPCOMP_H */
