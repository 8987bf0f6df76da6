//! Orbit norm sequences ‖f∘φ_n‖, H²-valued Laurent-series eigenfunctions
//! Σ λ^{-n} (f∘φ_n), the circle-indexed Fourier construction, decay-rate
//! fits, square-summability and the hypercyclicity criterion.

use num_complex::Complex64;

use crate::error::{Error, SeriesSide};
use crate::hardy::{self, BoundaryGrid, H2Function};
use crate::moebius::{iterate, HyperbolicAutomorphism};
use crate::Result;

/// Maps whose image of 0 is numerically on the circle are degenerate at
/// f64 precision; the corresponding orbit member is recorded as zero.
const DEGENERATE_RADIUS: f64 = 1e-13;
/// Exceptional-λ threshold: ‖F_λ‖ below this multiple of Σ|λ|^{-n}‖f∘φ_n‖.
const EXCEPTIONAL_REL: f64 = 1e-10;
/// A geometric term ratio this far above 1 counts as divergent.  Ratios at
/// exactly 1 (a constant function at |λ| = 1) still yield a partial sum.
const DIVERGENCE_MARGIN: f64 = 1e-6;

/// Why an orbit member carries a warning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WarningKind {
    /// The iterate map collapsed to the fixed point at f64 precision; the
    /// member was recorded as the zero function.
    Degenerate,
    /// The composition's tail energy exceeded the resolved threshold; the
    /// member is kept but its norm under-reports the true orbit norm.
    Unresolved,
}

/// A per-member warning record.
#[derive(Debug, Clone)]
pub struct MemberWarning {
    pub n: i64,
    pub kind: WarningKind,
    pub detail: String,
}

/// The orbit f∘φ_n over a window n ∈ [−M, M], with norms cross-checked
/// against the Poisson quadratic form at φ_n(0).
#[derive(Debug, Clone)]
pub struct OrbitFamily {
    pub f: H2Function,
    pub phi: HyperbolicAutomorphism,
    pub window: usize,
    members: Vec<H2Function>,
    norms: Vec<f64>,
    /// |‖f∘φ_n‖² − Q(f, φ_n(0))| per member (same indexing as members).
    discrepancies: Vec<f64>,
    warnings: Vec<MemberWarning>,
    grid: BoundaryGrid,
}

impl OrbitFamily {
    pub fn member(&self, n: i64) -> &H2Function {
        &self.members[(n + self.window as i64) as usize]
    }

    pub fn norm_at(&self, n: i64) -> f64 {
        self.norms[(n + self.window as i64) as usize]
    }

    pub fn discrepancy_at(&self, n: i64) -> f64 {
        self.discrepancies[(n + self.window as i64) as usize]
    }

    pub fn warnings(&self) -> &[MemberWarning] {
        &self.warnings
    }

    pub fn is_degenerate(&self, n: i64) -> bool {
        self.warnings
            .iter()
            .any(|w| w.n == n && w.kind == WarningKind::Degenerate)
    }

    pub fn grid(&self) -> &BoundaryGrid {
        &self.grid
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let w = self.window as i64;
        -w..=w
    }
}

/// Builds the weight function of the class (z−α)^γ(z−β)^δ H² attached to an
/// automorphism: the canonical-weight coefficients, transported by the
/// conjugator when φ is not canonical, with exact boundary zeros pinned at
/// the fixed points whose exponent is positive (a plain truncation does not
/// vanish there, which would pull it out of the class).
pub fn class_weight(
    phi: &HyperbolicAutomorphism,
    w: crate::hardy::WeightSpec,
    budget: usize,
    grid: &BoundaryGrid,
    bump_order: usize,
) -> Result<H2Function> {
    let base = hardy::weight_function(w, budget)?;
    let f = if phi.is_canonical() {
        base
    } else {
        let psi_inv = crate::moebius::conjugator(phi.alpha, phi.beta)?.inverse();
        hardy::compose(&base, &psi_inv, grid)?
    };
    let mut points = Vec::new();
    if w.gamma > 0.0 {
        points.push(phi.alpha);
    }
    if w.delta > 0.0 {
        points.push(phi.beta);
    }
    if points.is_empty() {
        Ok(f)
    } else {
        hardy::force_boundary_zeros(&f, &points, bump_order)
    }
}

/// Computes f∘φ_n for |n| ≤ window via compose with the exact n-th iterate
/// map, cross-checking every norm against poisson_quadratic_form(f, φ_n(0)).
pub fn orbit_norms(
    f: &H2Function,
    phi: &HyperbolicAutomorphism,
    window: usize,
    grid: &BoundaryGrid,
) -> Result<OrbitFamily> {
    if window < 1 {
        return Err(Error::Config("orbit window must be ≥ 1".into()));
    }
    let w = window as i64;
    let mut members = Vec::with_capacity(2 * window + 1);
    let mut norms = Vec::with_capacity(2 * window + 1);
    let mut discrepancies = Vec::with_capacity(2 * window + 1);
    let mut warnings = Vec::new();
    for n in -w..=w {
        if n == 0 {
            // members[0] = f exactly
            let q = hardy::poisson_quadratic_form(f, Complex64::new(0.0, 0.0))?;
            members.push(f.clone());
            norms.push(f.norm());
            discrepancies.push((f.norm_sq() - q).abs());
            continue;
        }
        let map = iterate(phi, n);
        let a_n = match map.apply(Complex64::new(0.0, 0.0)) {
            crate::moebius::Point::Finite(a) => a,
            crate::moebius::Point::Infinity => {
                return Err(Error::Domain("iterate sends 0 to ∞".into()))
            }
        };
        if 1.0 - a_n.norm() < DEGENERATE_RADIUS {
            // the iterate has collapsed to the fixed point at f64 precision
            warnings.push(MemberWarning {
                n,
                kind: WarningKind::Degenerate,
                detail: format!("1-|φ_n(0)| = {:.3e}", 1.0 - a_n.norm()),
            });
            members.push(H2Function::constant(Complex64::new(0.0, 0.0), f.budget()));
            norms.push(0.0);
            discrepancies.push(f64::NAN);
            continue;
        }
        let member = hardy::compose(f, &map, grid)?;
        if !member.is_resolved() {
            warnings.push(MemberWarning {
                n,
                kind: WarningKind::Unresolved,
                detail: format!(
                    "tail/norm² = {:.3e}",
                    member.tail_energy() / member.norm_sq().max(1e-300)
                ),
            });
        }
        let q = hardy::poisson_quadratic_form(f, a_n)?;
        norms.push(member.norm());
        discrepancies.push((member.norm_sq() - q).abs());
        members.push(member);
    }
    Ok(OrbitFamily {
        f: f.clone(),
        phi: *phi,
        window,
        members,
        norms,
        discrepancies,
        warnings,
        grid: *grid,
    })
}

/// Orbit direction of a decay fit or a divergence report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Least-squares slope of log‖f∘φ_{±n}‖ against n, divided by −log μ.
///
/// A point is usable when its member is neither degenerate nor effectively
/// zero and its truncation loss (the recorded quadratic-form discrepancy)
/// stays below the mass the budget retained.  At least 10
/// usable points after the skipped transients are required.
pub fn decay_fit(family: &OrbitFamily, direction: Direction, skip: usize) -> Result<f64> {
    let w = family.window as i64;
    let zero_scale = family.f.norm();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in (skip as i64 + 1)..=w {
        let idx = match direction {
            Direction::Forward => n,
            Direction::Backward => -n,
        };
        let norm = family.norm_at(idx);
        let disc = family.discrepancy_at(idx);
        if family.is_degenerate(idx)
            || norm <= hardy::ZERO_REL_NORM * zero_scale
            || !(disc <= norm * norm)
        {
            continue;
        }
        xs.push(n as f64);
        ys.push(norm.ln());
    }
    if xs.len() < 10 {
        return Err(Error::InsufficientData {
            needed: 10,
            got: xs.len(),
        });
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys.iter()).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(-slope / family.phi.mu.ln())
}

/// Per-λ record of the Laurent eigenfunction construction.
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub lambda: Complex64,
    /// Truncation window actually summed.
    pub truncation: usize,
    pub eigenfunction_norm: f64,
    pub relative_residual: f64,
    pub exceptional: bool,
    /// Geometric estimate of the dropped Laurent tails, relative to the
    /// term-sum scale; compare against the tolerance the window was chosen
    /// for.
    pub tail_estimate: f64,
}

/// F_λ = Σ_{|n|≤M} λ^{-n} f∘φ_n with the residual ‖C_φF_λ − λF_λ‖/‖F_λ‖.
///
/// Convergence is screened with the fitted decay exponents: the forward
/// terms shrink like (|λ| μ^{ε̂})^{-n} and the backward ones like
/// (|λ| μ^{-δ̂})^{n}; a ratio beyond 1 is reported as divergence naming the
/// side.  The report carries a geometric estimate of the dropped tails so
/// callers can judge whether the family window met their tolerance.
pub fn laurent_eigenfunction(family: &OrbitFamily, lambda: Complex64) -> Result<EigenReport> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("λ must be nonzero".into()));
    }
    let eps_hat = decay_fit(family, Direction::Forward, default_skip(family))?;
    let delta_hat = decay_fit(family, Direction::Backward, default_skip(family))?;
    let mu = family.phi.mu;
    let forward_ratio = mu.powf(-eps_hat) / lambda.norm();
    let backward_ratio = lambda.norm() * mu.powf(-delta_hat);
    if forward_ratio >= 1.0 + DIVERGENCE_MARGIN {
        return Err(Error::Divergent {
            side: SeriesSide::Forward,
            ratio: forward_ratio,
        });
    }
    if backward_ratio >= 1.0 + DIVERGENCE_MARGIN {
        return Err(Error::Divergent {
            side: SeriesSide::Backward,
            ratio: backward_ratio,
        });
    }
    let w = family.window as i64;
    let budget = family.f.budget();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); budget];
    let mut scale = 0.0f64; // Σ |λ|^{-n} ‖f∘φ_n‖
    for n in -w..=w {
        let weight = lambda.powi(-(n as i32));
        scale += weight.norm() * family.norm_at(n);
        for (c, m) in coeffs.iter_mut().zip(family.member(n).coeffs()) {
            *c += weight * m;
        }
    }
    let f_lambda = H2Function::from_coeffs(coeffs);
    let norm = f_lambda.norm();
    let exceptional = norm < EXCEPTIONAL_REL * scale;
    let relative_residual = if exceptional {
        f64::INFINITY
    } else {
        let image = hardy::compose(&f_lambda, &family.phi.map, &family.grid)?;
        image.add(&f_lambda.scale(-lambda)).norm() / norm
    };
    // geometric tails beyond the window, relative to the term-sum scale
    let lam_w = lambda.norm().powi(-(w as i32));
    let tail_fwd = if forward_ratio < 1.0 {
        lam_w * family.norm_at(w) * forward_ratio / (1.0 - forward_ratio)
    } else {
        f64::INFINITY
    };
    let tail_bwd = if backward_ratio < 1.0 {
        family.norm_at(-w) / lam_w * backward_ratio / (1.0 - backward_ratio)
    } else {
        f64::INFINITY
    };
    let tail_estimate = (tail_fwd + tail_bwd) / scale.max(1e-300);
    Ok(EigenReport {
        lambda,
        truncation: family.window,
        eigenfunction_norm: norm,
        relative_residual,
        exceptional,
        tail_estimate,
    })
}

fn default_skip(family: &OrbitFamily) -> usize {
    (family.window / 8).clamp(2, 5)
}

/// Open annulus A(R₁, R₂) centered at the origin.
#[derive(Debug, Clone, Copy)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
}

impl Annulus {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && inner < outer && outer.is_finite()) {
            return Err(Error::Config(format!(
                "annulus requires 0 < R1 < R2 < ∞, got ({inner}, {outer})"
            )));
        }
        Ok(Annulus { inner, outer })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        r > self.inner && r < self.outer
    }
}

/// Per-point outcome of a λ-scan.
#[derive(Debug, Clone)]
pub enum ScanOutcome {
    Report(EigenReport),
    Divergent { side: SeriesSide, ratio: f64 },
}

/// One scanned grid point.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub lambda: Complex64,
    pub outcome: ScanOutcome,
}

/// Aggregate counts of a scan at a given residual tolerance.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanSummary {
    pub total: usize,
    pub residual_pass: usize,
    pub residual_high: usize,
    pub exceptional: usize,
    pub divergent: usize,
}

/// Scans a radial×angular λ-grid over the annulus.  Radii are linearly
/// spaced in [R₁, R₂] and angles uniform in [0, 2π); points are visited in
/// radial-major order so reports aggregate deterministically.
pub fn eigen_scan(
    family: &OrbitFamily,
    annulus: Annulus,
    radial: usize,
    angular: usize,
    tol: f64,
) -> Result<(Vec<ScanPoint>, ScanSummary)> {
    if radial == 0 || angular == 0 {
        return Err(Error::Config("scan grid must be nonempty".into()));
    }
    let mut points = Vec::with_capacity(radial * angular);
    let mut summary = ScanSummary::default();
    for i in 0..radial {
        let t = if radial == 1 {
            0.5
        } else {
            i as f64 / (radial - 1) as f64
        };
        let r = annulus.inner + t * (annulus.outer - annulus.inner);
        for j in 0..angular {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / angular as f64;
            let lambda = Complex64::from_polar(r, theta);
            summary.total += 1;
            let outcome = match laurent_eigenfunction(family, lambda) {
                Ok(report) => {
                    if report.exceptional {
                        summary.exceptional += 1;
                    } else if report.relative_residual <= tol {
                        summary.residual_pass += 1;
                    } else {
                        summary.residual_high += 1;
                    }
                    ScanOutcome::Report(report)
                }
                Err(Error::Divergent { side, ratio }) => {
                    summary.divergent += 1;
                    ScanOutcome::Divergent { side, ratio }
                }
                Err(e) => return Err(e),
            };
            points.push(ScanPoint { lambda, outcome });
        }
    }
    Ok((points, summary))
}

/// Result of the circle-indexed partial sum F_M(ω) = Σ_{|n|≤M} (f∘φ_n) ω^{-n}.
#[derive(Debug, Clone)]
pub struct CircleEigenPartial {
    pub f: H2Function,
    /// ‖C_φF_M − ωF_M + ω^{M+1} f∘φ_{-M} − ω^{-M} f∘φ_{M+1}‖ / ‖F_M‖: the
    /// exact telescoping identity, so this sits at the level of the
    /// composition truncation error regardless of convergence in M.
    pub identity_residual: f64,
    /// Plain eigen-residual ‖C_φF_M − ωF_M‖/‖F_M‖ (small only when the
    /// Fourier series converges at this ω).
    pub eigen_residual: f64,
}

/// Builds F_M(ω) and checks the telescoping identity for C_φ F_M.
/// Requires |ω| = 1 and a family window of at least M+1.
pub fn circle_eigen_partial(
    family: &OrbitFamily,
    omega: Complex64,
    m: usize,
) -> Result<CircleEigenPartial> {
    if (omega.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "ω must be unimodular, got |ω| = {}",
            omega.norm()
        )));
    }
    if family.window < m + 1 {
        return Err(Error::Config(format!(
            "window {} too small for M = {m} (need M+1 members)",
            family.window
        )));
    }
    let budget = family.f.budget();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); budget];
    for n in -(m as i64)..=(m as i64) {
        let weight = omega.powi(-(n as i32));
        for (c, v) in coeffs.iter_mut().zip(family.member(n).coeffs()) {
            *c += weight * v;
        }
    }
    let f_m = H2Function::from_coeffs(coeffs);
    let norm = f_m.norm();
    let image = hardy::compose(&f_m, &family.phi.map, &family.grid)?;
    let eigen_residual = image.add(&f_m.scale(-omega)).norm() / norm;
    let corr_back = family.member(-(m as i64)).scale(omega.powi(m as i32 + 1));
    let corr_fwd = family.member(m as i64 + 1).scale(-omega.powi(-(m as i32)));
    let identity_vec = image.add(&f_m.scale(-omega)).add(&corr_back).add(&corr_fwd);
    Ok(CircleEigenPartial {
        f: f_m,
        identity_residual: identity_vec.norm() / norm,
        eigen_residual,
    })
}

/// Partial sum of Σ ‖f∘φ_n‖² with the contribution of |n| ∈ (M/2, M] as a
/// Cauchy-gap indicator of summability.
pub fn tail_square_sum(family: &OrbitFamily) -> Result<(f64, f64)> {
    if family.window < 20 {
        return Err(Error::Config(
            "tail_square_sum needs a window of at least 20".into(),
        ));
    }
    let w = family.window as i64;
    let mut partial = 0.0;
    let mut gap = 0.0;
    for n in family.indices() {
        let sq = family.norm_at(n).powi(2);
        partial += sq;
        if n.unsigned_abs() as i64 > w / 2 {
            gap += sq;
        }
    }
    Ok((partial, gap))
}

/// Witness data for a failed hypercyclicity check.
#[derive(Debug, Clone)]
pub struct HypercyclicReport {
    pub hypercyclic: bool,
    /// First (k, direction) whose orbit norms never fall below tol inside
    /// the window, with the minimum norm achieved.
    pub witness: Option<(i64, Direction, f64)>,
}

/// Sufficient criterion: the positive powers of C_φ and its inverse tend to
/// zero pointwise on the dense span of {f∘φ_k}.  Checked on every |k| ≤
/// window/2 by asking the norms ‖f∘φ_{k±n}‖ to fall below tol within the
/// window.
pub fn hypercyclic_check(family: &OrbitFamily, tol: f64) -> Result<HypercyclicReport> {
    if family.window < 20 {
        return Err(Error::Config(
            "hypercyclic_check needs a window of at least 20".into(),
        ));
    }
    let w = family.window as i64;
    let half = w / 2;
    for k in -half..=half {
        for direction in [Direction::Forward, Direction::Backward] {
            let mut min_norm = f64::INFINITY;
            let mut reached = false;
            let mut n = 1;
            loop {
                let idx = match direction {
                    Direction::Forward => k + n,
                    Direction::Backward => k - n,
                };
                if idx.abs() > w {
                    break;
                }
                let norm = family.norm_at(idx);
                min_norm = min_norm.min(norm);
                if norm < tol {
                    reached = true;
                    break;
                }
                n += 1;
            }
            if !reached {
                return Ok(HypercyclicReport {
                    hypercyclic: false,
                    witness: Some((k, direction, min_norm)),
                });
            }
        }
    }
    Ok(HypercyclicReport {
        hypercyclic: true,
        witness: None,
    })
}
