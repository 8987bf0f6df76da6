//! Finite sections (matrix compressions) of C_φ: operator-norm estimates
//! against the √μ bound and residual maps of the explicit eigenfunctions
//! over the spectral annulus.
//!
//! Eigenvalue clouds of the raw compression are deliberately not used as
//! spectrum evidence; residuals of explicit eigenfunctions are.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::hardy::{self, BoundaryGrid};
use crate::moebius::{conjugator, HyperbolicAutomorphism};
use crate::Result;

/// N×N compression of C_φ: column k holds the first N Taylor coefficients
/// of φ^k (the image of the monomial z^k), with per-column aliasing energy.
#[derive(Debug, Clone)]
pub struct CompressionMatrix {
    pub dim: usize,
    /// Column-major storage.
    pub cols: Vec<Vec<Complex64>>,
    /// Energy of the DFT coefficients discarded for each column.
    pub col_tail: Vec<f64>,
}

/// Builds the compression by running boundary powers of φ through the DFT.
/// Requires grid size ≥ 4N; for large multipliers the caller should scale
/// the grid with μ so the pushed-up spectral band stays resolved.
pub fn truncated_matrix(
    phi: &HyperbolicAutomorphism,
    n: usize,
    grid: &BoundaryGrid,
) -> Result<CompressionMatrix> {
    if grid.size() < 4 * n {
        return Err(Error::Config(format!(
            "grid size {} is below 4× the section dimension {n}",
            grid.size()
        )));
    }
    let m = grid.size();
    let mut boundary = Vec::with_capacity(m);
    for j in 0..m {
        match phi.map.apply(grid.node(j)) {
            crate::moebius::Point::Finite(w) => boundary.push(w),
            crate::moebius::Point::Infinity => {
                return Err(Error::Domain("pole on the unit circle".into()))
            }
        }
    }
    let mut cols = Vec::with_capacity(n);
    let mut col_tail = Vec::with_capacity(n);
    let mut power = vec![Complex64::new(1.0, 0.0); m];
    for _k in 0..n {
        let mut buf = power.clone();
        fft_forward_local(&mut buf);
        let scale = 1.0 / m as f64;
        let col: Vec<Complex64> = buf[..n].iter().map(|c| c * scale).collect();
        let tail: f64 = buf[n..].iter().map(|c| (c * scale).norm_sqr()).sum();
        cols.push(col);
        col_tail.push(tail);
        for (p, w) in power.iter_mut().zip(boundary.iter()) {
            *p *= w;
        }
    }
    Ok(CompressionMatrix {
        dim: n,
        cols,
        col_tail,
    })
}

fn fft_forward_local(buf: &mut [Complex64]) {
    use once_cell::sync::Lazy;
    use std::sync::Mutex;
    static PLANNER: Lazy<Mutex<rustfft::FftPlanner<f64>>> =
        Lazy::new(|| Mutex::new(rustfft::FftPlanner::new()));
    let fft = PLANNER.lock().unwrap().plan_fft_forward(buf.len());
    fft.process(buf);
}

impl CompressionMatrix {
    /// y = A x.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (k, col) in self.cols.iter().enumerate() {
            let xk = x[k];
            if xk.norm_sqr() == 0.0 {
                continue;
            }
            for (yi, ci) in y.iter_mut().zip(col.iter()) {
                *yi += ci * xk;
            }
        }
        y
    }

    /// y = A* x.
    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.cols
            .par_iter()
            .map(|col| {
                col.iter()
                    .zip(x.iter())
                    .map(|(c, v)| c.conj() * v)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Submatrix of the first `k` columns.
    pub fn leading_columns(&self, k: usize) -> CompressionMatrix {
        CompressionMatrix {
            dim: self.dim,
            cols: self.cols[..k].to_vec(),
            col_tail: self.col_tail[..k].to_vec(),
        }
    }
}

fn norm_of(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value by power iteration on A*A, with relative
/// convergence 1e−10 on the Rayleigh estimate.  An optional warm-start
/// vector (padded with zeros) makes nested-section sweeps monotone: the
/// Rayleigh quotient never decreases along the iteration.
pub fn operator_norm_estimate_from(
    m: &CompressionMatrix,
    warm_start: Option<&[Complex64]>,
) -> Result<(f64, Vec<Complex64>)> {
    let ncols = m.cols.len();
    let mut v: Vec<Complex64> = match warm_start {
        Some(w) => {
            let mut v = vec![Complex64::new(0.0, 0.0); ncols];
            for (dst, src) in v.iter_mut().zip(w.iter()) {
                *dst = *src;
            }
            v
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..ncols)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect()
        }
    };
    let nv = norm_of(&v);
    if nv == 0.0 {
        return Err(Error::Domain("zero start vector".into()));
    }
    for c in v.iter_mut() {
        *c /= nv;
    }
    let mut sigma = 0.0f64;
    let max_iter = 50_000;
    for it in 1..=max_iter {
        let av = m.apply(&v);
        let sigma_new = norm_of(&av); // ‖Av‖ for unit v: Rayleigh estimate of σ
        let mut w = m.apply_adjoint(&av);
        let nw = norm_of(&w);
        if nw == 0.0 {
            return Ok((0.0, v));
        }
        for c in w.iter_mut() {
            *c /= nw;
        }
        v = w;
        if it > 1 && (sigma_new - sigma).abs() <= 1e-10 * sigma_new.max(1e-300) {
            return Ok((sigma_new, v));
        }
        sigma = sigma_new;
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
    })
}

/// Largest singular value, cold start.
pub fn operator_norm_estimate(m: &CompressionMatrix) -> Result<f64> {
    operator_norm_estimate_from(m, None).map(|(s, _)| s)
}

/// Smallest singular value of the first `k` columns, via power iteration on
/// c·I − G where G is the k×k Gram matrix of the columns.
pub fn smallest_singular_value(m: &CompressionMatrix, k: usize) -> Result<f64> {
    let sub = m.leading_columns(k);
    // Gram matrix
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for i in 0..k {
        for j in 0..=i {
            let g: Complex64 = sub.cols[i]
                .iter()
                .zip(sub.cols[j].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            gram[i][j] = g.conj();
            gram[j][i] = g;
        }
    }
    // λ_max(G) first, then power-iterate on shift·I − G
    let apply_gram = |x: &[Complex64]| -> Vec<Complex64> {
        (0..k)
            .map(|i| {
                gram[i]
                    .iter()
                    .zip(x.iter())
                    .map(|(g, v)| g * v)
                    .sum::<Complex64>()
            })
            .collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
    let mut v: Vec<Complex64> = (0..k)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let normalize = |v: &mut Vec<Complex64>| {
        let n = norm_of(v);
        for c in v.iter_mut() {
            *c /= n;
        }
    };
    normalize(&mut v);
    let mut lam_max = 0.0;
    for _ in 0..4000 {
        let mut w = apply_gram(&v);
        let rayleigh: Complex64 = w.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum();
        let new = rayleigh.re;
        let done = (new - lam_max).abs() <= 1e-12 * new.max(1e-300);
        lam_max = new;
        normalize(&mut w);
        v = w;
        if done {
            break;
        }
    }
    let shift = lam_max * 1.0001 + 1e-12;
    let mut v: Vec<Complex64> = (0..k)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    normalize(&mut v);
    let mut lam = 0.0;
    for _ in 0..20_000 {
        let gx = apply_gram(&v);
        let mut w: Vec<Complex64> = v
            .iter()
            .zip(gx.iter())
            .map(|(vi, gi)| shift * vi - gi)
            .collect();
        let rayleigh: Complex64 = w.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum();
        let new = shift - rayleigh.re; // eigenvalue of G
        let done = (new - lam).abs() <= 1e-12 * shift;
        lam = new;
        normalize(&mut w);
        v = w;
        if done {
            break;
        }
    }
    Ok(lam.max(0.0).sqrt())
}

/// Status of a point in the residual map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnulusStatus {
    Inside,
    Boundary,
    Outside,
}

impl std::fmt::Display for AnnulusStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnnulusStatus::Inside => write!(f, "inside"),
            AnnulusStatus::Boundary => write!(f, "boundary"),
            AnnulusStatus::Outside => write!(f, "outside"),
        }
    }
}

/// One row of the residual map.
#[derive(Debug, Clone)]
pub struct ResidualPoint {
    pub lambda: Complex64,
    pub status: AnnulusStatus,
    /// Relative eigen-residual ‖C_φ f_a − λ f_a‖/‖f_a‖, for inside points.
    pub residual: Option<f64>,
    /// Normalized distance to the closed annulus, for outside points.
    pub distance: Option<f64>,
    /// det of the normalized 2×2 Gram of f_a, f_{a + 2πi/log μ}
    /// (multiplicity ≥ 2 evidence), for inside points.
    pub gram_det: Option<f64>,
}

/// Residual map of the explicit eigenfunctions over a λ-grid.
///
/// Inside the open annulus (μ^{−1/2}, μ^{1/2}): a = log λ / log μ on the
/// principal strip |Re a| < 1/2, f_a is built at the given budget (and
/// transported by the conjugator when φ is not canonical), and the
/// relative residual is reported.  Boundary points are marked without a
/// residual claim (f_a leaves H² there); outside points carry only the
/// distance marker.
pub fn annulus_residual_map(
    phi: &HyperbolicAutomorphism,
    lambdas: &[Complex64],
    budget: usize,
    grid: &BoundaryGrid,
) -> Result<Vec<ResidualPoint>> {
    let mu = phi.mu;
    let sqrt_mu = mu.sqrt();
    let log_mu = mu.ln();
    let boundary_band = 1e-9;
    let transport = if phi.is_canonical() {
        None
    } else {
        Some(conjugator(phi.alpha, phi.beta)?.inverse())
    };
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        if lambda.norm() == 0.0 {
            return Err(Error::Domain("λ = 0 is not admissible".into()));
        }
        let r = lambda.norm();
        let status =
            if (r - sqrt_mu).abs() <= boundary_band || (r - 1.0 / sqrt_mu).abs() <= boundary_band {
                AnnulusStatus::Boundary
            } else if r > sqrt_mu || r < 1.0 / sqrt_mu {
                AnnulusStatus::Outside
            } else {
                AnnulusStatus::Inside
            };
        match status {
            AnnulusStatus::Boundary => out.push(ResidualPoint {
                lambda,
                status,
                residual: None,
                distance: None,
                gram_det: None,
            }),
            AnnulusStatus::Outside => {
                let dist = if r > sqrt_mu {
                    r / sqrt_mu - 1.0
                } else {
                    (1.0 / sqrt_mu) / r - 1.0
                };
                out.push(ResidualPoint {
                    lambda,
                    status,
                    residual: None,
                    distance: Some(dist),
                    gram_det: None,
                });
            }
            AnnulusStatus::Inside => {
                let a = lambda.ln() / log_mu; // principal branch: |Re a| < 1/2
                let fa = hardy::eigenfunction_fa(a, budget)?;
                let fa = match &transport {
                    Some(psi_inv) => hardy::compose(&fa, psi_inv, grid)?,
                    None => fa,
                };
                let image = hardy::compose(&fa, &phi.map, grid)?;
                let mu_a = (a * log_mu).exp();
                let resid_vec = image.add(&fa.scale(-mu_a));
                let residual = resid_vec.norm() / fa.norm();
                // second eigenfunction for the same λ
                let b = a + Complex64::new(0.0, 2.0 * std::f64::consts::PI / log_mu);
                let gram_det = if b.re.abs() < 0.5 {
                    let fb = hardy::eigenfunction_fa(b, budget)?;
                    let fb = match &transport {
                        Some(psi_inv) => hardy::compose(&fb, psi_inv, grid)?,
                        None => fb,
                    };
                    let g = hardy::inner(&fa, &fb) / (fa.norm() * fb.norm());
                    Some(1.0 - g.norm_sqr())
                } else {
                    None
                };
                out.push(ResidualPoint {
                    lambda,
                    status,
                    residual: Some(residual),
                    distance: None,
                    gram_det,
                });
            }
        }
    }
    Ok(out)
}
