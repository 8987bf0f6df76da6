//! H² functions as finite Taylor-coefficient vectors.
//!
//! The norm is the ℓ² norm of the coefficients.  Composition with a disc
//! automorphism is done by evaluating the truncated series on a boundary
//! grid (automorphisms map the circle onto the circle, so the evaluation is
//! stable), recovering coefficients with a DFT and truncating back to the
//! budget; the discarded energy is recorded in `tail_energy` rather than
//! silently dropped.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::sync::Mutex;

use crate::error::Error;
use crate::moebius::MoebiusMap;
use crate::Result;

/// Grid size must be at least this multiple of the coefficient budget.
pub const DEFAULT_OVERSAMPLE: usize = 4;
/// Relative tail-energy threshold above which a representation is flagged.
pub const RESOLVED_REL_TAIL: f64 = 1e-6;
/// Relative norm below which a function is treated as zero.
pub const ZERO_REL_NORM: f64 = 1e-12;
/// Boundary deviation tolerance for the disc-automorphism check in compose.
const CIRCLE_TOL: f64 = 1e-9;

static PLANNER: Lazy<Mutex<FftPlanner<f64>>> = Lazy::new(|| Mutex::new(FftPlanner::new()));

fn fft_forward(buf: &mut [Complex64]) {
    let fft = PLANNER.lock().unwrap().plan_fft_forward(buf.len());
    fft.process(buf);
}

fn fft_inverse(buf: &mut [Complex64]) {
    let fft = PLANNER.lock().unwrap().plan_fft_inverse(buf.len());
    fft.process(buf);
    let scale = 1.0 / buf.len() as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// An analytic function on the disc, represented by Taylor coefficients
/// c_0..c_{N-1} plus an estimate of the mass lost to truncation.
#[derive(Debug, Clone)]
pub struct H2Function {
    coeffs: Vec<Complex64>,
    tail_energy: f64,
}

impl H2Function {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient vector");
        H2Function {
            coeffs,
            tail_energy: 0.0,
        }
    }

    pub fn with_tail(coeffs: Vec<Complex64>, tail_energy: f64) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient vector");
        H2Function {
            coeffs,
            tail_energy,
        }
    }

    pub fn constant(value: Complex64, budget: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); budget];
        c[0] = value;
        H2Function::from_coeffs(c)
    }

    pub fn monomial(degree: usize, budget: usize) -> Self {
        assert!(degree < budget);
        let mut c = vec![Complex64::new(0.0, 0.0); budget];
        c[degree] = Complex64::new(1.0, 0.0);
        H2Function::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn budget(&self) -> usize {
        self.coeffs.len()
    }

    pub fn tail_energy(&self) -> f64 {
        self.tail_energy
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Tail energy below `RESOLVED_REL_TAIL` relative to the norm.
    pub fn is_resolved(&self) -> bool {
        self.tail_energy <= RESOLVED_REL_TAIL * self.norm_sq()
    }

    /// Norm below `ZERO_REL_NORM` relative to the given scale.
    pub fn is_zero(&self, scale: f64) -> bool {
        self.norm() <= ZERO_REL_NORM * scale
    }

    /// Index one past the last nonzero coefficient.
    fn effective_len(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm_sqr() != 0.0)
            .map_or(1, |k| k + 1)
    }

    /// Horner evaluation of the truncated series.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs[..self.effective_len()].iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn scale(&self, s: Complex64) -> H2Function {
        H2Function {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            tail_energy: self.tail_energy * s.norm_sqr(),
        }
    }

    pub fn add(&self, other: &H2Function) -> H2Function {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[k] += v;
        }
        for (k, v) in other.coeffs.iter().enumerate() {
            c[k] += v;
        }
        // tails add in norm; store the squared bound
        let t = (self.tail_energy.sqrt() + other.tail_energy.sqrt()).powi(2);
        H2Function {
            coeffs: c,
            tail_energy: t,
        }
    }

    /// f(-z): reflects coefficients c_k ↦ (-1)^k c_k.
    pub fn reflect(&self) -> H2Function {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { *c } else { -c })
            .collect();
        H2Function {
            coeffs,
            tail_energy: self.tail_energy,
        }
    }
}

/// ℓ² norm of the coefficient vector.
pub fn norm(f: &H2Function) -> f64 {
    f.norm()
}

/// Inner product ⟨f, g⟩ = Σ f_k conj(g_k).
pub fn inner(f: &H2Function, g: &H2Function) -> Complex64 {
    f.coeffs
        .iter()
        .zip(g.coeffs.iter())
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// Exponents (γ at the attractive fixed point, δ at the repulsive one) of
/// the weighted class (z−α)^γ (z−β)^δ H².
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct WeightSpec {
    pub gamma: f64,
    pub delta: f64,
}

impl WeightSpec {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        if !(0.0..=1.5).contains(&gamma) || !(0.0..=1.5).contains(&delta) {
            return Err(Error::Config(format!(
                "weight exponents must lie in [0, 3/2], got ({gamma}, {delta})"
            )));
        }
        Ok(WeightSpec { gamma, delta })
    }
}

/// Uniform boundary grid ω_j = e^{2πij/M} with quadrature weight 1/M.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryGrid {
    size: usize,
}

impl BoundaryGrid {
    pub fn new(size: usize) -> Result<Self> {
        if !size.is_power_of_two() || size < 2 {
            return Err(Error::Config(format!(
                "grid size must be a power of two ≥ 2, got {size}"
            )));
        }
        Ok(BoundaryGrid { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn node(&self, j: usize) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / self.size as f64;
        Complex64::from_polar(1.0, theta)
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.size).map(|j| self.node(j)).collect()
    }
}

fn binomial_series(exponent: f64, negate_argument: bool, len: usize) -> Vec<Complex64> {
    // coefficients of (1 + s·z)^exponent with s = ∓1
    let s: f64 = if negate_argument { -1.0 } else { 1.0 };
    let mut c = vec![Complex64::new(0.0, 0.0); len];
    let mut b = 1.0f64;
    c[0] = Complex64::new(1.0, 0.0);
    for k in 1..len {
        b *= (exponent - (k as f64 - 1.0)) / k as f64;
        c[k] = Complex64::new(b * s.powi(k as i32 % 2), 0.0);
        if b == 0.0 {
            break; // integer exponent: the series terminates exactly
        }
    }
    c
}

fn convolve(a: &[Complex64], b: &[Complex64], out_len: usize) -> Vec<Complex64> {
    let full = a.len() + b.len() - 1;
    let keep = out_len.min(full);
    if a.len().min(b.len()) <= 64 {
        let mut out = vec![Complex64::new(0.0, 0.0); keep];
        for (i, &ai) in a.iter().enumerate() {
            if i >= keep {
                break;
            }
            for (j, &bj) in b.iter().enumerate() {
                if i + j >= keep {
                    break;
                }
                out[i + j] += ai * bj;
            }
        }
        return out;
    }
    let l = next_pow2(full);
    let mut fa = vec![Complex64::new(0.0, 0.0); l];
    let mut fb = vec![Complex64::new(0.0, 0.0); l];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fft_forward(&mut fa);
    fft_forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(fb.iter()) {
        *x *= y;
    }
    fft_inverse(&mut fa);
    fa.truncate(keep);
    fa
}

/// Geometric extrapolation of the mass beyond the measured block.
fn tail_estimate(block: &[Complex64]) -> f64 {
    let measured: f64 = block.iter().map(|c| c.norm_sqr()).sum();
    if measured == 0.0 {
        return 0.0;
    }
    let half = block.len() / 2;
    let first: f64 = block[..half].iter().map(|c| c.norm_sqr()).sum();
    let second: f64 = block[half..].iter().map(|c| c.norm_sqr()).sum();
    let remainder = if first > 0.0 && second < first {
        let rho = second / first;
        (second * rho / (1.0 - rho)).min(3.0 * measured)
    } else {
        measured
    };
    measured + remainder
}

/// Coefficients of (1−z)^γ (1+z)^δ, principal branches.  This differs from
/// (z−1)^γ (z+1)^δ only by a unimodular constant, which is irrelevant to
/// norms, membership and subspaces.
pub fn weight_function(w: WeightSpec, budget: usize) -> Result<H2Function> {
    if !budget.is_power_of_two() {
        return Err(Error::Config(format!(
            "coefficient budget must be a power of two, got {budget}"
        )));
    }
    let work = 2 * budget;
    let neg = binomial_series(w.gamma, true, work); // (1−z)^γ
    let pos = binomial_series(w.delta, false, work); // (1+z)^δ
    let full = convolve(&neg, &pos, work);
    let tail = tail_estimate(&full[budget..]);
    Ok(H2Function::with_tail(full[..budget].to_vec(), tail))
}

/// Coefficients of f_a = ((1+z)/(1−z))^a = exp(2a·artanh z), via the
/// power-series exponential recurrence.  In H² only for |Re a| < 1/2.
pub fn eigenfunction_fa(a: Complex64, budget: usize) -> Result<H2Function> {
    if a.re.abs() >= 0.5 {
        return Err(Error::NotInHardySpace(a.re));
    }
    if !budget.is_power_of_two() {
        return Err(Error::Config(format!(
            "coefficient budget must be a power of two, got {budget}"
        )));
    }
    let work = 2 * budget;
    let mut g = vec![Complex64::new(0.0, 0.0); work];
    g[0] = Complex64::new(1.0, 0.0);
    // g' = h' g with h = 2a·artanh z gives k g_k = 2a Σ_{j odd ≤ k} g_{k-j},
    // and the inner sum is a running sum over one parity class.
    let mut sum_even = g[0];
    let mut sum_odd = Complex64::new(0.0, 0.0);
    for k in 1..work {
        let t = if (k - 1) % 2 == 0 { sum_even } else { sum_odd };
        g[k] = 2.0 * a / (k as f64) * t;
        if k % 2 == 0 {
            sum_even += g[k];
        } else {
            sum_odd += g[k];
        }
    }
    let tail = tail_estimate(&g[budget..]);
    Ok(H2Function::with_tail(g[..budget].to_vec(), tail))
}

/// Evaluates the truncated series at arbitrary points (Horner), in parallel.
pub fn eval_on_points(f: &H2Function, points: &[Complex64]) -> Vec<Complex64> {
    let coeffs = &f.coeffs()[..f.effective_len()];
    points
        .par_iter()
        .with_min_len(256)
        .map(|&w| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in coeffs.iter().rev() {
                acc = acc * w + c;
            }
            acc
        })
        .collect()
}

/// C_m f = f∘m for a disc automorphism m, by boundary evaluation and DFT.
///
/// The aliasing residual (energy of discarded DFT coefficients) plus the
/// propagated input tail is recorded in the result's `tail_energy`.
pub fn compose(f: &H2Function, m: &MoebiusMap, grid: &BoundaryGrid) -> Result<H2Function> {
    let n = f.budget();
    let big_m = grid.size();
    if big_m < DEFAULT_OVERSAMPLE * n {
        return Err(Error::Config(format!(
            "grid size {big_m} is below {DEFAULT_OVERSAMPLE}× the coefficient budget {n}"
        )));
    }
    // images of the grid nodes; a disc automorphism keeps them unimodular
    let mut images = Vec::with_capacity(big_m);
    for j in 0..big_m {
        let w = match m.apply(grid.node(j)) {
            crate::moebius::Point::Finite(w) => w,
            crate::moebius::Point::Infinity => {
                return Err(Error::Domain(
                    "map has a pole on the unit circle; not a disc automorphism".into(),
                ))
            }
        };
        if (w.norm() - 1.0).abs() > CIRCLE_TOL {
            return Err(Error::Domain(format!(
                "map does not preserve the unit circle: | |m(ω)| - 1 | = {:.3e}",
                (w.norm() - 1.0).abs()
            )));
        }
        images.push(w);
    }
    let mut values = eval_on_points(f, &images);
    fft_forward(&mut values);
    let scale = 1.0 / big_m as f64;
    let coeffs: Vec<Complex64> = values[..n].iter().map(|c| c * scale).collect();
    let alias: f64 = values[n..].iter().map(|c| (c * scale).norm_sqr()).sum();
    // ‖C_m g‖² ≤ (1+|a|)/(1−|a|)·‖g‖² with a = m(0) bounds the input tail's image
    let a0 = match m.apply(Complex64::new(0.0, 0.0)) {
        crate::moebius::Point::Finite(a) => a.norm(),
        crate::moebius::Point::Infinity => 1.0,
    };
    let propagated = if a0 < 1.0 {
        f.tail_energy * (1.0 + a0) / (1.0 - a0)
    } else {
        f.tail_energy
    };
    Ok(H2Function::with_tail(coeffs, alias + propagated))
}

/// Pointwise product by coefficient convolution, truncated to the larger of
/// the two budgets.
pub fn multiply(f: &H2Function, g: &H2Function) -> H2Function {
    let out_len = f.budget().max(g.budget());
    let full = convolve(f.coeffs(), g.coeffs(), f.budget() + g.budget() - 1);
    let discarded: f64 = full[out_len.min(full.len())..]
        .iter()
        .map(|c| c.norm_sqr())
        .sum();
    let cross = f.norm_sq() * g.tail_energy()
        + g.norm_sq() * f.tail_energy()
        + f.tail_energy() * g.tail_energy();
    H2Function::with_tail(full[..out_len.min(full.len())].to_vec(), discarded + cross)
}

/// ∫ |f|² P_a dm, exact on the truncation: s_0 + 2·Re Σ_{d≥1} a^d s_d with
/// s_d = Σ_k c_{k+d} conj(c_k) the coefficient autocorrelation.  This is the
/// independent oracle for ‖C_φ f‖² when a = φ(0).
pub fn poisson_quadratic_form(f: &H2Function, a: Complex64) -> Result<f64> {
    if a.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "Poisson form requires |a| < 1, got |a| = {}",
            a.norm()
        )));
    }
    let n = f.budget();
    let s = autocorrelation(f.coeffs());
    let mut q = s[0].re;
    let mut apow = Complex64::new(1.0, 0.0);
    for d in 1..n {
        apow *= a;
        q += 2.0 * (apow * s[d]).re;
        if apow.norm() * (n - d) as f64 * s[0].re < 1e-300 {
            break;
        }
    }
    Ok(q)
}

/// s_d = Σ_k c_{k+d} conj(c_k) for d = 0..n−1.
fn autocorrelation(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len();
    if n <= 1024 {
        let mut s = vec![Complex64::new(0.0, 0.0); n];
        for d in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n - d {
                acc += c[k + d] * c[k].conj();
            }
            s[d] = acc;
        }
        return s;
    }
    let l = next_pow2(2 * n);
    let mut buf = vec![Complex64::new(0.0, 0.0); l];
    buf[..n].copy_from_slice(c);
    fft_forward(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    fft_inverse(&mut buf);
    buf.truncate(n);
    buf
}

/// Subtracts a small bump-polynomial combination so that the truncation
/// vanishes exactly at the given unimodular points.
///
/// A finite truncation of a function that vanishes at a boundary point
/// generally does not vanish there itself (the value equals the dropped
/// tail sum), which makes its composition orbit leave the weighted class.
/// Pinning the zeros restores class membership: the result is a polynomial
/// vanishing at the points, hence lies in (z−α)^γ(z−β)^δ H² for any
/// admissible exponents.  The bump ((1 + conj(p) z)/2)^order has unit value
/// at p and small H² norm.
pub fn force_boundary_zeros(
    f: &H2Function,
    points: &[Complex64],
    order: usize,
) -> Result<H2Function> {
    let k = points.len();
    if k == 0 {
        return Ok(f.clone());
    }
    if k > 4 {
        return Err(Error::Config("at most 4 pinned zeros supported".into()));
    }
    let n = f.budget();
    if order + 1 > n {
        return Err(Error::Config(format!(
            "bump order {order} exceeds the coefficient budget {n}"
        )));
    }
    for p in points {
        if (p.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Domain("pinned zeros must be unimodular".into()));
        }
    }
    let bumps: Vec<Vec<Complex64>> = points
        .iter()
        .map(|p| {
            let mut c = vec![Complex64::new(0.0, 0.0); n];
            let half = Complex64::new(0.5, 0.0);
            let q = p.conj() * half;
            // ((1 + conj(p) z)/2)^order by the binomial recurrence
            let mut term = half.powu(order as u32);
            c[0] = term;
            for j in 1..=order {
                term = term / half * q * ((order - j + 1) as f64 / j as f64);
                c[j] = term;
            }
            c
        })
        .collect();
    // small linear system: Σ_i x_i u_i(p_j) = f(p_j)
    let mut mat = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    let mut rhs = vec![Complex64::new(0.0, 0.0); k];
    for (row, p) in points.iter().enumerate() {
        rhs[row] = f.eval(*p);
        for (col, u) in bumps.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in u.iter().rev() {
                acc = acc * p + c;
            }
            mat[row][col] = acc;
        }
    }
    let x = solve_small(&mut mat, &mut rhs)?;
    let mut coeffs = f.coeffs().to_vec();
    let mut correction_energy = 0.0;
    for (xi, u) in x.iter().zip(bumps.iter()) {
        correction_energy += xi.norm_sqr() * u.iter().map(|c| c.norm_sqr()).sum::<f64>();
        for (c, uc) in coeffs.iter_mut().zip(u.iter()) {
            *c -= xi * uc;
        }
    }
    Ok(H2Function::with_tail(
        coeffs,
        f.tail_energy() + correction_energy,
    ))
}

fn solve_small(mat: &mut [Vec<Complex64>], rhs: &mut [Complex64]) -> Result<Vec<Complex64>> {
    let k = rhs.len();
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| mat[i][col].norm().total_cmp(&mat[j][col].norm()))
            .expect("nonempty pivot range");
        if mat[pivot][col].norm() < 1e-300 {
            return Err(Error::Domain("singular pinning system".into()));
        }
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..k {
            let factor = mat[row][col] / mat[col][col];
            for cc in col..k {
                let v = mat[col][cc];
                mat[row][cc] -= factor * v;
            }
            let v = rhs[col];
            rhs[row] -= factor * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); k];
    for col in (0..k).rev() {
        let mut acc = rhs[col];
        for cc in col + 1..k {
            acc -= mat[col][cc] * x[cc];
        }
        x[col] = acc / mat[col][col];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::make_canonical;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_quadrature_of_powers() {
        let grid = BoundaryGrid::new(16).unwrap();
        for k in 0..40usize {
            let sum: Complex64 = (0..16).map(|j| grid.node(j).powu(k as u32)).sum();
            let mean = sum / 16.0;
            let expected = if k % 16 == 0 { 1.0 } else { 0.0 };
            assert!((mean - c(expected, 0.0)).norm() < 1e-13, "k = {k}: {mean}");
        }
    }

    #[test]
    fn weight_trivial_cases() {
        let one = weight_function(WeightSpec::new(0.0, 0.0).unwrap(), 16).unwrap();
        assert!((one.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(one.coeffs()[1..].iter().all(|x| x.norm() < 1e-15));

        let w11 = weight_function(WeightSpec::new(1.0, 1.0).unwrap(), 16).unwrap();
        assert!((w11.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(w11.coeffs()[1].norm() < 1e-15);
        assert!((w11.coeffs()[2] + c(1.0, 0.0)).norm() < 1e-15);
        assert!(w11.coeffs()[3..].iter().all(|x| x.norm() < 1e-14));
        assert!((w11.norm() - 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn weight_half_half_is_sqrt_one_minus_z_squared() {
        // oracle: (1-u)^{1/2} at u = z² gives 1 - z²/2 - z⁴/8 - z⁶/16 - ...
        let w = weight_function(WeightSpec::new(0.5, 0.5).unwrap(), 32).unwrap();
        let expected = [1.0, 0.0, -0.5, 0.0, -0.125, 0.0, -0.0625, 0.0];
        for (k, e) in expected.iter().enumerate() {
            assert!(
                (w.coeffs()[k] - c(*e, 0.0)).norm() < 1e-13,
                "k = {k}: {} vs {e}",
                w.coeffs()[k]
            );
        }
    }

    #[test]
    fn weight_squared_matches_polynomial() {
        let w = weight_function(WeightSpec::new(0.5, 0.5).unwrap(), 1024).unwrap();
        let sq = multiply(&w, &w);
        assert!((sq.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-10);
        assert!((sq.coeffs()[2] + c(1.0, 0.0)).norm() < 1e-10);
        for k in [1usize, 3, 4, 5, 6, 7] {
            assert!(sq.coeffs()[k].norm() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn weight_rejects_bad_budget() {
        assert!(matches!(
            weight_function(WeightSpec::new(0.5, 0.5).unwrap(), 100),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn fa_basics() {
        let f0 = eigenfunction_fa(c(0.0, 0.0), 16).unwrap();
        assert!((f0.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(f0.coeffs()[1..].iter().all(|x| x.norm() < 1e-15));

        // c_0 = 1, c_1 = 2a; oracle: exp of 2a(z + z³/3 + ...)
        let a = c(0.21, -0.13);
        let fa = eigenfunction_fa(a, 64).unwrap();
        assert!((fa.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((fa.coeffs()[1] - 2.0 * a).norm() < 1e-15);
        // c_2 = (2a)²/2, c_3 = (2a)³/6 + 2a/3
        let two_a = 2.0 * a;
        assert!((fa.coeffs()[2] - two_a * two_a / 2.0).norm() < 1e-14);
        assert!((fa.coeffs()[3] - (two_a * two_a * two_a / 6.0 + two_a / 3.0)).norm() < 1e-14);

        assert!(matches!(
            eigenfunction_fa(c(0.5, 1.0), 16),
            Err(Error::NotInHardySpace(_))
        ));
        assert!(matches!(
            eigenfunction_fa(c(-0.62, 0.0), 16),
            Err(Error::NotInHardySpace(_))
        ));
    }

    #[test]
    fn fa_near_boundary_is_flagged() {
        let fa = eigenfunction_fa(c(0.49, 0.0), 4096).unwrap();
        assert!(!fa.is_resolved(), "tail {} should flag", fa.tail_energy());
    }

    #[test]
    fn norm_and_inner_basics() {
        let one = H2Function::constant(c(1.0, 0.0), 8);
        assert!((norm(&one) - 1.0).abs() < 1e-15);
        let z = H2Function::monomial(1, 8);
        let z2 = H2Function::monomial(2, 8);
        assert!(inner(&z, &z2).norm() < 1e-15);
        assert!((inner(&z, &z).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn multiply_basics() {
        let f = weight_function(WeightSpec::new(0.75, 0.25).unwrap(), 64).unwrap();
        let one = H2Function::constant(c(1.0, 0.0), 64);
        let prod = multiply(&f, &one);
        for (a, b) in prod.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }
        // (1-z)(1+z) = 1 - z²
        let a = H2Function::from_coeffs(vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        let b = H2Function::from_coeffs(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let p = multiply(&a, &b);
        assert!((p.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(p.coeffs()[1].norm() < 1e-15);
    }

    #[test]
    fn compose_of_monomial_matches_geometric_expansion() {
        // f = z, canonical r: c_0 = r, c_k = (1-r²)(−r)^{k−1}
        let phi = make_canonical(3.0).unwrap(); // r = 0.5
        let r = 0.5;
        let f = H2Function::monomial(1, 256);
        let grid = BoundaryGrid::new(1024).unwrap();
        let g = compose(&f, &phi.map, &grid).unwrap();
        assert!((g.coeffs()[0] - c(r, 0.0)).norm() < 1e-13);
        for k in 1..30 {
            let want = (1.0 - r * r) * (-r as f64).powi(k as i32 - 1);
            assert!(
                (g.coeffs()[k] - c(want, 0.0)).norm() < 1e-13,
                "k = {k}: {} vs {want}",
                g.coeffs()[k]
            );
        }
        // unimodular boundary values: ‖z∘φ‖ = 1
        assert!((g.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn compose_identity_roundtrip() {
        let f = weight_function(WeightSpec::new(0.75, 0.75).unwrap(), 512).unwrap();
        let grid = BoundaryGrid::new(2048).unwrap();
        let g = compose(&f, &MoebiusMap::identity(), &grid).unwrap();
        let diff: f64 = f
            .coeffs()
            .iter()
            .zip(g.coeffs())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-13, "roundtrip error {diff}");
    }

    #[test]
    fn compose_constant_is_constant() {
        let phi = make_canonical(2.0).unwrap();
        let one = H2Function::constant(c(1.0, 0.0), 64);
        let grid = BoundaryGrid::new(256).unwrap();
        let g = compose(&one, &phi.map, &grid).unwrap();
        assert!((g.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(g.coeffs()[1..].iter().all(|x| x.norm() < 1e-13));
    }

    #[test]
    fn compose_rejects_non_automorphism() {
        // z ↦ z/2 shrinks the circle
        let half = MoebiusMap {
            a: c(0.5, 0.0),
            b: c(0.0, 0.0),
            c: c(0.0, 0.0),
            d: c(1.0, 0.0),
        };
        let f = H2Function::monomial(1, 16);
        let grid = BoundaryGrid::new(64).unwrap();
        assert!(matches!(compose(&f, &half, &grid), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_rejects_undersized_grid() {
        let phi = make_canonical(2.0).unwrap();
        let f = H2Function::monomial(1, 64);
        let grid = BoundaryGrid::new(128).unwrap();
        assert!(matches!(
            compose(&f, &phi.map, &grid),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn quadratic_form_examples() {
        // f = z, a = r: A_11 = 1
        let z = H2Function::monomial(1, 8);
        assert!((poisson_quadratic_form(&z, c(0.5, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        // f = 1 + z, a = r real: 2 + 2r
        let f = H2Function::from_coeffs(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((poisson_quadratic_form(&f, c(0.3, 0.0)).unwrap() - 2.6).abs() < 1e-14);
        // a = 0: P_0 ≡ 1 gives ‖f‖²
        let w = weight_function(WeightSpec::new(0.5, 0.5).unwrap(), 256).unwrap();
        let q = poisson_quadratic_form(&w, c(0.0, 0.0)).unwrap();
        assert!((q - w.norm_sq()).abs() < 1e-13);
        assert!(poisson_quadratic_form(&z, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn quadratic_form_matches_compose_norm() {
        // the identity is exact for resolved inputs: use a polynomial
        let phi = make_canonical(2.0).unwrap();
        let w = weight_function(WeightSpec::new(1.0, 0.5).unwrap(), 512).unwrap();
        let mut coeffs = vec![c(0.0, 0.0); 256];
        coeffs[..64].copy_from_slice(&w.coeffs()[..64]);
        let f = H2Function::from_coeffs(coeffs);
        let grid = BoundaryGrid::new(4096).unwrap();
        let g = compose(&f, &phi.map, &grid).unwrap();
        let q = poisson_quadratic_form(&f, phi.image_of_zero()).unwrap();
        assert!(
            (g.norm_sq() - q).abs() < 1e-8 * f.norm_sq(),
            "{} vs {q}",
            g.norm_sq()
        );
    }

    #[test]
    fn pinned_zeros_vanish_and_perturb_little() {
        let w = weight_function(WeightSpec::new(0.75, 0.75).unwrap(), 4096).unwrap();
        let pinned = force_boundary_zeros(&w, &[c(1.0, 0.0), c(-1.0, 0.0)], 64).unwrap();
        assert!(pinned.eval(c(1.0, 0.0)).norm() < 1e-12);
        assert!(pinned.eval(c(-1.0, 0.0)).norm() < 1e-12);
        let diff: f64 = w
            .coeffs()
            .iter()
            .zip(pinned.coeffs())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-2 * w.norm(), "perturbation {diff}");
    }

    #[test]
    fn autocorrelation_fft_matches_direct() {
        let w = weight_function(WeightSpec::new(0.6, 0.9).unwrap(), 2048).unwrap();
        let s_fft = autocorrelation(w.coeffs());
        // direct reference on a few lags
        for d in [0usize, 1, 7, 100, 2000] {
            let mut acc = c(0.0, 0.0);
            for k in 0..2048 - d {
                acc += w.coeffs()[k + d] * w.coeffs()[k].conj();
            }
            assert!(
                (s_fft[d] - acc).norm() < 1e-10 * (1.0 + acc.norm()),
                "lag {d}"
            );
        }
    }
}
