//! Poisson kernel evaluation, the pointwise bound 4(1−ρ)/((1−ρ)²+(θ/π)²),
//! the orbit-sum bound (16μ/(μ−1))·π/|θ|, and discrete maximal functions.

use num_complex::Complex64;

use crate::error::Error;
use crate::moebius::canonical_r_n;
use crate::Result;

/// A point ρe^{iθ} of the disc in polar form, ρ ∈ [0,1), θ ∈ [−π, π].
#[derive(Debug, Clone, Copy)]
pub struct KernelPoint {
    pub rho: f64,
    pub theta: f64,
}

impl KernelPoint {
    pub fn new(rho: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::Domain(format!("rho must lie in [0,1), got {rho}")));
        }
        if theta.abs() > std::f64::consts::PI + 1e-12 {
            return Err(Error::Domain(format!(
                "theta must lie in [-π, π], got {theta}"
            )));
        }
        Ok(KernelPoint { rho, theta })
    }
}

/// Partial orbit-kernel sum against the closed-form bound.
#[derive(Debug, Clone, Copy)]
pub struct SumBoundReport {
    pub mu: f64,
    pub theta: f64,
    pub partial_sum: f64,
    pub bound: f64,
    pub terms_used: usize,
}

/// P_a(ζ) = (1−|a|²)/|ζ−a|².
pub fn kernel(a: Complex64, zeta: Complex64) -> Result<f64> {
    if a.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "Poisson kernel requires |a| < 1, got {}",
            a.norm()
        )));
    }
    Ok((1.0 - a.norm_sqr()) / (zeta - a).norm_sqr())
}

/// Kernel in polar form for a real base point ρ: (1−ρ²)/(1−2ρcosθ+ρ²).
pub fn kernel_polar(rho: f64, theta: f64) -> f64 {
    (1.0 - rho * rho) / (1.0 - 2.0 * rho * theta.cos() + rho * rho)
}

/// The pointwise estimate P_ρ(e^{iθ}) ≤ 4(1−ρ)/((1−ρ)² + (θ/π)²).
pub fn kernel_bound(p: KernelPoint) -> f64 {
    let s = 1.0 - p.rho;
    let t = p.theta / std::f64::consts::PI;
    4.0 * s / (s * s + t * t)
}

/// Partial sum Σ_{n=0}^{terms} P_{r_n}(e^{iθ}) with r_n = (μⁿ−1)/(μⁿ+1),
/// against the bound (16μ/(μ−1))·(π/|θ|).
pub fn orbit_kernel_sum(mu: f64, theta: f64, n_terms: usize) -> Result<SumBoundReport> {
    if !(mu > 1.0) {
        return Err(Error::InvalidMultiplier(mu));
    }
    if theta == 0.0 {
        return Err(Error::Domain(
            "the orbit kernel sum diverges at θ = 0 (the attractive fixed point)".into(),
        ));
    }
    if theta.abs() > std::f64::consts::PI + 1e-12 {
        return Err(Error::Domain(format!(
            "theta must lie in [-π, π], got {theta}"
        )));
    }
    let mut partial = 0.0;
    for n in 0..=n_terms {
        let rn = canonical_r_n(mu, n as i64);
        partial += kernel_polar(rn, theta);
    }
    let bound = 16.0 * mu / (mu - 1.0) * std::f64::consts::PI / theta.abs();
    Ok(SumBoundReport {
        mu,
        theta,
        partial_sum: partial,
        bound,
        terms_used: n_terms,
    })
}

/// Discrete Hardy–Littlewood maximal function at a grid node: the maximum
/// over dyadic arc widths 2^k grid steps, k = 0..log₂(M/2), of the average
/// of the samples over the centered arc.  Within a factor of 2 of the true
/// supremum over arcs, which is all the finiteness checks need.
pub fn hl_maximal(samples: &[f64], zeta_index: usize) -> Result<f64> {
    let m = samples.len();
    if m == 0 || zeta_index >= m {
        return Err(Error::Domain("empty samples or index out of range".into()));
    }
    if samples.iter().any(|&g| g < 0.0) {
        return Err(Error::Domain(
            "maximal function requires nonnegative samples".into(),
        ));
    }
    let levels = (m / 2).ilog2() as usize;
    let mut best = samples[zeta_index];
    for k in 0..=levels {
        let half = (1usize << k) / 2;
        let count = 2 * half + 1;
        let mut acc = 0.0;
        for off in 0..count {
            let idx = (zeta_index + m + off) - half;
            acc += samples[idx % m];
        }
        best = best.max(acc / count as f64);
    }
    Ok(best)
}

/// Discrete Poisson integral of boundary samples at the interior point a.
pub fn poisson_integral(samples: &[f64], a: Complex64) -> Result<f64> {
    let m = samples.len();
    if m == 0 {
        return Err(Error::Domain("empty samples".into()));
    }
    let mut acc = 0.0;
    for (j, &g) in samples.iter().enumerate() {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let zeta = Complex64::from_polar(1.0, theta);
        acc += g * kernel(a, zeta)?;
    }
    Ok(acc / m as f64)
}

/// Radial maximal function: max over the given radii of the discrete
/// Poisson integral at ρ·ζ.
pub fn radial_maximal(samples: &[f64], zeta: Complex64, radii: &[f64]) -> Result<f64> {
    if samples.iter().any(|&g| g < 0.0) {
        return Err(Error::Domain(
            "maximal function requires nonnegative samples".into(),
        ));
    }
    let mut best = 0.0f64;
    for &rho in radii {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::Domain(format!("radius {rho} outside [0,1)")));
        }
        best = best.max(poisson_integral(samples, zeta * rho)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let zeta = Complex64::from_polar(1.0, 1.3);
        assert!((kernel(Complex64::new(0.0, 0.0), zeta).unwrap() - 1.0).abs() < 1e-15);
        // a = ρ real, θ = 0: (1+ρ)/(1−ρ)
        let one = Complex64::new(1.0, 0.0);
        let k = kernel(Complex64::new(0.6, 0.0), one).unwrap();
        assert!((k - 4.0).abs() < 1e-13);
        // a = r = (μ−1)/(μ+1), θ = π: 1/μ
        let mu = 5.0;
        let r = (mu - 1.0) / (mu + 1.0);
        let k = kernel(Complex64::new(r, 0.0), -one).unwrap();
        assert!((k - 1.0 / mu).abs() < 1e-14);
        assert!(kernel(Complex64::new(1.0, 0.0), one).is_err());
    }

    #[test]
    fn bound_examples() {
        // ρ=0, θ=π: bound 2 ≥ kernel 1
        let p = KernelPoint::new(0.0, std::f64::consts::PI).unwrap();
        assert!((kernel_bound(p) - 2.0).abs() < 1e-15);
        // ρ=0.9, θ=0: bound 40, kernel 19
        let p = KernelPoint::new(0.9, 0.0).unwrap();
        assert!((kernel_bound(p) - 40.0).abs() < 1e-12);
        assert!((kernel_polar(0.9, 0.0) - 19.0).abs() < 1e-12);
    }

    #[test]
    fn bound_holds_on_a_grid() {
        for i in 0..200 {
            let rho = i as f64 / 200.0 * 0.999;
            for j in 0..=200 {
                let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / 200.0;
                let p = KernelPoint::new(rho, theta).unwrap();
                assert!(
                    kernel_polar(rho, theta) <= kernel_bound(p) + 1e-12,
                    "violation at rho={rho} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn orbit_sum_exact_at_pi() {
        // P_{r_n}(−1) = μ^{−n}: geometric series μ/(μ−1)
        let mu = 2.0;
        let rep = orbit_kernel_sum(mu, std::f64::consts::PI, 200).unwrap();
        assert!((rep.partial_sum - 2.0).abs() < 1e-12, "{}", rep.partial_sum);
        assert!((rep.bound - 32.0).abs() < 1e-12);
        assert!(rep.partial_sum <= rep.bound);
    }

    #[test]
    fn orbit_sum_zero_terms() {
        let rep = orbit_kernel_sum(3.0, 0.7, 0).unwrap();
        assert!((rep.partial_sum - 1.0).abs() < 1e-15); // r_0 = 0, P_0 = 1
        assert!(rep.bound >= 16.0);
        assert!(orbit_kernel_sum(3.0, 0.0, 10).is_err());
        assert!(orbit_kernel_sum(0.5, 0.7, 10).is_err());
    }

    #[test]
    fn hl_maximal_examples() {
        let ones = vec![1.0; 64];
        for idx in [0usize, 5, 63] {
            assert!((hl_maximal(&ones, idx).unwrap() - 1.0).abs() < 1e-15);
        }
        // indicator of the right half-circle, node at +1 (index 0)
        let m = 128;
        let ind: Vec<f64> = (0..m)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                if theta.cos() > 0.0 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let v = hl_maximal(&ind, 0).unwrap();
        assert!((0.5..=1.0).contains(&v), "{v}");
        assert!(hl_maximal(&[1.0, -0.1, 0.3, 0.4], 0).is_err());
    }

    #[test]
    fn radial_maximal_examples() {
        // quadrature of P_a over M nodes deviates from 1 by O(|a|^M)
        let ones = vec![1.0; 512];
        let zeta = Complex64::new(1.0, 0.0);
        let radii = [0.0, 0.5, 0.9];
        let v = radial_maximal(&ones, zeta, &radii).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");

        // spike at ζ grows as ρ → 1
        let mut spike = vec![0.0; 64];
        spike[0] = 1.0;
        let lo = radial_maximal(&spike, zeta, &[0.5]).unwrap();
        let hi = radial_maximal(&spike, zeta, &[0.9]).unwrap();
        assert!(hi > lo, "{hi} vs {lo}");
    }
}
