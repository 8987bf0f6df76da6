//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with the measured quantities.  Run with
//! `cargo test -p hypcomp --test acceptance -- --nocapture` to see every
//! line; a failing criterion keeps its measured values in the panic
//! message.

use hypcomp::eigen::{self, Annulus, Direction, ScanOutcome};
use hypcomp::hardy::{self, BoundaryGrid, H2Function, WeightSpec, DEFAULT_OVERSAMPLE};
use hypcomp::moebius::{self, make_canonical};
use hypcomp::poisson;
use hypcomp::spectrum::{self, CompressionMatrix};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn grid_for_mu(mu: f64, n: usize) -> BoundaryGrid {
    let size = ((2.0 * (mu + 1.0)) as usize * n)
        .next_power_of_two()
        .max(4 * n);
    BoundaryGrid::new(size).unwrap()
}

/// Criterion 1: change-of-variable identity (200 random unit-norm
/// polynomials of degree ≤ 64, μ ∈ {1.5, 2, 4}): the compose-route norm and
/// the Toeplitz quadratic form agree to 1e-8.
#[test]
fn criterion_01_change_of_variable() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let budget = 1024usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let mut worst = 0.0f64;
    for mu in [1.5, 2.0, 4.0] {
        let phi = make_canonical(mu).unwrap();
        for _ in 0..200 {
            let mut coeffs = vec![c(0.0, 0.0); budget];
            for co in coeffs.iter_mut().take(65) {
                *co = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
            let f = H2Function::from_coeffs(coeffs);
            let f = f.scale(c(1.0 / f.norm(), 0.0));
            let image = hardy::compose(&f, &phi.map, &grid).unwrap();
            let q = hardy::poisson_quadratic_form(&f, phi.image_of_zero()).unwrap();
            worst = worst.max((image.norm_sq() - q).abs());
        }
    }
    let pass = worst <= 1e-8;
    report(
        "1 (change of variable)",
        pass,
        &format!("max |error| = {worst:.3e} (tolerance 1e-8)"),
    );
    assert!(pass, "max |‖C_φf‖² − Q| = {worst:.3e} > 1e-8");
}

/// Criterion 2: explicit eigenfunctions at μ = 4: relative residual
/// ‖C_φ f_a − μ^a f_a‖/‖f_a‖ ≤ 1e-6 at N = 4096 for the listed a.
#[test]
fn criterion_02_explicit_eigenfunctions() {
    let mu = 4.0f64;
    let phi = make_canonical(mu).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let log_mu = mu.ln();
    let mut lines = Vec::new();
    let mut worst = 0.0f64;
    for a in [
        c(0.3, 0.0),
        c(-0.3, 0.0),
        c(0.2, 1.1),
        c(-0.2, 1.1),
        c(0.189, 0.0),
    ] {
        let fa = hardy::eigenfunction_fa(a, budget).unwrap();
        let image = hardy::compose(&fa, &phi.map, &grid).unwrap();
        let mu_a = (a * log_mu).exp();
        let residual = image.add(&fa.scale(-mu_a)).norm() / fa.norm();
        worst = worst.max(residual);
        lines.push(format!("a={a}: {residual:.3e}"));
    }
    let pass = worst <= 1e-6;
    report(
        "2 (explicit eigenfunctions)",
        pass,
        &format!("residuals {} (tolerance 1e-6)", lines.join(", ")),
    );
    assert!(
        pass,
        "eigen-relation residuals exceed 1e-6: {}",
        lines.join(", ")
    );
}

/// Criterion 3: norm bounds: σ_max of the N = 1024 compression ≤ √μ + 1e-9
/// and nondecreasing over N ∈ {64, …, 1024}, for μ ∈ {1.5, 2, 4, 10}.
#[test]
fn criterion_03_norm_bounds() {
    let mut pass = true;
    let mut detail = Vec::new();
    for mu in [1.5f64, 2.0, 4.0, 10.0] {
        let phi = make_canonical(mu).unwrap();
        let n_max = 1024usize;
        let grid = grid_for_mu(mu, n_max);
        let full = spectrum::truncated_matrix(&phi, n_max, &grid).unwrap();
        let mut prev = 0.0f64;
        let mut warm: Option<Vec<Complex64>> = None;
        let mut sigma_at_max = 0.0;
        for n in [64usize, 128, 256, 512, 1024] {
            let section = CompressionMatrix {
                dim: n,
                cols: full.cols[..n].iter().map(|col| col[..n].to_vec()).collect(),
                col_tail: full.col_tail[..n].to_vec(),
            };
            let (sigma, v) =
                spectrum::operator_norm_estimate_from(&section, warm.as_deref()).unwrap();
            if sigma > mu.sqrt() + 1e-9 {
                pass = false;
                detail.push(format!(
                    "μ={mu} N={n}: σ={sigma:.12} exceeds √μ={:.12}",
                    mu.sqrt()
                ));
            }
            if sigma + 1e-9 < prev {
                pass = false;
                detail.push(format!(
                    "μ={mu} N={n}: σ decreased {prev:.12} → {sigma:.12}"
                ));
            }
            prev = sigma;
            warm = Some(v);
            sigma_at_max = sigma;
        }
        detail.push(format!(
            "μ={mu}: σ(1024)={sigma_at_max:.9} ≤ √μ={:.9}",
            mu.sqrt()
        ));
    }
    report("3 (norm bounds)", pass, &detail.join("; "));
    assert!(pass, "{}", detail.join("; "));
}

/// Criterion 4: pointwise kernel bound: zero violations on a 1024×1024
/// (ρ, θ) grid.
#[test]
fn criterion_04_kernel_bound_grid() {
    let mut violations = 0usize;
    let pi = std::f64::consts::PI;
    for i in 0..1024 {
        let rho = i as f64 / 1024.0 * 0.999;
        for j in 0..1024 {
            let theta = -pi + 2.0 * pi * j as f64 / 1024.0;
            let k = poisson::kernel_polar(rho, theta);
            let b = poisson::kernel_bound(poisson::KernelPoint::new(rho, theta).unwrap());
            if k > b {
                violations += 1;
            }
        }
    }
    let pass = violations == 0;
    report(
        "4 (pointwise kernel bound)",
        pass,
        &format!("{violations} violations on 1024×1024"),
    );
    assert_eq!(violations, 0);
}

/// Criterion 5: orbit kernel sums: zero violations with 200-term partial
/// sums, μ ∈ {1.5, 2, 4, 10}, 512 θ-nodes with |θ| ≥ 1e-3, plus the exact
/// θ = π identity partial_sum = μ/(μ−1) to 1e-10.
#[test]
fn criterion_05_orbit_kernel_sums() {
    let pi = std::f64::consts::PI;
    let mut violations = 0usize;
    let mut exact_err = 0.0f64;
    for mu in [1.5f64, 2.0, 4.0, 10.0] {
        for j in 0..512 {
            let theta = -pi + 2.0 * pi * (j as f64 + 0.5) / 512.0;
            if theta.abs() < 1e-3 {
                continue;
            }
            let rep = poisson::orbit_kernel_sum(mu, theta, 200).unwrap();
            if rep.partial_sum > rep.bound {
                violations += 1;
            }
        }
        let rep = poisson::orbit_kernel_sum(mu, pi, 200).unwrap();
        exact_err = exact_err.max((rep.partial_sum - mu / (mu - 1.0)).abs());
    }
    let pass = violations == 0 && exact_err <= 1e-10;
    report(
        "5 (orbit kernel sums)",
        pass,
        &format!("{violations} violations; exact θ=π error {exact_err:.3e}"),
    );
    assert!(pass, "violations {violations}, exact error {exact_err:.3e}");
}

struct ScanResult {
    pass_rate: f64,
    passing: usize,
    total: usize,
    exceptional: usize,
    exceptional_isolated: bool,
}

fn scan_with(
    f: &H2Function,
    phi: &moebius::HyperbolicAutomorphism,
    grid: &BoundaryGrid,
    window: usize,
    annulus: Annulus,
    tol: f64,
) -> ScanResult {
    let family = eigen::orbit_norms(f, phi, window, grid).unwrap();
    let (points, summary) = eigen::eigen_scan(&family, annulus, 16, 16, tol).unwrap();
    let flags: Vec<bool> = points
        .iter()
        .map(|p| matches!(&p.outcome, ScanOutcome::Report(r) if r.exceptional))
        .collect();
    let mut isolated = true;
    for i in 0..flags.len() {
        if flags[i] {
            let row = i / 16;
            let col = i % 16;
            let neighbors = [
                (row, (col + 1) % 16),
                (row, (col + 15) % 16),
                (row + 1, col),
                (row.wrapping_sub(1), col),
            ];
            for (r, cc) in neighbors {
                if r < 16 && flags[r * 16 + cc] {
                    isolated = false;
                }
            }
        }
    }
    ScanResult {
        pass_rate: summary.residual_pass as f64 / summary.total as f64,
        passing: summary.residual_pass,
        total: summary.total,
        exceptional: summary.exceptional,
        exceptional_isolated: isolated,
    }
}

/// Criterion 6: weighted-class eigen scan: f = (1−z)^{3/4}(1+z)^{3/4}, μ = 2,
/// 16×16 λ-grid in A(0.9, 1.1): at least 99% of points with residual ≤ 1e-4;
/// exceptional points ≤ 3 and isolated.
#[test]
fn criterion_06_weighted_class_scan() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f = eigen::class_weight(
        &phi,
        WeightSpec::new(0.75, 0.75).unwrap(),
        budget,
        &grid,
        64,
    )
    .unwrap();
    let annulus = Annulus::new(0.9, 1.1).unwrap();
    let r = scan_with(&f, &phi, &grid, 44, annulus, 1e-4);
    let pass = r.pass_rate >= 0.99 && r.exceptional <= 3 && r.exceptional_isolated;
    report(
        "6 (weighted-class eigen scan)",
        pass,
        &format!(
            "{}/{} points ≤ 1e-4 ({:.1}%), {} exceptional (isolated: {})",
            r.passing,
            r.total,
            100.0 * r.pass_rate,
            r.exceptional,
            r.exceptional_isolated
        ),
    );
    assert!(
        pass,
        "pass rate {:.4} (need ≥ 0.99), exceptional {} (≤ 3, isolated {})",
        r.pass_rate, r.exceptional, r.exceptional_isolated
    );
}

/// Criterion 7: decay rates: fitted ε̂ within 10% of the hypothesis ε for
/// ε ∈ {0.1, 0.25, 0.4} (f in the class (1−z)^{1/2+ε} H²), μ = 2, window 40.
#[test]
fn criterion_07_decay_rates() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let mut pass = true;
    let mut lines = Vec::new();
    for eps in [0.1f64, 0.25, 0.4] {
        let f = eigen::class_weight(
            &phi,
            WeightSpec::new(0.5 + eps, 0.0).unwrap(),
            budget,
            &grid,
            64,
        )
        .unwrap();
        let family = eigen::orbit_norms(&f, &phi, 40, &grid).unwrap();
        match eigen::decay_fit(&family, Direction::Forward, 3) {
            Ok(eps_hat) => {
                let ok = (eps_hat - eps).abs() <= 0.1 * eps;
                if !ok {
                    pass = false;
                }
                lines.push(format!("ε={eps}: ε̂={eps_hat:.4}"));
            }
            Err(e) => {
                pass = false;
                lines.push(format!("ε={eps}: fit unavailable ({e})"));
            }
        }
    }
    report(
        "7 (decay rates)",
        pass,
        &format!("{} (10% bands)", lines.join(", ")),
    );
    assert!(
        pass,
        "fitted exponents outside the 10% bands: {}",
        lines.join(", ")
    );
}

/// Criterion 8a: orbit square-summability: f = √(1−z²), μ = 2:
/// tail_square_sum cauchy gap ≤ 1e-3 × partial at window 60.
#[test]
fn criterion_08a_tail_square_sum() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f =
        eigen::class_weight(&phi, WeightSpec::new(0.5, 0.5).unwrap(), budget, &grid, 64).unwrap();
    let family = eigen::orbit_norms(&f, &phi, 60, &grid).unwrap();
    let (partial, gap) = eigen::tail_square_sum(&family).unwrap();
    let pass = gap <= 1e-3 * partial;
    report(
        "8a (square-summability)",
        pass,
        &format!("partial {partial:.6}, cauchy gap {gap:.3e} (≤ 1e-3·partial)"),
    );
    assert!(pass, "gap {gap:.3e} vs partial {partial:.6}");
}

/// Criterion 8b: circle-construction identity: the telescoping identity
/// residual ≤ 1e-7 at 64 sampled ω with M = 40.
#[test]
fn criterion_08b_circle_identity() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f =
        eigen::class_weight(&phi, WeightSpec::new(0.5, 0.5).unwrap(), budget, &grid, 64).unwrap();
    let family = eigen::orbit_norms(&f, &phi, 41, &grid).unwrap();
    let mut worst = 0.0f64;
    for j in 0..64 {
        let omega =
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / 64.0);
        let part = eigen::circle_eigen_partial(&family, omega, 40).unwrap();
        worst = worst.max(part.identity_residual);
    }
    let pass = worst <= 1e-7;
    report(
        "8b (circle identity)",
        pass,
        &format!("max identity residual {worst:.3e} (tolerance 1e-7)"),
    );
    assert!(pass, "max identity residual {worst:.3e} > 1e-7");
}

/// Criterion 8c: circle-construction convergence: the median eigen
/// residual over 64 sampled ω decreases along M ∈ {10, 20, 40}.
#[test]
fn criterion_08c_circle_median_decreasing() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f =
        eigen::class_weight(&phi, WeightSpec::new(0.5, 0.5).unwrap(), budget, &grid, 64).unwrap();
    let family = eigen::orbit_norms(&f, &phi, 41, &grid).unwrap();
    let mut medians = Vec::new();
    for m in [10usize, 20, 40] {
        let mut residuals = Vec::new();
        for j in 0..64 {
            let omega =
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / 64.0);
            let part = eigen::circle_eigen_partial(&family, omega, m).unwrap();
            residuals.push(part.eigen_residual);
        }
        residuals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(residuals[32]);
    }
    let pass = medians[1] < medians[0] && medians[2] < medians[1];
    report(
        "8c (circle medians decreasing)",
        pass,
        &format!(
            "medians {:.3e} → {:.3e} → {:.3e}",
            medians[0], medians[1], medians[2]
        ),
    );
    assert!(pass, "medians not decreasing: {medians:?}");
}

/// Criterion 9a: one-sided class backward boundedness: f =
/// (1−z)^{3/4}√(1+z), μ = 2: negative-direction orbit norms bounded by 2×
/// their value at n = −1, and the Hardy–Littlewood maximal function of
/// |f|² is finite at the repulsive fixed point.
#[test]
fn criterion_09a_backward_boundedness() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f =
        eigen::class_weight(&phi, WeightSpec::new(0.75, 0.5).unwrap(), budget, &grid, 64).unwrap();
    let family = eigen::orbit_norms(&f, &phi, 44, &grid).unwrap();
    let base = family.norm_at(-1);
    let mut sup = 0.0f64;
    for n in 1..=44i64 {
        sup = sup.max(family.norm_at(-n));
    }
    // discrete Hardy–Littlewood maximal function of |f|² at ζ = −1
    let nodes = grid.nodes();
    let samples: Vec<f64> = hardy::eval_on_points(&f, &nodes)
        .iter()
        .map(|v| v.norm_sqr())
        .collect();
    let hl = poisson::hl_maximal(&samples, grid.size() / 2).unwrap();
    let pass = sup <= 2.0 * base && hl.is_finite();
    report(
        "9a (backward boundedness)",
        pass,
        &format!(
            "sup {sup:.6} ≤ 2×‖f∘φ_(-1)‖ = {:.6}; M[|f|²](-1) = {hl:.4}",
            2.0 * base
        ),
    );
    assert!(pass, "sup {sup} vs base {base}, hl {hl}");
}

/// Criterion 9b: one-sided scan: A(μ^{-1/4}·1.05, 0.95) passes as in
/// criterion 6.
#[test]
fn criterion_09b_one_sided_scan() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f =
        eigen::class_weight(&phi, WeightSpec::new(0.75, 0.5).unwrap(), budget, &grid, 64).unwrap();
    let inner = 2.0f64.powf(-0.25) * 1.05;
    let annulus = Annulus::new(inner, 0.95).unwrap();
    let r = scan_with(&f, &phi, &grid, 44, annulus, 1e-4);
    let pass = r.pass_rate >= 0.99 && r.exceptional <= 3 && r.exceptional_isolated;
    report(
        "9b (one-sided scan)",
        pass,
        &format!(
            "{}/{} points ≤ 1e-4 ({:.1}%), {} exceptional",
            r.passing,
            r.total,
            100.0 * r.pass_rate,
            r.exceptional
        ),
    );
    assert!(
        pass,
        "pass rate {:.4}, exceptional {}",
        r.pass_rate, r.exceptional
    );
}

/// Criterion 10a: conjugation transport: the automorphism conjugated to
/// fixed points (i, −i) keeps multiplier 2 to 1e-10.
#[test]
fn criterion_10a_multiplier_transport() {
    let phi = make_canonical(2.0).unwrap();
    let tilde = moebius::conjugate_automorphism(&phi, c(0.0, 1.0), c(0.0, -1.0)).unwrap();
    let err = (tilde.mu - 2.0).abs();
    let pass = err <= 1e-10;
    report(
        "10a (multiplier transport)",
        pass,
        &format!("|μ̃ − μ| = {err:.3e} (tolerance 1e-10)"),
    );
    assert!(pass, "multiplier error {err:.3e}");
}

/// Criterion 10b: eigen scan on the transported weight function
/// reproduces the criterion-6 pass rates.
#[test]
fn criterion_10b_transported_scan() {
    let phi = make_canonical(2.0).unwrap();
    let tilde = moebius::conjugate_automorphism(&phi, c(0.0, 1.0), c(0.0, -1.0)).unwrap();
    let budget = 4096usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();
    let f = eigen::class_weight(
        &tilde,
        WeightSpec::new(0.75, 0.75).unwrap(),
        budget,
        &grid,
        64,
    )
    .unwrap();
    let annulus = Annulus::new(0.9, 1.1).unwrap();
    let r = scan_with(&f, &tilde, &grid, 44, annulus, 1e-4);
    let pass = r.pass_rate >= 0.99 && r.exceptional <= 3 && r.exceptional_isolated;
    report(
        "10b (transported scan)",
        pass,
        &format!(
            "{}/{} points ≤ 1e-4 ({:.1}%), {} exceptional",
            r.passing,
            r.total,
            100.0 * r.pass_rate,
            r.exceptional
        ),
    );
    assert!(
        pass,
        "pass rate {:.4}, exceptional {}",
        r.pass_rate, r.exceptional
    );
}

/// Criterion 11: hypercyclicity criterion: true for f = √(1−z²) and
/// f = 1 − z², false for f ≡ 1.
#[test]
fn criterion_11_hypercyclicity() {
    let phi = make_canonical(2.0).unwrap();
    let budget = 2048usize;
    let grid = BoundaryGrid::new(DEFAULT_OVERSAMPLE * budget).unwrap();

    let sqrt_weight =
        eigen::class_weight(&phi, WeightSpec::new(0.5, 0.5).unwrap(), budget, &grid, 64).unwrap();
    let fam1 = eigen::orbit_norms(&sqrt_weight, &phi, 40, &grid).unwrap();
    let r1 = eigen::hypercyclic_check(&fam1, 1e-4).unwrap();

    let mut pc = vec![c(0.0, 0.0); budget];
    pc[0] = c(1.0, 0.0);
    pc[2] = c(-1.0, 0.0);
    let poly = H2Function::from_coeffs(pc);
    let fam2 = eigen::orbit_norms(&poly, &phi, 40, &grid).unwrap();
    let r2 = eigen::hypercyclic_check(&fam2, 1e-4).unwrap();

    let one = H2Function::constant(c(1.0, 0.0), 64);
    let fam3 = eigen::orbit_norms(&one, &phi, 24, &grid).unwrap();
    let r3 = eigen::hypercyclic_check(&fam3, 1e-4).unwrap();

    let pass = r1.hypercyclic && r2.hypercyclic && !r3.hypercyclic;
    report(
        "11 (hypercyclicity)",
        pass,
        &format!(
            "√(1−z²): {}, 1−z²: {}, 1: {}",
            r1.hypercyclic, r2.hypercyclic, r3.hypercyclic
        ),
    );
    assert!(
        pass,
        "√(1−z²): {:?}, 1−z²: {:?}, const: {:?}",
        r1.witness, r2.witness, r3.witness
    );
}
