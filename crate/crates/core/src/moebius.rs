//! Linear fractional transformations of the Riemann sphere, with the
//! classification and canonical forms used for hyperbolic disc automorphisms.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// Tolerance band around |φ'| = 1 inside which attractive/repulsive
/// ordering is refused.
pub const HYPERBOLIC_BAND: f64 = 1e-9;

/// A point on the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Chordal-like distance, used only for test assertions.
    pub fn dist(self, other: Point) -> f64 {
        match (self, other) {
            (Point::Finite(a), Point::Finite(b)) => (a - b).norm(),
            (Point::Infinity, Point::Infinity) => 0.0,
            (Point::Finite(a), Point::Infinity) | (Point::Infinity, Point::Finite(a)) => {
                1.0 / a.norm().max(1e-300)
            }
        }
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::Finite(z)
    }
}

/// Classification of a non-degenerate linear fractional map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
    Loxodromic,
}

/// z ↦ (az + b)/(cz + d) with ad − bc ≠ 0.  Coefficients are projective:
/// scaling all four by a nonzero complex number yields the same map.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = MoebiusMap { a, b, c, d };
        let det = m.det();
        let scale = a.norm() + b.norm() + c.norm() + d.norm();
        if det.norm() <= 1e-14 * scale * scale {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Rescales so that ad − bc = 1 (up to the residual sign ambiguity).
    pub fn normalize(&self) -> Self {
        let s = self.det().sqrt();
        MoebiusMap {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    /// Projective equality: compares the two unit-determinant normalizations,
    /// which differ by a global sign.  The tolerance is relative to the
    /// coefficient scale (deep hyperbolic compositions have large normalized
    /// entries).
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        let p = self.normalize();
        let q = other.normalize();
        let dist_plus =
            (p.a - q.a).norm() + (p.b - q.b).norm() + (p.c - q.c).norm() + (p.d - q.d).norm();
        let dist_minus =
            (p.a + q.a).norm() + (p.b + q.b).norm() + (p.c + q.c).norm() + (p.d + q.d).norm();
        let scale = (p.a.norm() + p.b.norm() + p.c.norm() + p.d.norm())
            .max(q.a.norm() + q.b.norm() + q.c.norm() + q.d.norm())
            .max(1.0);
        dist_plus.min(dist_minus) <= tol * scale
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MoebiusMap::identity(), tol)
    }

    /// Composition: (self ∘ other)(z) = self(other(z)).
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Evaluation with projective handling of the pole.
    pub fn apply_point(&self, z: Point) -> Point {
        match z {
            Point::Infinity => {
                if self.c.norm() == 0.0 {
                    Point::Infinity
                } else {
                    Point::Finite(self.a / self.c)
                }
            }
            Point::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                // pole: compare against the coefficient scale, not absolute zero
                let scale = (self.c.norm() * z.norm() + self.d.norm()).max(1e-300);
                if den.norm() <= 1e-15 * scale {
                    Point::Infinity
                } else {
                    Point::Finite(num / den)
                }
            }
        }
    }

    /// Finite-input evaluation; returns `Point` so poles stay representable.
    pub fn apply(&self, z: Complex64) -> Point {
        self.apply_point(Point::Finite(z))
    }

    /// Derivative (ad − bc)/(cz + d)² at a finite point, or the derivative of
    /// the inversion-conjugated map at ∞ when the map fixes ∞.
    pub fn derivative_at(&self, p: Point) -> Result<Complex64> {
        match p {
            Point::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    return Err(Error::Domain("derivative at the pole".into()));
                }
                Ok(self.det() / (den * den))
            }
            Point::Infinity => {
                if self.c.norm() > 1e-14 * (self.a.norm() + self.d.norm()) {
                    return Err(Error::Domain("∞ is not fixed by this map".into()));
                }
                // w ↦ 1/m(1/w) has derivative d/a at 0
                Ok(self.d / self.a)
            }
        }
    }

    /// Normalized trace squared (a+d)²/(ad−bc), the conjugation invariant
    /// behind the classification.
    pub fn trace_squared(&self) -> Complex64 {
        let t = self.a + self.d;
        t * t / self.det()
    }
}

/// Classification by the normalized trace-squared: τ² = μ + 1/μ + 2 where μ
/// is the multiplier, so τ² > 4 real ⇔ μ real positive ≠ 1 (hyperbolic),
/// τ² ∈ [0, 4) real ⇔ |μ| = 1 (elliptic), τ² = 4 ⇔ parabolic.
pub fn classify(m: &MoebiusMap) -> Result<MapClass> {
    let det = m.det();
    let scale = m.a.norm() + m.b.norm() + m.c.norm() + m.d.norm();
    if det.norm() <= 1e-14 * scale * scale {
        return Err(Error::InvalidMap("degenerate coefficients".into()));
    }
    if m.is_identity(1e-12) {
        return Ok(MapClass::Identity);
    }
    let t2 = m.trace_squared();
    let tol = 1e-9;
    if t2.im.abs() > tol * (1.0 + t2.re.abs()) {
        return Ok(MapClass::Loxodromic);
    }
    let x = t2.re;
    if (x - 4.0).abs() <= tol {
        Ok(MapClass::Parabolic)
    } else if x > 4.0 {
        Ok(MapClass::Hyperbolic)
    } else if x >= -tol {
        Ok(MapClass::Elliptic)
    } else {
        // real negative multiplier other than -1
        Ok(MapClass::Loxodromic)
    }
}

/// Roots of the fixed-point equation cz² + (d−a)z − b = 0 on the sphere.
/// The identity is rejected; a parabolic map returns its double point twice.
pub fn fixed_points(m: &MoebiusMap) -> Result<(Point, Point)> {
    if m.is_identity(1e-12) {
        return Err(Error::IdentityFixedPoints);
    }
    let qa = m.c;
    let qb = m.d - m.a;
    let qc = -m.b;
    let scale = m.a.norm() + m.b.norm() + m.c.norm() + m.d.norm();
    if qa.norm() <= 1e-14 * scale {
        // c = 0: the map is affine and fixes ∞
        if qb.norm() <= 1e-14 * scale {
            // translation: double fixed point at ∞
            return Ok((Point::Infinity, Point::Infinity));
        }
        return Ok((Point::Finite(-qc / qb), Point::Infinity));
    }
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    // pick the root combination that avoids cancellation
    let q = if (qb + disc).norm() >= (qb - disc).norm() {
        -(qb + disc) / 2.0
    } else {
        -(qb - disc) / 2.0
    };
    if q.norm() <= 1e-14 * scale {
        // both roots at the origin-degenerate corner: z1 = 0, z2 = -qb/qa
        return Ok((
            Point::Finite(Complex64::new(0.0, 0.0)),
            Point::Finite(-qb / qa),
        ));
    }
    let z1 = q / qa;
    let z2 = qc / q;
    Ok((Point::Finite(z1), Point::Finite(z2)))
}

/// The multiplier of a map with two distinct fixed points, normalized so
/// that |μ| ≥ 1.  When |μ| = 1 the derivative at the first fixed point is
/// reported (so a rotation e^{iθ}z yields e^{iθ}).
pub fn multiplier(m: &MoebiusMap) -> Result<Complex64> {
    let (p, q) = fixed_points(m)?;
    if p.dist(q) <= 1e-12 {
        return Err(Error::InvalidMap(
            "multiplier undefined for a parabolic map".into(),
        ));
    }
    let mu = m.derivative_at(p)?;
    if mu.norm() >= 1.0 - 1e-15 {
        Ok(mu)
    } else {
        Ok(1.0 / mu)
    }
}

/// A validated hyperbolic automorphism of the unit disc.
#[derive(Debug, Clone, Copy)]
pub struct HyperbolicAutomorphism {
    pub map: MoebiusMap,
    /// Attractive fixed point, |alpha| = 1.
    pub alpha: Complex64,
    /// Repulsive fixed point, |beta| = 1.
    pub beta: Complex64,
    /// Multiplier, real > 1.
    pub mu: f64,
}

/// Canonical parameters μ > 1 and r = (μ−1)/(μ+1).
#[derive(Debug, Clone, Copy)]
pub struct CanonicalParams {
    pub mu: f64,
    pub r: f64,
}

impl CanonicalParams {
    pub fn from_mu(mu: f64) -> Result<Self> {
        if !(mu > 1.0) || !mu.is_finite() {
            return Err(Error::InvalidMultiplier(mu));
        }
        Ok(CanonicalParams {
            mu,
            r: (mu - 1.0) / (mu + 1.0),
        })
    }
}

impl HyperbolicAutomorphism {
    /// Validates a map as a hyperbolic disc automorphism and orders its
    /// fixed points by the derivative modulus (< 1 attractive).
    pub fn try_new(map: MoebiusMap) -> Result<Self> {
        if classify(&map)? != MapClass::Hyperbolic {
            return Err(Error::NotHyperbolic("trace-squared test failed".into()));
        }
        let (p, q) = fixed_points(&map)?;
        let (p, q) = match (p, q) {
            (Point::Finite(p), Point::Finite(q)) => (p, q),
            _ => {
                return Err(Error::NotHyperbolic(
                    "fixed point at ∞, not a disc automorphism".into(),
                ))
            }
        };
        if (p.norm() - 1.0).abs() > 1e-8 || (q.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::NotHyperbolic(
                "fixed points do not lie on the unit circle".into(),
            ));
        }
        let dp = map.derivative_at(Point::Finite(p))?.norm();
        let dq = map.derivative_at(Point::Finite(q))?.norm();
        if (dp - 1.0).abs() <= HYPERBOLIC_BAND || (dq - 1.0).abs() <= HYPERBOLIC_BAND {
            return Err(Error::NotHyperbolic(
                "derivative modulus within tolerance band of 1".into(),
            ));
        }
        let (alpha, beta, da) = if dp < 1.0 { (p, q, dp) } else { (q, p, dq) };
        // |φ'(attractive)| = 1/μ
        let mu = 1.0 / da;
        Ok(HyperbolicAutomorphism {
            map,
            alpha,
            beta,
            mu,
        })
    }

    pub fn is_canonical(&self) -> bool {
        (self.alpha - Complex64::new(1.0, 0.0)).norm() <= 1e-9
            && (self.beta + Complex64::new(1.0, 0.0)).norm() <= 1e-9
    }

    /// φ(0), the point whose Poisson kernel governs ‖C_φ f‖.
    pub fn image_of_zero(&self) -> Complex64 {
        self.map.b / self.map.d
    }
}

/// The canonical hyperbolic automorphism φ(z) = (r+z)/(1+rz) with
/// r = (μ−1)/(μ+1): fixes ±1, attracts to +1, has multiplier μ.
pub fn make_canonical(mu: f64) -> Result<HyperbolicAutomorphism> {
    let params = CanonicalParams::from_mu(mu)?;
    let r = params.r;
    let map = MoebiusMap {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(r, 0.0),
        c: Complex64::new(r, 0.0),
        d: Complex64::new(1.0, 0.0),
    };
    Ok(HyperbolicAutomorphism {
        map,
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(-1.0, 0.0),
        mu,
    })
}

/// r_n = (μⁿ−1)/(μⁿ+1) = tanh(n·ln(μ)/2), valid for any integer n.  The
/// tanh form avoids overflow of μⁿ and keeps 1−r_n accurate far longer
/// than the rational form.
pub fn canonical_r_n(mu: f64, n: i64) -> f64 {
    (0.5 * n as f64 * mu.ln()).tanh()
}

/// The map of the n-th iterate φ_n.  For a canonical automorphism this is
/// exact in μⁿ (r_n via `canonical_r_n`); a non-canonical automorphism is
/// conjugated to canonical form first, so no error accumulates with n.
pub fn iterate(phi: &HyperbolicAutomorphism, n: i64) -> MoebiusMap {
    if n == 0 {
        return MoebiusMap::identity();
    }
    let canonical_iterate = |mu: f64, n: i64| -> MoebiusMap {
        let rn = canonical_r_n(mu, n);
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(rn, 0.0),
            c: Complex64::new(rn, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    };
    if phi.is_canonical() {
        canonical_iterate(phi.mu, n)
    } else {
        let psi = conjugator(phi.alpha, phi.beta).expect("validated fixed points are distinct");
        psi.compose(&canonical_iterate(phi.mu, n))
            .compose(&psi.inverse())
    }
}

/// Cayley transform κ(w) = (w−1)/(w+1), right half-plane → disc.
pub fn cayley(w: Point) -> Point {
    cayley_map().apply_point(w)
}

/// κ⁻¹(z) = (1+z)/(1−z), disc → right half-plane.
pub fn cayley_inverse(z: Point) -> Point {
    cayley_map().inverse().apply_point(z)
}

pub fn cayley_map() -> MoebiusMap {
    MoebiusMap {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(-1.0, 0.0),
        c: Complex64::new(1.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    }
}

/// A disc automorphism ψ with ψ(+1) = alpha and ψ(−1) = beta.
///
/// Built through the half-plane: κ⁻¹ sends ±1 to ∞ and 0; a half-plane
/// automorphism T with T(∞) = κ⁻¹(alpha), T(0) = κ⁻¹(beta) is assembled
/// from a real 2×2 coefficient matrix whose determinant sign selects the
/// branch that maps the half-plane onto itself (the ±Ψ choice); then
/// ψ = κ ∘ T ∘ κ⁻¹.
pub fn conjugator(alpha: Complex64, beta: Complex64) -> Result<MoebiusMap> {
    if (alpha.norm() - 1.0).abs() > 1e-9 || (beta.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(
            "conjugator endpoints must be unimodular".into(),
        ));
    }
    if (alpha - beta).norm() <= 1e-12 {
        return Err(Error::Domain(
            "conjugator endpoints must be distinct".into(),
        ));
    }
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    // κ⁻¹(ζ) is purely imaginary for |ζ| = 1, ζ ≠ 1; record Im, with 1 ↦ ∞.
    let half_plane_coord = |zeta: Complex64| -> Option<f64> {
        if (zeta - one).norm() <= 1e-12 {
            None
        } else {
            Some(((one + zeta) / (one - zeta)).im)
        }
    };
    let p = half_plane_coord(alpha);
    let q = half_plane_coord(beta);
    // T(w) = (a·w + i·b)/(−i·c·w + d) with a,b,c,d real and ad − bc > 0
    let (a, b, c, d) = match (p, q) {
        (Some(pp), Some(qq)) => {
            let sign = if pp > qq { 1.0 } else { -1.0 };
            (pp, sign * qq, 1.0, sign)
        }
        (None, Some(qq)) => (1.0, qq, 0.0, 1.0),
        (Some(pp), None) => (pp, -1.0, 1.0, 0.0),
        (None, None) => unreachable!("alpha ≠ beta"),
    };
    let t = MoebiusMap {
        a: Complex64::new(a, 0.0),
        b: i * b,
        c: -i * c,
        d: Complex64::new(d, 0.0),
    };
    let k = cayley_map();
    Ok(k.compose(&t).compose(&k.inverse()))
}

/// Conjugates a canonical automorphism to one with fixed points
/// (alpha, beta) and the same multiplier: φ̃ = ψ ∘ φ ∘ ψ⁻¹.
pub fn conjugate_automorphism(
    phi: &HyperbolicAutomorphism,
    alpha: Complex64,
    beta: Complex64,
) -> Result<HyperbolicAutomorphism> {
    let psi = conjugator(alpha, beta)?;
    let map = psi.compose(&phi.map).compose(&psi.inverse());
    HyperbolicAutomorphism::try_new(map)
}
