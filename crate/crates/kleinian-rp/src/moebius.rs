//! Determinant-1 complex 2x2 matrices for PSL(2,C): trace parameters,
//! element classification, square and k-th roots, generator construction.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64 as Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::config::Tolerances;
use crate::rational::{self, Fraction};

#[derive(Debug, Error)]
pub enum MoebiusError {
    #[error("determinant {det} deviates from 1 by more than {eps}")]
    NonUnitDeterminant { det: Complex, eps: f64 },
    #[error("parameter {name} has imaginary part {imag:e}, larger than {eps:e}")]
    NotRealParameters { name: &'static str, imag: f64, eps: f64 },
    #[error("trace is -2: square root branch degenerates")]
    DegenerateSquareRoot,
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("beta = {beta} does not match -4 sin^2(q pi / n) for q = {q}, n = {n}")]
    NotNonPrimitiveElliptic { beta: f64, q: u32, n: u32 },
    #[error("gamma = 0: generators share a fixed point, no normalized pair exists")]
    ZeroGamma,
    #[error("k-th root request with k = 0")]
    ZeroRootOrder,
}

/// An element of PSL(2,C): a 2x2 complex matrix of determinant 1, understood
/// up to sign (`M` and `-M` are the same transformation).
#[derive(Debug, Clone, Copy)]
pub struct MoebiusMap {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
    /// products since the last determinant renormalization
    age: u8,
}

const RENORM_PERIOD: u8 = 8;

impl MoebiusMap {
    /// Build from entries, checking the determinant.
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex, tol: &Tolerances) -> Result<Self, MoebiusError> {
        let m = MoebiusMap { a, b, c, d, age: 0 };
        let det = m.det();
        if (det - Complex::new(1.0, 0.0)).norm() > tol.eps_det {
            return Err(MoebiusError::NonUnitDeterminant { det, eps: tol.eps_det });
        }
        Ok(m)
    }

    /// Build from entries and rescale to determinant exactly 1.
    pub fn new_normalized(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        MoebiusMap { a, b, c, d, age: 0 }.renormalized()
    }

    pub(crate) fn from_entries(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        MoebiusMap { a, b, c, d, age: 0 }
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex::new(1.0, 0.0),
            b: Complex::new(0.0, 0.0),
            c: Complex::new(0.0, 0.0),
            d: Complex::new(1.0, 0.0),
            age: 0,
        }
    }

    pub fn det(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex {
        self.a + self.d
    }

    /// `beta = tr^2 - 4`, the classification parameter.
    pub fn beta(&self) -> Complex {
        let t = self.trace();
        t * t - Complex::new(4.0, 0.0)
    }

    /// Rescale so the determinant is exactly 1 (up to rounding).
    pub fn renormalized(mut self) -> Self {
        let r = self.det().sqrt();
        self.a /= r;
        self.b /= r;
        self.c /= r;
        self.d /= r;
        self.age = 0;
        self
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            age: self.age,
        }
    }

    pub fn neg(&self) -> Self {
        MoebiusMap {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
            age: self.age,
        }
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inverse().pow(-k);
        }
        let mut result = MoebiusMap::identity();
        let mut base = *self;
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            k >>= 1;
        }
        result
    }

    /// Largest absolute entry difference to another matrix.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm())
    }

    /// Projective distance: `min(|M - N|, |M + N|)` in the max norm.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        self.distance(other).min(self.distance(&other.neg()))
    }

    /// Projective equality within `eps`.
    pub fn projectively_equal(&self, other: &Self, eps: f64) -> bool {
        self.projective_distance(other) <= eps
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    /// Apply to a boundary point `z` (finite argument, finite result assumed).
    pub fn apply(&self, z: Complex) -> Complex {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn entries(&self) -> [Complex; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;

    fn mul(self, rhs: Self) -> Self {
        let mut m = MoebiusMap {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
            age: self.age.max(rhs.age).saturating_add(1),
        };
        if m.age >= RENORM_PERIOD {
            m = m.renormalized();
        }
        m
    }
}

/// Serializes as four `[re, im]` pairs in row-major order.
impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: [[f64; 2]; 4] = [
            [self.a.re, self.a.im],
            [self.b.re, self.b.im],
            [self.c.re, self.c.im],
            [self.d.re, self.d.im],
        ];
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoebiusMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = <[[f64; 2]; 4]>::deserialize(d)?;
        let m = MoebiusMap::from_entries(
            Complex::new(rows[0][0], rows[0][1]),
            Complex::new(rows[1][0], rows[1][1]),
            Complex::new(rows[2][0], rows[2][1]),
            Complex::new(rows[3][0], rows[3][1]),
        );
        let det = m.det();
        if (det - Complex::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(D::Error::custom(format!("matrix determinant {det} is not 1")));
        }
        Ok(m.renormalized())
    }
}

/// Product of a word, renormalizing the running product every `period`
/// factors (period 0 means never).
pub fn word_product(factors: &[MoebiusMap], period: u32) -> MoebiusMap {
    let mut acc = MoebiusMap::identity();
    let mut since = 0u32;
    for f in factors {
        acc = MoebiusMap {
            a: acc.a * f.a + acc.b * f.c,
            b: acc.a * f.b + acc.b * f.d,
            c: acc.c * f.a + acc.d * f.c,
            d: acc.c * f.b + acc.d * f.d,
            age: 0,
        };
        since += 1;
        if period > 0 && since >= period {
            acc = acc.renormalized();
            since = 0;
        }
    }
    acc
}

/// The real trace-parameter triple `(beta, beta', gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamTriple {
    pub beta: f64,
    pub beta_prime: f64,
    pub gamma: f64,
}

impl ParamTriple {
    pub fn new(beta: f64, beta_prime: f64, gamma: f64) -> Self {
        ParamTriple { beta, beta_prime, gamma }
    }

    pub fn is_finite(&self) -> bool {
        self.beta.is_finite() && self.beta_prime.is_finite() && self.gamma.is_finite()
    }
}

/// Classification of one element by `beta = tr^2 - 4` (real-`beta` taxonomy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
    PiLoxodromic,
    StrictlyLoxodromic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementClass {
    pub kind: ElementKind,
    /// Rotation angle in `(0, pi]`, elliptic only. The angle of `M` and
    /// `M^{-1}` coincide; orientation is not encoded.
    pub rotation_angle: Option<f64>,
    /// Recognized `(q, n)` with angle `2 pi q / n`, `gcd(q, n) = 1`.
    pub angle_fraction: Option<(u32, u32)>,
    /// Order of the elliptic element when the angle is rational.
    pub order: Option<u32>,
    /// True when the rotation angle is exactly `2 pi / order`.
    pub primitive: Option<bool>,
}

impl ElementClass {
    fn plain(kind: ElementKind) -> Self {
        ElementClass {
            kind,
            rotation_angle: None,
            angle_fraction: None,
            order: None,
            primitive: None,
        }
    }

    pub fn is_elliptic(&self) -> bool {
        self.kind == ElementKind::Elliptic
    }

    /// Elliptic of even order `2m`, primitive; returns `m`.
    pub fn primitive_even_half_order(&self) -> Option<u32> {
        if self.kind == ElementKind::Elliptic && self.primitive == Some(true) {
            match self.order {
                Some(o) if o % 2 == 0 => Some(o / 2),
                _ => None,
            }
        } else {
            None
        }
    }
}

/// Classify by the `beta = tr^2 - 4` partition; for elliptics, recognize the
/// rotation angle as a rational multiple of `2 pi` with bounded denominator.
pub fn classify_element(m: &MoebiusMap, tol: &Tolerances) -> Result<ElementClass, MoebiusError> {
    let det = m.det();
    if (det - Complex::new(1.0, 0.0)).norm() > tol.eps_det.max(1e-10 * m.max_norm().powi(2)) {
        return Err(MoebiusError::NonUnitDeterminant { det, eps: tol.eps_det });
    }
    if m.projectively_equal(&MoebiusMap::identity(), tol.eps) {
        return Ok(ElementClass::plain(ElementKind::Identity));
    }
    let beta = m.beta();
    if beta.im.abs() > tol.eps {
        return Ok(ElementClass::plain(ElementKind::StrictlyLoxodromic));
    }
    let b = beta.re;
    if b.abs() <= tol.eps {
        return Ok(ElementClass::plain(ElementKind::Parabolic));
    }
    if b > 0.0 {
        return Ok(ElementClass::plain(ElementKind::Hyperbolic));
    }
    if b < -4.0 - tol.eps {
        return Ok(ElementClass::plain(ElementKind::PiLoxodromic));
    }
    // elliptic: |tr| = 2 cos(theta/2) with canonical theta in (0, pi]
    let t = m.trace().re.abs().min(2.0);
    let theta = 2.0 * (t / 2.0).acos();
    let mut class = ElementClass {
        kind: ElementKind::Elliptic,
        rotation_angle: Some(theta),
        angle_fraction: None,
        order: None,
        primitive: None,
    };
    if let Some(frac) = recognize_turns(theta, tol) {
        class.angle_fraction = Some((frac.num as u32, frac.den));
        class.order = Some(frac.den);
        class.primitive = Some(frac.num == 1);
    }
    Ok(class)
}

/// Recognize `theta` as `2 pi q / n` in lowest terms, verifying the match
/// to within `tol.eps` in angle.
pub fn recognize_turns(theta: f64, tol: &Tolerances) -> Option<Fraction> {
    let turns = theta / (2.0 * PI);
    let frac = rational::recognize(turns, tol.max_denominator, tol.eps)?;
    if frac.num <= 0 {
        return None;
    }
    if (theta - 2.0 * PI * frac.value()).abs() <= tol.eps {
        Some(frac)
    } else {
        None
    }
}

/// Trace parameters of a generator pair. Imaginary contamination below
/// `tol.eps` is truncated; anything larger is an error.
pub fn params_of(f: &MoebiusMap, g: &MoebiusMap, tol: &Tolerances) -> Result<ParamTriple, MoebiusError> {
    let beta = f.beta();
    let beta_prime = g.beta();
    let commutator = *f * *g * f.inverse() * g.inverse();
    let gamma = commutator.trace() - Complex::new(2.0, 0.0);
    for (name, v) in [("beta", beta), ("beta_prime", beta_prime), ("gamma", gamma)] {
        if v.im.abs() > tol.eps {
            return Err(MoebiusError::NotRealParameters { name, imag: v.im.abs(), eps: tol.eps });
        }
    }
    Ok(ParamTriple::new(beta.re, beta_prime.re, gamma.re))
}

/// Both square-root branches `S = +-(M + I)/sqrt(tr M + 2)` of the matrix `M`.
///
/// The pair is a single PSL(2,C) element; the other PSL square root of the
/// transformation is obtained by calling this on `-M`.
pub fn sqrt_in_psl(m: &MoebiusMap, tol: &Tolerances) -> Result<(MoebiusMap, MoebiusMap), MoebiusError> {
    let t = m.trace();
    if (t + Complex::new(2.0, 0.0)).norm() <= tol.eps {
        return Err(MoebiusError::DegenerateSquareRoot);
    }
    let r = (t + Complex::new(2.0, 0.0)).sqrt();
    let s = MoebiusMap::from_entries(
        (m.a + Complex::new(1.0, 0.0)) / r,
        m.b / r,
        m.c / r,
        (m.d + Complex::new(1.0, 0.0)) / r,
    );
    Ok((s, s.neg()))
}

/// Eigenvector frame of a non-parabolic element: returns `q` with
/// `q^{-1} m q` diagonal and `det q = 1`.
fn eigenframe(m: &MoebiusMap) -> Option<MoebiusMap> {
    let t = m.trace();
    let disc = (t * t - Complex::new(4.0, 0.0)).sqrt();
    if disc.norm() < 1e-14 {
        return None;
    }
    let l1 = (t + disc) / 2.0;
    let l2 = (t - disc) / 2.0;
    let col = |lam: Complex| -> (Complex, Complex) {
        let v1 = (m.b, lam - m.a);
        let v2 = (lam - m.d, m.c);
        if v1.0.norm() + v1.1.norm() >= v2.0.norm() + v2.1.norm() {
            v1
        } else {
            v2
        }
    };
    let (x1, y1) = col(l1);
    let (x2, y2) = col(l2);
    let det = x1 * y2 - x2 * y1;
    if det.norm() < 1e-14 {
        return None;
    }
    let r = det.sqrt();
    Some(MoebiusMap::from_entries(x1 / r, x2 / r, y1 / r, y2 / r))
}

/// The `k` PSL k-th roots of an elliptic element that share its axis:
/// rotations by `(theta + 2 pi j)/k`, `j = 0..k-1`.
pub fn elliptic_kth_roots(m: &MoebiusMap, k: u32, tol: &Tolerances) -> Result<Vec<MoebiusMap>, MoebiusError> {
    if k == 0 {
        return Err(MoebiusError::ZeroRootOrder);
    }
    let class = classify_element(m, tol)?;
    if class.kind != ElementKind::Elliptic {
        return Err(MoebiusError::NotElliptic);
    }
    let q = eigenframe(m).ok_or(MoebiusError::NotElliptic)?;
    let qi = q.inverse();
    let d = qi * *m * q;
    // m acts as rotation by theta in this frame, lambda = e^{i theta / 2}
    let lam = d.a;
    let theta = Complex::new(0.0, -2.0) * lam.ln();
    let mut roots = Vec::with_capacity(k as usize);
    for j in 0..k {
        let phi = (theta + 2.0 * PI * j as f64) / k as f64;
        let mu = (Complex::new(0.0, 0.5) * phi).exp();
        let diag = MoebiusMap::from_entries(mu, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), mu.inv());
        roots.push((q * diag * qi).renormalized());
    }
    Ok(roots)
}

/// Replace the triple of a non-primitive elliptic generator (rotation angle
/// `2 pi q / n`) with the equivalent primitive one: `beta -> -4 sin^2(pi/n)`,
/// `gamma -> gamma * beta_new / beta`.
pub fn normalize_primitive(triple: &ParamTriple, q: u32, n: u32, tol: &Tolerances) -> Result<ParamTriple, MoebiusError> {
    if q == 1 {
        return Ok(*triple);
    }
    let expected = -4.0 * (q as f64 * PI / n as f64).sin().powi(2);
    if n < 3 || rational::gcd(q as u64, n as u64) != 1 || 2 * q >= n || (triple.beta - expected).abs() > tol.eps {
        return Err(MoebiusError::NotNonPrimitiveElliptic { beta: triple.beta, q, n });
    }
    let beta_new = -4.0 * (PI / n as f64).sin().powi(2);
    Ok(ParamTriple::new(
        beta_new,
        triple.beta_prime,
        triple.gamma * beta_new / triple.beta,
    ))
}

/// A normalized generator pair realizing a parameter triple, together with
/// the discarded root of the commutator equation (the conjugate choice).
#[derive(Debug, Clone, Copy)]
pub struct GeneratorPair {
    pub f: MoebiusMap,
    pub g: MoebiusMap,
    pub alternate_c: Complex,
}

/// Construct `f = [[s, 1], [0, 1/s]]`, `g = [[t, 0], [c, 1/t]]` with the
/// prescribed trace parameters. Requires `gamma != 0`.
pub fn construct_generators(triple: &ParamTriple, tol: &Tolerances) -> Result<GeneratorPair, MoebiusError> {
    if triple.gamma.abs() <= tol.eps {
        return Err(MoebiusError::ZeroGamma);
    }
    let x = Complex::new(triple.beta + 4.0, 0.0).sqrt();
    let y = Complex::new(triple.beta_prime + 4.0, 0.0).sqrt();
    let s = half_trace_root(x);
    let t = half_trace_root(y);
    let p = (s - s.inv()) * (t - t.inv());
    let disc = (p * p + 4.0 * triple.gamma).sqrt();
    let c1 = (-p + disc) / 2.0;
    let c2 = (-p - disc) / 2.0;
    let (c, other) = if c1.norm() >= c2.norm() { (c1, c2) } else { (c2, c1) };
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let f = MoebiusMap::from_entries(s, one, zero, s.inv());
    let g = MoebiusMap::from_entries(t, zero, c, t.inv());
    Ok(GeneratorPair { f, g, alternate_c: other })
}

fn half_trace_root(x: Complex) -> Complex {
    let s = (x + (x * x - Complex::new(4.0, 0.0)).sqrt()) / 2.0;
    if s.norm() < 1e-12 {
        // degenerate only when x = 0; pick the root i explicitly
        Complex::new(0.0, 1.0)
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use num_complex::Complex64 as Complex;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn rotation(theta: f64) -> MoebiusMap {
        let lam = (c(0.0, theta / 2.0)).exp();
        MoebiusMap::from_entries(lam, c(0.0, 0.0), c(0.0, 0.0), lam.inv())
    }

    #[test]
    fn classify_known_traces() {
        // tr = 1: beta = -3, elliptic of order 3, primitive
        let m = MoebiusMap::new_normalized(c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert!((m.trace().re - 1.0).abs() < 1e-12);
        let cl = classify_element(&m, &tol()).unwrap();
        assert_eq!(cl.kind, ElementKind::Elliptic);
        assert_eq!(cl.order, Some(3));
        assert_eq!(cl.primitive, Some(true));
        assert!((cl.rotation_angle.unwrap() - 2.0 * PI / 3.0).abs() < 1e-9);

        let id = MoebiusMap::identity();
        assert_eq!(classify_element(&id, &tol()).unwrap().kind, ElementKind::Identity);

        // tr = 2 cosh(0.5): hyperbolic
        let t = 2.0 * 0.5_f64.cosh();
        let lam = (t + (t * t - 4.0).sqrt()) / 2.0;
        let m = MoebiusMap::from_entries(c(lam, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / lam, 0.0));
        assert_eq!(classify_element(&m, &tol()).unwrap().kind, ElementKind::Hyperbolic);

        // tr = 0: beta = -4, elliptic of order 2
        let m = MoebiusMap::from_entries(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
        let cl = classify_element(&m, &tol()).unwrap();
        assert_eq!(cl.kind, ElementKind::Elliptic);
        assert_eq!(cl.order, Some(2));
    }

    #[test]
    fn classify_loxodromic_kinds() {
        // purely imaginary trace 3i: beta = -13 < -4, pi-loxodromic
        let t = c(0.0, 3.0);
        let lam = (t + (t * t - 4.0).sqrt()) / 2.0;
        let m = MoebiusMap::from_entries(lam, c(0.0, 0.0), c(0.0, 0.0), lam.inv());
        assert_eq!(classify_element(&m, &tol()).unwrap().kind, ElementKind::PiLoxodromic);

        // generic complex trace: strictly loxodromic
        let t = c(1.0, 1.0);
        let lam = (t + (t * t - 4.0).sqrt()) / 2.0;
        let m = MoebiusMap::from_entries(lam, c(0.0, 0.0), c(0.0, 0.0), lam.inv());
        assert_eq!(classify_element(&m, &tol()).unwrap().kind, ElementKind::StrictlyLoxodromic);
    }

    #[test]
    fn sqrt_identity_and_diagonal() {
        let (s1, s2) = sqrt_in_psl(&MoebiusMap::identity(), &tol()).unwrap();
        assert!(s1.projectively_equal(&MoebiusMap::identity(), 1e-12));
        assert_eq!(s1.distance(&s2.neg()), 0.0);

        let m = MoebiusMap::from_entries(c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.25, 0.0));
        let (s, _) = sqrt_in_psl(&m, &tol()).unwrap();
        assert!((s.a - c(2.0, 0.0)).norm() < 1e-12 && (s.d - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sqrt_random_trace_three() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..50 {
            // random SL2 with trace 3: conjugate diag(lam, 1/lam), lam + 1/lam = 3
            let lam = (3.0 + 5.0_f64.sqrt()) / 2.0;
            let d = MoebiusMap::from_entries(c(lam, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0 / lam, 0.0));
            let w = random_conjugator(&mut rng);
            let m = w * d * w.inverse();
            let (s, s2) = sqrt_in_psl(&m, &tol()).unwrap();
            for branch in [s, s2] {
                let sq = branch * branch;
                assert!(sq.distance(&m) < 1e-10, "residual {}", sq.distance(&m));
            }
        }
    }

    #[test]
    fn sqrt_degenerate_trace() {
        let m = MoebiusMap::from_entries(c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        assert!(matches!(sqrt_in_psl(&m, &tol()), Err(MoebiusError::DegenerateSquareRoot)));
    }

    fn random_conjugator(rng: &mut StdRng) -> MoebiusMap {
        let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let cc = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let mut d = (Complex::new(1.0, 0.0) + b * cc) / a;
        if !d.is_finite() {
            d = c(1.0, 0.0);
        }
        let m = MoebiusMap::from_entries(a, b, cc, d);
        m.renormalized()
    }

    #[test]
    fn kth_roots_angles() {
        let t = tol();
        // rotation by 2pi/3, k = 3: constructed angles {2pi/9, 8pi/9, 14pi/9};
        // canonical (trace-level) angles fold 14pi/9 to 4pi/9
        let m = rotation(2.0 * PI / 3.0);
        let roots = elliptic_kth_roots(&m, 3, &t).unwrap();
        let mut angles: Vec<f64> = roots
            .iter()
            .map(|r| classify_element(r, &t).unwrap().rotation_angle.unwrap())
            .collect();
        angles.sort_by(f64::total_cmp);
        let mut expected = [2.0 * PI / 9.0, 8.0 * PI / 9.0, 4.0 * PI / 9.0];
        expected.sort_by(f64::total_cmp);
        for (a, e) in angles.iter().zip(expected.iter()) {
            assert!((a - e).abs() < 1e-9, "{a} vs {e}");
        }
        for r in &roots {
            assert!(r.pow(3).projectively_equal(&m, 1e-10));
        }

        // order-2 rotation, k = 2: each root squares back to +-m
        let m = rotation(PI);
        for r in elliptic_kth_roots(&m, 2, &t).unwrap() {
            assert!((r * r).projectively_equal(&m, 1e-10));
            let cl = classify_element(&r, &t).unwrap();
            assert_eq!(cl.order, Some(4));
        }

        // order 10 (angle pi/5), k = 3: one root has angle pi/15
        let m = rotation(PI / 5.0);
        let roots = elliptic_kth_roots(&m, 3, &t).unwrap();
        assert!(roots.iter().any(|r| {
            let a = classify_element(r, &t).unwrap().rotation_angle.unwrap();
            (a - PI / 15.0).abs() < 1e-9
        }));
    }

    #[test]
    fn kth_roots_off_axis() {
        let t = tol();
        let mut rng = StdRng::seed_from_u64(5);
        let w = random_conjugator(&mut rng);
        let m = w * rotation(2.0 * PI / 5.0) * w.inverse();
        for r in elliptic_kth_roots(&m, 4, &t).unwrap() {
            assert!(r.pow(4).projectively_equal(&m, 1e-9));
        }
        let hyp = MoebiusMap::from_entries(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert!(matches!(elliptic_kth_roots(&hyp, 2, &t), Err(MoebiusError::NotElliptic)));
    }

    #[test]
    fn normalize_primitive_examples() {
        let t = tol();
        let triple = ParamTriple::new(-3.0, 1.0, 0.5);
        assert_eq!(normalize_primitive(&triple, 1, 3, &t).unwrap(), triple);

        // n = 5, q = 2
        let beta = -4.0 * (2.0 * PI / 5.0).sin().powi(2);
        let triple = ParamTriple::new(beta, 2.0, 1.0);
        let out = normalize_primitive(&triple, 2, 5, &t).unwrap();
        let bn = -4.0 * (PI / 5.0).sin().powi(2);
        assert!((out.beta - bn).abs() < 1e-12);
        assert!((out.beta - (5.0_f64.sqrt() - 5.0) / 2.0).abs() < 1e-9);
        assert!((out.gamma - bn / beta).abs() < 1e-12);

        // n = 7, q = 2, gamma = 1 -> sin^2(pi/7)/sin^2(2pi/7)
        let beta = -4.0 * (2.0 * PI / 7.0).sin().powi(2);
        let out = normalize_primitive(&ParamTriple::new(beta, 2.0, 1.0), 2, 7, &t).unwrap();
        let expect = (PI / 7.0).sin().powi(2) / (2.0 * PI / 7.0).sin().powi(2);
        assert!((out.gamma - expect).abs() < 1e-12);

        // mismatched beta
        assert!(normalize_primitive(&ParamTriple::new(-3.0, 1.0, 1.0), 2, 5, &t).is_err());
    }

    #[test]
    fn construct_and_roundtrip() {
        let t = tol();
        // sporadic triple with surd entries
        let r5 = 5.0_f64.sqrt();
        let triple = ParamTriple::new(-3.0, r5, (r5 + 1.0) / 2.0);
        let pair = construct_generators(&triple, &t).unwrap();
        let back = params_of(&pair.f, &pair.g, &t).unwrap();
        assert!((back.beta - triple.beta).abs() < 1e-9);
        assert!((back.beta_prime - triple.beta_prime).abs() < 1e-9);
        assert!((back.gamma - triple.gamma).abs() < 1e-9);

        // parabolic generators
        let pair = construct_generators(&ParamTriple::new(0.0, 0.0, 1.0), &t).unwrap();
        let back = params_of(&pair.f, &pair.g, &t).unwrap();
        assert!((back.gamma - 1.0).abs() < 1e-10);
        assert!(back.beta.abs() < 1e-10 && back.beta_prime.abs() < 1e-10);

        // half-turn f (beta = -4)
        let pair = construct_generators(&ParamTriple::new(-4.0, 2.0, 0.7), &t).unwrap();
        let back = params_of(&pair.f, &pair.g, &t).unwrap();
        assert!((back.beta + 4.0).abs() < 1e-10);
        assert!((back.gamma - 0.7).abs() < 1e-10);

        assert!(matches!(
            construct_generators(&ParamTriple::new(-3.0, 1.0, 0.0), &t),
            Err(MoebiusError::ZeroGamma)
        ));
    }

    #[test]
    fn roundtrip_randomized_truly_spatial() {
        let t = tol();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..500 {
            let n = [3u32, 5, 7, 9, 11][rng.gen_range(0..5)];
            let beta = -4.0 * (PI / n as f64).sin().powi(2);
            let bp = rng.gen_range(0.01..20.0);
            let gamma = rng.gen_range(1e-6..(-beta * bp / 4.0) * (1.0 - 1e-9));
            let pair = construct_generators(&ParamTriple::new(beta, bp, gamma), &t).unwrap();
            let back = params_of(&pair.f, &pair.g, &t).unwrap();
            assert!((back.beta - beta).abs() < 1e-9);
            assert!((back.beta_prime - bp).abs() < 1e-9);
            assert!((back.gamma - gamma).abs() < 1e-9);
        }
    }

    #[test]
    fn gamma_symmetric_in_generators() {
        let t = tol();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let triple = ParamTriple::new(
                rng.gen_range(-3.9..2.0),
                rng.gen_range(-3.9..2.0),
                rng.gen_range(0.1..2.0),
            );
            let Ok(pair) = construct_generators(&triple, &t) else { continue };
            let ab = params_of(&pair.f, &pair.g, &t).unwrap();
            let ba = params_of(&pair.g, &pair.f, &t).unwrap();
            assert!((ab.gamma - ba.gamma).abs() < 1e-9);
        }
    }

    #[test]
    fn classify_conjugation_invariant() {
        let t = tol();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let theta = rng.gen_range(0.1..3.0);
            let m = rotation(theta);
            let w = random_conjugator(&mut rng);
            let conj = w * m * w.inverse();
            let c1 = classify_element(&m, &t).unwrap();
            let c2 = classify_element(&conj, &t).unwrap();
            assert_eq!(c1.kind, c2.kind);
            if let (Some(a1), Some(a2)) = (c1.rotation_angle, c2.rotation_angle) {
                assert!((a1 - a2).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn json_matrix_roundtrip() {
        let m = MoebiusMap::new_normalized(c(1.5, 0.25), c(0.5, 0.0), c(0.0, 1.0), c(2.0, -0.125));
        let s = serde_json::to_string(&m).unwrap();
        let back: MoebiusMap = serde_json::from_str(&s).unwrap();
        assert!(m.projectively_equal(&back, 1e-12));
        assert!(serde_json::from_str::<MoebiusMap>("[[1,0],[0,0],[0,0],[2,0]]").is_err());
    }

    proptest::proptest! {
        #[test]
        fn construct_params_roundtrip(
            nn in proptest::sample::select(vec![3u32, 5, 7, 9, 11]),
            bp in 0.01f64..20.0,
            gfrac in 1e-4f64..0.9999,
        ) {
            let t = Tolerances::default();
            let beta = -4.0 * (PI / nn as f64).sin().powi(2);
            let gamma = gfrac * (-beta * bp / 4.0);
            let pair = construct_generators(&ParamTriple::new(beta, bp, gamma), &t).unwrap();
            let back = params_of(&pair.f, &pair.g, &t).unwrap();
            proptest::prop_assert!((back.beta - beta).abs() < 1e-9);
            proptest::prop_assert!((back.beta_prime - bp).abs() < 1e-9);
            proptest::prop_assert!((back.gamma - gamma).abs() < 1e-9);
        }
    }
}
