//! Construction of the auxiliary elements `h1..h4` from a generator pair.
//!
//! Each witness is a square root of a specific word in `f` and `g`. A word
//! value `W` has two square roots as transformations (the roots of `W` and of
//! `-W`); the geometric side condition singles out one of them:
//!
//! * `h1`: `h1^2 = g f g^-1 f` and `(h1 f^-1)^2 = 1`;
//! * `h2`: `h2^2 = f^a g^-1 f^-1 g f^-(a+1) g f^-1 g^-1` (a = (n-1)/2) and
//!   `h2 g f g^-1` elliptic with axis meeting the axis of `f`;
//! * `h3` (h1 elliptic): `h3^2 = f^a g^-1 h1^-1 g f^-(a-1) h1^-1` and
//!   `h3 h1` elliptic with axis meeting the axis of `f`;
//! * `h4` (h1 a square of a primitive order-n rotation, n >= 7):
//!   `h4^2 = f^(a-1) g^-1 t g f^-(a+1) t f^-1` with `t` the primitive square
//!   root of `h1` on its axis, and `h4 f t^-1` elliptic meeting `f`.

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

use crate::config::Tolerances;
use crate::geometry::{self, axes_relation, axis_of, AxisRelation, Geodesic};
use crate::moebius::{
    classify_element, elliptic_kth_roots, sqrt_in_psl, ElementClass, ElementKind, MoebiusMap,
    MoebiusError,
};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("hypothesis violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("{witness}: {passing} branch(es) satisfy the side condition")]
    BranchAmbiguity { witness: &'static str, passing: usize },
    #[error("witness not defined in this regime: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Algebra(#[from] MoebiusError),
}

/// The witness elements for one generator pair, with their classes and the
/// residuals of their defining word relations.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessSet {
    /// Order of the elliptic generator `f`.
    pub n: u32,
    pub h1: MoebiusMap,
    pub h2: MoebiusMap,
    pub h3: Option<MoebiusMap>,
    pub tilde_h1: Option<MoebiusMap>,
    pub h4: Option<MoebiusMap>,
    pub tilde_h2: Option<MoebiusMap>,
    pub h1_class: ElementClass,
    pub h2_class: ElementClass,
    pub h3_class: Option<ElementClass>,
    pub h4_class: Option<ElementClass>,
    /// Projective residuals of `h_i^2` against the defining words.
    pub residuals: WitnessResiduals,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct WitnessResiduals {
    pub h1: f64,
    pub h2: f64,
    pub h3: Option<f64>,
    pub h4: Option<f64>,
    pub tilde_h1: Option<f64>,
    /// Achieved separation between axis(h2 g f g^-1) and axis(f).
    pub h2_axis_distance: f64,
}

/// Check the hypothesis: `f` primitive elliptic of odd order `n >= 3`, `g`
/// hyperbolic, axes intersecting non-orthogonally. Returns `n`.
pub fn check_hypothesis(f: &MoebiusMap, g: &MoebiusMap, tol: &Tolerances) -> Result<u32, WitnessError> {
    let cf = classify_element(f, tol)?;
    if cf.kind != ElementKind::Elliptic {
        return Err(WitnessError::PreconditionViolated("f is not elliptic"));
    }
    let n = match (cf.order, cf.primitive) {
        (Some(n), Some(true)) if n >= 3 && n % 2 == 1 => n,
        _ => return Err(WitnessError::PreconditionViolated("f is not primitive of odd order >= 3")),
    };
    let cg = classify_element(g, tol)?;
    if cg.kind != ElementKind::Hyperbolic {
        return Err(WitnessError::PreconditionViolated("g is not hyperbolic"));
    }
    let af = axis_of(f, tol).map_err(|_| WitnessError::PreconditionViolated("f has no axis"))?;
    let ag = axis_of(g, tol).map_err(|_| WitnessError::PreconditionViolated("g has no axis"))?;
    match axes_relation(&af, &ag, tol) {
        Ok(AxisRelation::Intersecting { angle }) => {
            if (angle - PI / 2.0).abs() <= tol.eps_axis {
                return Err(WitnessError::PreconditionViolated("axes intersect orthogonally"));
            }
        }
        _ => return Err(WitnessError::PreconditionViolated("axes do not intersect")),
    }
    Ok(n)
}

/// The two square roots of the transformation `w` (roots of `+w` and `-w`).
fn psl_sqrt_candidates(w: &MoebiusMap, tol: &Tolerances) -> Vec<MoebiusMap> {
    let mut out = Vec::with_capacity(2);
    if let Ok((s, _)) = sqrt_in_psl(w, tol) {
        out.push(s);
    }
    if let Ok((s, _)) = sqrt_in_psl(&w.neg(), tol) {
        out.push(s);
    }
    out
}

fn select_branch(
    witness: &'static str,
    w: &MoebiusMap,
    tol: &Tolerances,
    cond: impl Fn(&MoebiusMap) -> bool,
) -> Result<MoebiusMap, WitnessError> {
    let candidates = psl_sqrt_candidates(w, tol);
    let passing: Vec<&MoebiusMap> = candidates.iter().filter(|s| cond(s)).collect();
    if passing.len() == 1 {
        Ok(*passing[0])
    } else {
        Err(WitnessError::BranchAmbiguity { witness, passing: passing.len() })
    }
}

/// Elliptic with axis meeting `axis_f`, the side condition shared by
/// `h2`/`h3`/`h4`.
fn elliptic_meeting(x: &MoebiusMap, axis_f: &Geodesic, tol: &Tolerances) -> bool {
    let Ok(class) = classify_element(x, tol) else { return false };
    if class.kind != ElementKind::Elliptic {
        return false;
    }
    match axis_of(x, tol) {
        Ok(ax) => geometry::axes_meet(&ax, axis_f, tol),
        Err(_) => false,
    }
}

/// Separation `|Re acosh(cosh sigma)|` between the axes of `x` and `axis_f`.
fn axis_separation(x: &MoebiusMap, axis_f: &Geodesic, tol: &Tolerances) -> f64 {
    match axis_of(x, tol) {
        Ok(ax) => geometry::cosh_complex_distance(&ax, axis_f).acosh().re.abs(),
        Err(_) => f64::INFINITY,
    }
}

pub fn word_h1(f: &MoebiusMap, g: &MoebiusMap) -> MoebiusMap {
    *g * *f * g.inverse() * *f
}

pub fn word_h2(f: &MoebiusMap, g: &MoebiusMap, n: u32) -> MoebiusMap {
    let a = (n as i64 - 1) / 2;
    f.pow(a) * g.inverse() * f.inverse() * *g * f.pow(-(a + 1)) * *g * f.inverse() * g.inverse()
}

pub fn word_h3(f: &MoebiusMap, g: &MoebiusMap, h1: &MoebiusMap, n: u32) -> MoebiusMap {
    let a = (n as i64 - 1) / 2;
    f.pow(a) * g.inverse() * h1.inverse() * *g * f.pow(-(a - 1)) * h1.inverse()
}

pub fn word_h4(f: &MoebiusMap, g: &MoebiusMap, tilde_h1: &MoebiusMap, n: u32) -> MoebiusMap {
    let a = (n as i64 - 1) / 2;
    f.pow(a - 1) * g.inverse() * *tilde_h1 * *g * f.pow(-(a + 1)) * *tilde_h1 * f.inverse()
}

/// `h1`: branch of the square root of `g f g^-1 f` with `tr(h1 f^-1) = 0`.
pub fn build_h1(f: &MoebiusMap, g: &MoebiusMap, tol: &Tolerances) -> Result<MoebiusMap, WitnessError> {
    check_hypothesis(f, g, tol)?;
    build_h1_unchecked(f, g, tol)
}

pub(crate) fn build_h1_unchecked(
    f: &MoebiusMap,
    g: &MoebiusMap,
    tol: &Tolerances,
) -> Result<MoebiusMap, WitnessError> {
    let w = word_h1(f, g);
    let fi = f.inverse();
    select_branch("h1", &w, tol, |s| (*s * fi).trace().norm() <= tol.eps)
}

/// `h2`: branch whose product with `g f g^-1` is elliptic with axis meeting
/// the axis of `f`.
pub fn build_h2(f: &MoebiusMap, g: &MoebiusMap, n: u32, tol: &Tolerances) -> Result<MoebiusMap, WitnessError> {
    let axis_f = axis_of(f, tol).map_err(|_| WitnessError::PreconditionViolated("f has no axis"))?;
    let w = word_h2(f, g, n);
    let conj = *g * *f * g.inverse();
    select_branch("h2", &w, tol, |s| elliptic_meeting(&(*s * conj), &axis_f, tol))
}

/// `h3`, defined when `h1` is elliptic: branch with `h3 h1` elliptic meeting
/// the axis of `f`.
pub fn build_h3(
    f: &MoebiusMap,
    g: &MoebiusMap,
    h1: &MoebiusMap,
    n: u32,
    tol: &Tolerances,
) -> Result<MoebiusMap, WitnessError> {
    let c1 = classify_element(h1, tol)?;
    if c1.kind != ElementKind::Elliptic {
        return Err(WitnessError::NotApplicable("h1 is not elliptic"));
    }
    let axis_f = axis_of(f, tol).map_err(|_| WitnessError::PreconditionViolated("f has no axis"))?;
    let w = word_h3(f, g, h1, n);
    select_branch("h3", &w, tol, |s| elliptic_meeting(&(*s * *h1), &axis_f, tol))
}

/// `tilde_h1` and `h4`, defined when `h1` is a rotation by `4 pi / n` with
/// `n >= 7`: `tilde_h1` is the square root of `h1` on the same axis that is
/// primitive of order `n`; the `h4` branch is fixed by `h4 f tilde_h1^-1`
/// elliptic meeting the axis of `f`.
pub fn build_h4(
    f: &MoebiusMap,
    g: &MoebiusMap,
    h1: &MoebiusMap,
    n: u32,
    tol: &Tolerances,
) -> Result<(MoebiusMap, MoebiusMap), WitnessError> {
    if n < 7 {
        return Err(WitnessError::NotApplicable("order of f below 7"));
    }
    let c1 = classify_element(h1, tol)?;
    let angle = match (c1.kind, c1.rotation_angle) {
        (ElementKind::Elliptic, Some(a)) => a,
        _ => return Err(WitnessError::NotApplicable("h1 is not elliptic")),
    };
    if (angle - 4.0 * PI / n as f64).abs() > tol.eps {
        return Err(WitnessError::NotApplicable("h1 angle differs from 4 pi / n"));
    }
    let tilde = elliptic_kth_roots(h1, 2, tol)?
        .into_iter()
        .find(|r| {
            classify_element(r, tol)
                .map(|c| c.order == Some(n) && c.primitive == Some(true))
                .unwrap_or(false)
        })
        .ok_or(WitnessError::NotApplicable("no primitive square root of h1"))?;
    let axis_f = axis_of(f, tol).map_err(|_| WitnessError::PreconditionViolated("f has no axis"))?;
    let w = word_h4(f, g, &tilde, n);
    let ti = tilde.inverse();
    let h4 = select_branch("h4", &w, tol, |s| elliptic_meeting(&(*s * *f * ti), &axis_f, tol))?;
    Ok((tilde, h4))
}

/// Cube root of `h2` on its axis that is primitive of order `2n`; present in
/// the regime where `h2` is a rotation by `3 pi / n`.
pub fn build_tilde_h2(h2: &MoebiusMap, n: u32, tol: &Tolerances) -> Option<MoebiusMap> {
    let c2 = classify_element(h2, tol).ok()?;
    if c2.kind != ElementKind::Elliptic {
        return None;
    }
    if (c2.rotation_angle? - 3.0 * PI / n as f64).abs() > tol.eps {
        return None;
    }
    elliptic_kth_roots(h2, 3, tol).ok()?.into_iter().find(|r| {
        classify_element(r, tol)
            .map(|c| c.order == Some(2 * n) && c.primitive == Some(true))
            .unwrap_or(false)
    })
}

impl WitnessSet {
    /// Build all witnesses applicable to the pair `(f, g)`.
    pub fn build(f: &MoebiusMap, g: &MoebiusMap, tol: &Tolerances) -> Result<WitnessSet, WitnessError> {
        let n = check_hypothesis(f, g, tol)?;
        let h1 = build_h1_unchecked(f, g, tol)?;
        let h2 = build_h2(f, g, n, tol)?;
        let h1_class = classify_element(&h1, tol)?;
        let h2_class = classify_element(&h2, tol)?;
        let axis_f = axis_of(f, tol).map_err(|_| WitnessError::PreconditionViolated("f has no axis"))?;
        let mut residuals = WitnessResiduals {
            h1: (h1 * h1).projective_distance(&word_h1(f, g)),
            h2: (h2 * h2).projective_distance(&word_h2(f, g, n)),
            h2_axis_distance: axis_separation(&(h2 * *g * *f * g.inverse()), &axis_f, tol),
            ..Default::default()
        };

        let mut h3 = None;
        let mut h3_class = None;
        if h1_class.kind == ElementKind::Elliptic {
            if let Ok(w3) = build_h3(f, g, &h1, n, tol) {
                residuals.h3 = Some((w3 * w3).projective_distance(&word_h3(f, g, &h1, n)));
                h3_class = Some(classify_element(&w3, tol)?);
                h3 = Some(w3);
            }
        }

        let mut tilde_h1 = None;
        let mut h4 = None;
        let mut h4_class = None;
        if let Ok((t1, w4)) = build_h4(f, g, &h1, n, tol) {
            residuals.tilde_h1 = Some((t1 * t1).projective_distance(&h1));
            residuals.h4 = Some((w4 * w4).projective_distance(&word_h4(f, g, &t1, n)));
            h4_class = Some(classify_element(&w4, tol)?);
            tilde_h1 = Some(t1);
            h4 = Some(w4);
        }

        let tilde_h2 = build_tilde_h2(&h2, n, tol);

        Ok(WitnessSet {
            n,
            h1,
            h2,
            h3,
            tilde_h1,
            h4,
            tilde_h2,
            h1_class,
            h2_class,
            h3_class,
            h4_class,
            residuals,
        })
    }
}
