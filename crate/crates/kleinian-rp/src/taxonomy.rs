//! Gate deciding which discreteness machinery applies to a parameter triple:
//! elementary, invariant-plane, truly spatial, or degenerate (order-2
//! generator).

use serde::Serialize;
use thiserror::Error;

use crate::config::Tolerances;
use crate::moebius::ParamTriple;

#[derive(Debug, Error)]
pub enum TaxonomyError {
    #[error("parameters must be finite reals")]
    NotRealParameters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Elementary,
    InvariantPlane,
    TrulySpatial,
    /// An order-2 generator (`beta = -4` or `beta' = -4`); such groups are
    /// elementary or have an invariant plane and are handled elsewhere.
    Degenerate,
}

/// Outcome of the gate. `reason` is a machine tag; elementary vs.
/// invariant-plane separation from parameters alone is indicative only.
#[derive(Debug, Clone, Serialize)]
pub struct GroupSpaceClass {
    pub kind: SpaceKind,
    /// Number of generators with `beta < -4` (non-real trace), 0..=2.
    pub pi_lox_count: u8,
    pub reason: &'static str,
}

/// The strict inequality `(-1)^k gamma < (-1)^{k+1} beta beta' / 4`.
pub fn truly_spatial_inequality(triple: &ParamTriple, k: u8) -> bool {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * triple.gamma < -sign * triple.beta * triple.beta_prime / 4.0
}

/// Classify a triple: truly spatial iff the inequality holds strictly with
/// `gamma != 0` and neither generator of order 2; boundary cases are never
/// truly spatial.
pub fn classify_pair(triple: &ParamTriple, tol: &Tolerances) -> Result<GroupSpaceClass, TaxonomyError> {
    if !triple.is_finite() {
        return Err(TaxonomyError::NotRealParameters);
    }
    let k = [triple.beta, triple.beta_prime]
        .iter()
        .filter(|&&b| b < -4.0 - tol.eps)
        .count() as u8;
    if (triple.beta + 4.0).abs() <= tol.eps || (triple.beta_prime + 4.0).abs() <= tol.eps {
        return Ok(GroupSpaceClass {
            kind: SpaceKind::Degenerate,
            pi_lox_count: k,
            reason: "order_two_generator",
        });
    }
    if triple.gamma.abs() <= tol.eps {
        return Ok(GroupSpaceClass {
            kind: SpaceKind::Elementary,
            pi_lox_count: k,
            reason: "gamma_zero_shared_fixed_point",
        });
    }
    // boundary exclusion: within eps of equality is not truly spatial
    let lhs = if k % 2 == 0 { triple.gamma } else { -triple.gamma };
    let rhs = if k % 2 == 0 { -1.0 } else { 1.0 } * triple.beta * triple.beta_prime / 4.0;
    if lhs < rhs - tol.eps {
        Ok(GroupSpaceClass {
            kind: SpaceKind::TrulySpatial,
            pi_lox_count: k,
            reason: "separating_inequality_strict",
        })
    } else if (lhs - rhs).abs() <= tol.eps {
        Ok(GroupSpaceClass {
            kind: SpaceKind::InvariantPlane,
            pi_lox_count: k,
            reason: "separating_inequality_boundary",
        })
    } else {
        // indicative only: both elliptic suggests a finite (elementary)
        // configuration, otherwise an invariant plane
        let both_elliptic = triple.beta < 0.0 && triple.beta_prime < 0.0 && k == 0;
        Ok(GroupSpaceClass {
            kind: if both_elliptic { SpaceKind::Elementary } else { SpaceKind::InvariantPlane },
            pi_lox_count: k,
            reason: "separating_inequality_fails",
        })
    }
}
