//! The discreteness decision: witness-based clause checking and table
//! matching, cross-validated against each other.

pub mod table;
pub mod theorem_a;

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

use crate::config::{EnumCaps, Tolerances};
use crate::moebius::{
    classify_element, construct_generators, normalize_primitive, params_of, ElementKind,
    MoebiusMap, MoebiusError, ParamTriple,
};
use crate::rational;
use crate::taxonomy::{classify_pair, GroupSpaceClass, SpaceKind, TaxonomyError};
use crate::witnesses::{WitnessError, WitnessSet};

pub use table::{enumerate_row, match_table, EnumeratedTriple, RowMatch};
pub use theorem_a::{check_theorem_a, ClauseId, ClauseMatch, TheoremAOutcome};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("row index {0} outside 1..=41")]
    InvalidRow(u32),
    #[error(transparent)]
    Algebra(#[from] MoebiusError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Discrete,
    NotDiscrete,
    OutOfScope,
}

/// Combined verdict of the two decision paths.
#[derive(Debug, Clone, Serialize)]
pub struct DiscretenessVerdict {
    pub status: Status,
    pub space: GroupSpaceClass,
    /// Input triple as given.
    pub input_triple: ParamTriple,
    /// Triple after replacing a non-primitive elliptic generator.
    pub triple: ParamTriple,
    pub matched_rows: Vec<RowMatch>,
    pub theorem_a: Option<TheoremAOutcome>,
    /// Set when both paths ran: true iff their verdicts coincide.
    pub agreement: Option<bool>,
    pub notes: Vec<String>,
}

/// Recognize `beta` in `(-4, 0)` as `-4 sin^2(q pi / n)` in lowest terms.
fn elliptic_order_of_beta(beta: f64, tol: &Tolerances) -> Option<(u32, u32)> {
    if !(-4.0..0.0).contains(&beta) {
        return None;
    }
    // rotation angle theta in (0, pi] with beta = -4 sin^2(theta/2)
    let theta = 2.0 * ((-beta).sqrt() / 2.0).clamp(0.0, 1.0).asin();
    let frac = rational::recognize(theta / (2.0 * PI), tol.max_denominator, tol.eps)?;
    if frac.num <= 0 {
        return None;
    }
    let (q, n) = (frac.num as u32, frac.den);
    let expected = -4.0 * (q as f64 * PI / n as f64).sin().powi(2);
    ((beta - expected).abs() <= tol.eps).then_some((q, n))
}

/// True when the triple lies in the hypothesis region of the witness path:
/// `beta = -4 sin^2(pi/n)` with odd `n >= 3`, `beta' > 0`, and
/// `0 < gamma < -beta beta' / 4`.
pub fn witness_region(triple: &ParamTriple, tol: &Tolerances) -> Option<u32> {
    let (q, n) = elliptic_order_of_beta(triple.beta, tol)?;
    if q != 1 || n < 3 || n % 2 == 0 {
        return None;
    }
    if triple.beta_prime <= tol.eps || triple.gamma <= tol.eps {
        return None;
    }
    (triple.gamma < -triple.beta * triple.beta_prime / 4.0 - tol.eps).then_some(n)
}

/// Decide a parameter triple. Generators are synthesized when the triple
/// falls in the witness region.
pub fn decide_triple(
    triple: &ParamTriple,
    caps: &EnumCaps,
    tol: &Tolerances,
) -> Result<DiscretenessVerdict, OracleError> {
    decide_core(triple, None, caps, tol)
}

/// Decide a generator pair given by matrices; the witness path uses the
/// supplied matrices (after replacing a non-primitive elliptic generator by
/// its primitive power).
pub fn decide_matrices(
    f: &MoebiusMap,
    g: &MoebiusMap,
    caps: &EnumCaps,
    tol: &Tolerances,
) -> Result<DiscretenessVerdict, OracleError> {
    let triple = params_of(f, g, tol)?;
    decide_core(&triple, Some((*f, *g)), caps, tol)
}

fn out_of_scope(
    space: GroupSpaceClass,
    triple: &ParamTriple,
    note: &str,
) -> DiscretenessVerdict {
    DiscretenessVerdict {
        status: Status::OutOfScope,
        space,
        input_triple: *triple,
        triple: *triple,
        matched_rows: Vec::new(),
        theorem_a: None,
        agreement: None,
        notes: vec![note.to_string()],
    }
}

fn decide_core(
    input: &ParamTriple,
    matrices: Option<(MoebiusMap, MoebiusMap)>,
    caps: &EnumCaps,
    tol: &Tolerances,
) -> Result<DiscretenessVerdict, OracleError> {
    let space = classify_pair(input, tol)?;
    match space.kind {
        SpaceKind::Degenerate => {
            return Ok(out_of_scope(
                space,
                input,
                "order-2 generator: delegated to the elementary and invariant-plane classifications",
            ));
        }
        SpaceKind::Elementary => {
            return Ok(out_of_scope(
                space,
                input,
                "delegated to the elementary-group classification",
            ));
        }
        SpaceKind::InvariantPlane => {
            return Ok(out_of_scope(
                space,
                input,
                "delegated to the invariant-plane (Fuchsian-type) classification",
            ));
        }
        SpaceKind::TrulySpatial => {}
    }
    if space.pi_lox_count >= 1 {
        return Ok(out_of_scope(
            space,
            input,
            "a generator has non-real trace: outside the real-trace classification",
        ));
    }

    let mut notes = Vec::new();

    // orient: the elliptic parameter goes first
    let mut work = *input;
    let mut pair = matrices;
    if work.beta > 0.0 && (-4.0..0.0).contains(&work.beta_prime) {
        work = ParamTriple::new(work.beta_prime, work.beta, work.gamma);
        pair = pair.map(|(f, g)| (g, f));
        notes.push("generators swapped so the elliptic parameter comes first".into());
    }

    // replace a non-primitive elliptic generator by its primitive power
    if let Some((q, n)) = elliptic_order_of_beta(work.beta, tol) {
        if q > 1 {
            work = normalize_primitive(&work, q, n, tol)?;
            notes.push(format!("non-primitive elliptic generator normalized (q = {q}, n = {n})"));
            if let Some((f, g)) = pair {
                pair = find_primitive_power(&f, n, tol).map(|fp| (fp, g));
                if pair.is_none() {
                    notes.push("no primitive power found; witness path on synthesized generators".into());
                }
            }
        }
    }

    let matched_rows = match_table(&work, caps, tol);
    let table_discrete = !matched_rows.is_empty();

    let mut theorem_a_outcome = None;
    if witness_region(&work, tol).is_some() {
        let pair_matrices = match pair {
            Some(p) => Some(p),
            None => match construct_generators(&work, tol) {
                Ok(gp) => Some((gp.f, gp.g)),
                Err(e) => {
                    notes.push(format!("generator construction failed: {e}"));
                    None
                }
            },
        };
        if let Some((f, g)) = pair_matrices {
            match WitnessSet::build(&f, &g, tol) {
                Ok(ws) => match check_theorem_a(&f, &g, &ws, tol) {
                    Ok(outcome) => theorem_a_outcome = Some(outcome),
                    Err(e) => notes.push(format!("clause check failed: {e}")),
                },
                Err(e) => notes.push(format!("witness construction failed: {e}")),
            }
        }
    }

    let agreement = theorem_a_outcome
        .as_ref()
        .map(|o| o.discrete == table_discrete);
    if agreement == Some(false) {
        notes.push("paths disagree; reporting the table verdict".into());
    }

    Ok(DiscretenessVerdict {
        status: if table_discrete { Status::Discrete } else { Status::NotDiscrete },
        space,
        input_triple: *input,
        triple: work,
        matched_rows,
        theorem_a: theorem_a_outcome,
        agreement,
        notes,
    })
}

/// The power of `f` that is a primitive rotation of the same order.
fn find_primitive_power(f: &MoebiusMap, n: u32, tol: &Tolerances) -> Option<MoebiusMap> {
    for j in 1..n {
        let fj = f.pow(j as i64);
        if let Ok(c) = classify_element(&fj, tol) {
            if c.kind == ElementKind::Elliptic && c.order == Some(n) && c.primitive == Some(true) {
                return Some(fj);
            }
        }
    }
    None
}
