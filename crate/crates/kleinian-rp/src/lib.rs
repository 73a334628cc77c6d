//! Discreteness of two-generator subgroups of PSL(2,C) with real trace parameters.
//!
//! A group `<f, g>` is described by the real triple `(beta, beta', gamma)` with
//! `beta = tr^2 f - 4`, `beta' = tr^2 g - 4`, `gamma = tr [f,g] - 2`. For a
//! primitive elliptic `f` of odd order and a hyperbolic `g` whose axes meet
//! non-orthogonally, discreteness is decided two independent ways:
//!
//! * constructing the witness elements `h1..h4` (square roots of specific
//!   words in `f` and `g`, with the branch fixed by a geometric side
//!   condition) and checking their element classes clause by clause;
//! * matching the parameter triple against the closed-form classification
//!   table and solving for the integer parameters.
//!
//! The two paths cross-validate each other; [`oracle::decide_triple`] and
//! [`oracle::decide_matrices`] run both and report agreement.

pub mod config;
pub mod rational;
pub mod moebius;
pub mod geometry;
pub mod taxonomy;
pub mod witnesses;
pub mod oracle;
pub mod orbifold353;
pub mod cli;

pub use config::{EnumCaps, Tolerances};
pub use moebius::{ElementClass, ElementKind, MoebiusMap, ParamTriple};
pub use oracle::{decide_matrices, decide_triple, DiscretenessVerdict, Status};
