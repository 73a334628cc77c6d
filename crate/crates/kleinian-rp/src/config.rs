//! Numeric tolerances and enumeration caps shared across the crate.

use serde::{Deserialize, Serialize};

/// Tolerances for classification, determinant checks and table matching.
///
/// Defaults leave roughly six decimal digits of headroom over double
/// precision for products of word length up to ~30.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Classification tolerance (trace reality, parabolic window, angle match).
    pub eps: f64,
    /// Determinant deviation allowed after constructors and products.
    pub eps_det: f64,
    /// Axis-incidence tolerance; looser than `eps` because an axis compounds
    /// two root extractions.
    pub eps_axis: f64,
    /// Tolerance for matching a triple against a table row.
    pub eps_match: f64,
    /// Maximum denominator for rational rotation-angle recognition.
    pub max_denominator: u32,
    /// Matrices are renormalized to unit determinant every this many products.
    pub renorm_period: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps: 1e-9,
            eps_det: 1e-12,
            eps_axis: 1e-7,
            eps_match: 1e-8,
            max_denominator: 1000,
            renorm_period: 8,
        }
    }
}

impl Tolerances {
    /// Copy with a different row-matching tolerance.
    pub fn with_eps_match(mut self, eps_match: f64) -> Self {
        self.eps_match = eps_match;
        self
    }
}

/// Upper bounds on the integer parameters solved for when matching or
/// enumerating table rows.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct EnumCaps {
    pub max_n: u32,
    pub max_m: u32,
    pub max_p: u32,
    pub max_k: u32,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps::uniform(200)
    }
}

impl EnumCaps {
    /// Same cap for every parameter.
    pub fn uniform(cap: u32) -> Self {
        EnumCaps {
            max_n: cap,
            max_m: cap,
            max_p: cap,
            max_k: cap,
        }
    }
}
