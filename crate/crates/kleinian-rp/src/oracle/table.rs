//! The 41-row parameter classification table: closed-form matching and
//! enumeration of the integer-parameter families.
//!
//! Triples are `(beta, beta', gamma)`. Rows 21-41 cover the pairs with an
//! odd-order elliptic generator and a hyperbolic one with crossing axes; the
//! earlier rows cover the other generator configurations and are matched on
//! parameters only.
//!
//! Every closed form here is pinned against the independent witness
//! construction by the equivalence tests; in particular row 31's last
//! summand (`+3`), row 41's surd coefficient (`7`), and the
//! `beta (beta + 1)` denominator in `V` are all forced by that
//! cross-validation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::{EnumCaps, Tolerances};
use crate::moebius::ParamTriple;
use crate::rational::gcd;
use crate::taxonomy::truly_spatial_inequality;

use super::OracleError;

/// A row matched by a triple, with the solved integer parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowMatch {
    pub row: u32,
    pub params: Vec<(&'static str, i64)>,
}

/// One enumerated instance of a row.
#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedTriple {
    pub row: u32,
    pub triple: ParamTriple,
    pub params: Vec<(&'static str, i64)>,
}

/// Offsets used to sample rows whose parameter runs over a closed half-line.
pub const CLOSED_INTERVAL_OFFSETS: [f64; 3] = [0.0, 0.42, 1.75];
/// Offsets for open half-lines (the endpoint itself is excluded).
pub const OPEN_INTERVAL_OFFSETS: [f64; 3] = [0.37, 1.49, 3.1];

pub fn beta_of_order(n: u32) -> f64 {
    -4.0 * (PI / n as f64).sin().powi(2)
}

/// `U` appearing in the beta' forms of rows 21-26.
pub fn u_term(beta: f64, gamma: f64, n: u32) -> f64 {
    let c = (PI / n as f64).cos();
    -2.0 * ((gamma - beta).powi(2) * c + gamma * (gamma + beta)) / (gamma * beta)
}

/// `V` appearing in the beta' forms of rows 27-28 (corrected denominator).
pub fn v_term(beta: f64, n: u32) -> f64 {
    let c = (PI / n as f64).cos();
    -2.0 * (beta + 2.0).powi(2) * c / (beta * (beta + 1.0))
        - 2.0 * (beta * beta + 6.0 * beta + 4.0) / beta
}

fn sq(x: f64) -> f64 {
    x * x
}

/// Solve `beta = -4 sin^2(pi/n)` for an integer `n in [lo, cap]`.
fn solve_order(beta: f64, lo: u32, cap: u32, eps: f64) -> Option<u32> {
    if !(-4.0..0.0).contains(&beta) {
        return None;
    }
    let x = ((-beta).sqrt() / 2.0).clamp(0.0, 1.0).asin();
    if x <= 0.0 {
        return None;
    }
    let n = (PI / x).round();
    if !n.is_finite() || n < lo as f64 || n > cap as f64 {
        return None;
    }
    let n = n as u32;
    ((beta_of_order(n) - beta).abs() <= eps).then_some(n)
}

/// Solve `value = cos(pi/p)` for an integer `p in [lo, cap]`.
fn solve_cos_pi(value: f64, lo: u32, cap: u32, eps: f64) -> Option<u32> {
    if !(-1.0..1.0).contains(&value) {
        return None;
    }
    let p = (PI / value.acos()).round();
    if !p.is_finite() || p < lo as f64 || p > cap as f64 {
        return None;
    }
    let p = p as u32;
    (((PI / p as f64).cos() - value).abs() <= eps).then_some(p)
}

/// Solve `value = cos(2 pi/m)` for an integer `m in [lo, cap]`.
fn solve_cos_2pi(value: f64, lo: u32, cap: u32, eps: f64) -> Option<u32> {
    if !(-1.0..1.0).contains(&value) {
        return None;
    }
    let m = (2.0 * PI / value.acos()).round();
    if !m.is_finite() || m < lo as f64 || m > cap as f64 {
        return None;
    }
    let m = m as u32;
    (((2.0 * PI / m as f64).cos() - value).abs() <= eps).then_some(m)
}

fn admissible(triple: &ParamTriple, tol: &Tolerances) -> bool {
    // every enumerated instance must be truly spatial
    triple.is_finite()
        && triple.gamma.abs() > tol.eps
        && (triple.beta + 4.0).abs() > tol.eps
        && (triple.beta_prime + 4.0).abs() > tol.eps
        && {
            let k = [triple.beta, triple.beta_prime]
                .iter()
                .filter(|&&b| b < -4.0)
                .count() as u8;
            truly_spatial_inequality(triple, k)
        }
}

// ---------------------------------------------------------------------------
// row value functions (beta, gamma and beta' families)
// ---------------------------------------------------------------------------

/// gamma of rows 21/22/25/26 and 14/15/18/19: `2(cos(2pi/m) + cos(2pi/n))`.
fn gamma_mn(m: u32, n: u32) -> f64 {
    2.0 * ((2.0 * PI / m as f64).cos() + (2.0 * PI / n as f64).cos())
}

fn row21_beta_prime(beta: f64, gamma: f64, n: u32, p: u32) -> f64 {
    (2.0 / gamma) * ((PI / p as f64).cos() - (PI / n as f64).cos()) + u_term(beta, gamma, n)
}

fn row22_lower(beta: f64, gamma: f64, n: u32) -> f64 {
    2.0 * (1.0 - (PI / n as f64).cos()) / gamma + u_term(beta, gamma, n)
}

fn row25_beta_prime(beta: f64, gamma: f64, n: u32, p: u32) -> f64 {
    2.0 * (gamma - beta) * (PI / p as f64).cos() / gamma + u_term(beta, gamma, n)
}

fn row26_lower(beta: f64, gamma: f64, n: u32) -> f64 {
    2.0 * (gamma - beta) / gamma + u_term(beta, gamma, n)
}

fn row27_beta_prime(beta: f64, n: u32, p: u32) -> f64 {
    2.0 * sq(beta + 2.0) * (PI / p as f64).cos() / (beta + 1.0) + v_term(beta, n)
}

fn row28_lower(beta: f64, n: u32) -> f64 {
    2.0 * sq(beta + 2.0) / (beta + 1.0) + v_term(beta, n)
}

fn row29_beta_prime(beta: f64, n: u32) -> f64 {
    2.0 * ((beta - 3.0) * (PI / n as f64).cos() - 2.0 * beta - 3.0) / beta
}

fn row30_beta_prime(beta: f64, n: u32) -> f64 {
    -6.0 * (2.0 * (PI / n as f64).cos() + beta + 2.0) / beta
}

/// Corrected row 31: `beta' = 2(gamma^2 + 2 gamma + 3)/gamma`.
fn row31_beta_prime(gamma: f64) -> f64 {
    2.0 * (gamma * gamma + 2.0 * gamma + 3.0) / gamma
}

/// The eight sporadic triples of rows 34-41 (row 41 corrected).
pub fn sporadic_rows() -> [(u32, ParamTriple); 8] {
    let r5 = 5.0_f64.sqrt();
    let b5 = (r5 - 5.0) / 2.0;
    [
        (34, ParamTriple::new(-3.0, r5, (r5 + 1.0) / 2.0)),
        (35, ParamTriple::new(-3.0, r5, (r5 - 1.0) / 2.0)),
        (36, ParamTriple::new(-3.0, r5 - 1.0, (r5 - 1.0) / 2.0)),
        (37, ParamTriple::new(b5, r5, (r5 - 1.0) / 2.0)),
        (38, ParamTriple::new(b5, (3.0 * r5 - 1.0) / 2.0, (r5 - 1.0) / 2.0)),
        (39, ParamTriple::new(b5, 3.0 * (r5 + 1.0) / 2.0, (r5 - 1.0) / 2.0)),
        (40, ParamTriple::new(b5, 3.0 * (r5 + 1.0) / 2.0, (r5 + 1.0) / 2.0)),
        (41, ParamTriple::new(b5, (7.0 * r5 + 9.0) / 2.0, r5 + 2.0)),
    ]
}

// ---------------------------------------------------------------------------
// matching
// ---------------------------------------------------------------------------

/// Match a triple against every row, solving the integer parameters under
/// `caps` within `tol.eps_match`. Interval forms are containment checks with
/// closed endpoints. Returns all matches, sorted by row.
pub fn match_table(triple: &ParamTriple, caps: &EnumCaps, tol: &Tolerances) -> Vec<RowMatch> {
    let mut out = Vec::new();
    let eps = tol.eps_match;
    let (b, bp, gm) = (triple.beta, triple.beta_prime, triple.gamma);

    let near = |x: f64, y: f64| (x - y).abs() <= eps;
    let push = |out: &mut Vec<RowMatch>, row: u32, params: Vec<(&'static str, i64)>| {
        out.push(RowMatch { row, params });
    };

    // ---- rows 1-3: both generators elliptic ----
    if let (Some(n), Some(m)) = (
        solve_order(b, 3, caps.max_n, eps),
        solve_order(bp, 3, caps.max_m, eps),
    ) {
        if gm < 0.0 {
            if let Some(p) = solve_cos_pi(((-gm) / 4.0).sqrt(), 2, caps.max_p, eps) {
                if near(gm, -4.0 * sq((PI / p as f64).cos()))
                    && (PI / p as f64).cos() > (PI / n as f64).sin() * (PI / m as f64).sin()
                {
                    push(&mut out, 1, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                }
            }
        }
        if gm <= -4.0 + eps {
            push(&mut out, 2, vec![("n", n as i64), ("m", m as i64)]);
        }
    }
    if let Some(n) = solve_order(b, 7, caps.max_n, eps) {
        if n % 2 == 1 && near(gm, -sq(b + 2.0)) && near(bp, b) {
            push(&mut out, 3, vec![("n", n as i64)]);
        }
    }

    // ---- rows 4-5: elliptic with parabolic ----
    if let Some(n) = solve_order(b, 3, caps.max_n, eps) {
        if bp.abs() <= eps {
            if gm < 0.0 {
                if let Some(p) = solve_cos_pi(((-gm) / 4.0).sqrt(), 3, caps.max_p, eps) {
                    if near(gm, -4.0 * sq((PI / p as f64).cos())) {
                        push(&mut out, 4, vec![("n", n as i64), ("p", p as i64)]);
                    }
                }
            }
            if gm <= -4.0 + eps {
                push(&mut out, 5, vec![("n", n as i64)]);
            }
        }
    }

    // ---- rows 6-7: parabolic/hyperbolic pairs ----
    if b >= -eps && bp >= -eps {
        if gm < 0.0 {
            if let Some(p) = solve_cos_pi(((-gm) / 4.0).sqrt(), 3, caps.max_p, eps) {
                if near(gm, -4.0 * sq((PI / p as f64).cos())) {
                    push(&mut out, 6, vec![("p", p as i64)]);
                }
            }
        }
        if gm <= -4.0 + eps {
            push(&mut out, 7, vec![]);
        }
    }

    // ---- rows 8-13: elliptic with hyperbolic, disjoint axes ----
    if let Some(n) = solve_order(b, 3, caps.max_n, eps) {
        if bp > eps {
            if gm < 0.0 {
                if let Some(p) = solve_cos_pi(((-gm) / 4.0).sqrt(), 3, caps.max_p, eps) {
                    if near(gm, -4.0 * sq((PI / p as f64).cos())) {
                        push(&mut out, 8, vec![("n", n as i64), ("p", p as i64)]);
                    }
                }
            }
            if gm <= -4.0 + eps {
                push(&mut out, 9, vec![("n", n as i64)]);
            }
        }
        if n >= 5 && n % 2 == 1 && near(gm, -sq(b + 2.0)) {
            let val = (bp + 4.0) / (4.0 * (b + 4.0));
            if val > 0.0 {
                if let Some(p) = solve_cos_pi(val.sqrt(), 4, caps.max_p, eps) {
                    if near(bp, 4.0 * (b + 4.0) * sq((PI / p as f64).cos()) - 4.0) {
                        push(&mut out, 10, vec![("n", n as i64), ("p", p as i64)]);
                    }
                }
            }
            if bp >= 4.0 * (b + 3.0) - eps {
                push(&mut out, 11, vec![("n", n as i64)]);
            }
        }
    }
    let r5 = 5.0_f64.sqrt();
    if near(b, -3.0) && near(gm, (r5 - 3.0) / 2.0) {
        let val = (bp + 4.0) / (2.0 * (7.0 + 3.0 * r5));
        if val > 0.0 {
            if let Some(p) = solve_cos_pi(val.sqrt(), 3, caps.max_p, eps) {
                if near(bp, 2.0 * sq((PI / p as f64).cos()) * (7.0 + 3.0 * r5) - 4.0) {
                    push(&mut out, 12, vec![("p", p as i64)]);
                }
            }
        }
        if bp >= 2.0 * (5.0 + 3.0 * r5) - eps {
            push(&mut out, 13, vec![]);
        }
    }

    // ---- rows 14-20: even-order elliptic with hyperbolic, crossing axes ----
    if let Some(n) = solve_order(b, 4, caps.max_n, eps) {
        if n % 2 == 0 {
            let cm = gm / 2.0 - (2.0 * PI / n as f64).cos();
            if let Some(m) = solve_cos_2pi(cm, 3, caps.max_m, eps) {
                if near(gm, gamma_mn(m, n)) && 2 * (n as u64 + m as u64) < n as u64 * m as u64 {
                    if m % 2 == 0 {
                        let val = (bp + 4.0 * gm / b) * gm / 4.0;
                        if val > 0.0 {
                            if let Some(p) = solve_cos_pi(val.sqrt(), 3, caps.max_p, eps) {
                                if near(bp, 4.0 * sq((PI / p as f64).cos()) / gm - 4.0 * gm / b) {
                                    push(&mut out, 14, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                                }
                            }
                        }
                        if bp >= 4.0 / gm - 4.0 * gm / b - eps {
                            push(&mut out, 15, vec![("n", n as i64), ("m", m as i64)]);
                        }
                    } else {
                        let val = (bp + 4.0 * gm / b) * gm / (4.0 * (gm - b));
                        if val > 0.0 {
                            if let Some(p) = solve_cos_pi(val.sqrt(), 3, caps.max_p, eps) {
                                if near(bp, 4.0 * (gm - b) * sq((PI / p as f64).cos()) / gm - 4.0 * gm / b) {
                                    push(&mut out, 18, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                                }
                            }
                        }
                        if bp >= 4.0 * (gm - b) / gm - 4.0 * gm / b - eps {
                            push(&mut out, 19, vec![("n", n as i64), ("m", m as i64)]);
                        }
                    }
                }
            }
            if gm >= b + 4.0 - eps {
                let val = (bp + 4.0 * gm / b) * gm / 4.0;
                if val > 0.0 {
                    if let Some(p) = solve_cos_pi(val.sqrt(), 3, caps.max_p, eps) {
                        if near(bp, 4.0 * sq((PI / p as f64).cos()) / gm - 4.0 * gm / b) {
                            push(&mut out, 16, vec![("n", n as i64), ("p", p as i64)]);
                        }
                    }
                }
                if bp >= 4.0 / gm - 4.0 * gm / b - eps {
                    push(&mut out, 17, vec![("n", n as i64)]);
                }
            }
        }
    }
    if near(b, -2.0) && gm > 0.0 {
        if let Some(m) = solve_cos_2pi(gm / 2.0, 5, caps.max_m, eps) {
            if m % 2 == 1 && near(gm, 2.0 * (2.0 * PI / m as f64).cos()) && near(bp, gm * gm + 4.0 * gm) {
                push(&mut out, 20, vec![("m", m as i64)]);
            }
        }
    }

    // ---- rows 21-33: odd-order elliptic with hyperbolic, crossing axes ----
    if let Some(n) = solve_order(b, 3, caps.max_n, eps) {
        if n % 2 == 1 && gm.abs() > eps {
            let u = u_term(b, gm, n);
            let cm = gm / 2.0 - (2.0 * PI / n as f64).cos();
            if let Some(m) = solve_cos_2pi(cm, 3, caps.max_m, eps) {
                if near(gm, gamma_mn(m, n)) && 2 * (n as u64 + m as u64) < n as u64 * m as u64 {
                    if m % 2 == 0 {
                        let val = (bp - u) * gm / 2.0 + (PI / n as f64).cos();
                        if let Some(p) = solve_cos_pi(val, 2, caps.max_p, eps) {
                            if near(bp, row21_beta_prime(b, gm, n, p)) {
                                push(&mut out, 21, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                            }
                        }
                        if bp >= row22_lower(b, gm, n) - eps {
                            push(&mut out, 22, vec![("n", n as i64), ("m", m as i64)]);
                        }
                    } else {
                        let val = (bp - u) * gm / (2.0 * (gm - b));
                        if let Some(p) = solve_cos_pi(val, 2, caps.max_p, eps) {
                            if near(bp, row25_beta_prime(b, gm, n, p)) {
                                push(&mut out, 25, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                            }
                        }
                        if bp >= row26_lower(b, gm, n) - eps {
                            push(&mut out, 26, vec![("n", n as i64), ("m", m as i64)]);
                        }
                    }
                }
            }
            if gm >= b + 4.0 - eps {
                let val = (bp - u) * gm / 2.0 + (PI / n as f64).cos();
                if let Some(p) = solve_cos_pi(val, 2, caps.max_p, eps) {
                    if near(bp, row21_beta_prime(b, gm, n, p)) {
                        push(&mut out, 23, vec![("n", n as i64), ("p", p as i64)]);
                    }
                }
                if bp >= row22_lower(b, gm, n) - eps {
                    push(&mut out, 24, vec![("n", n as i64)]);
                }
            }
            if n >= 7 && near(gm, (b + 4.0) * (b + 1.0)) {
                let val = (bp - v_term(b, n)) * (b + 1.0) / (2.0 * sq(b + 2.0));
                if let Some(p) = solve_cos_pi(val, 2, caps.max_p, eps) {
                    if near(bp, row27_beta_prime(b, n, p)) {
                        push(&mut out, 27, vec![("n", n as i64), ("p", p as i64)]);
                    }
                }
                if bp >= row28_lower(b, n) - eps {
                    push(&mut out, 28, vec![("n", n as i64)]);
                }
            }
            if n >= 5 && gcd(n as u64, 3) == 1 {
                if near(gm, b + 3.0) && near(bp, row29_beta_prime(b, n)) {
                    push(&mut out, 29, vec![("n", n as i64)]);
                }
                if near(gm, 2.0 * (b + 3.0)) && near(bp, row30_beta_prime(b, n)) {
                    push(&mut out, 30, vec![("n", n as i64)]);
                }
            }
        }
    }
    if near(b, -3.0) {
        if let Some(m) = solve_cos_2pi((gm + 1.0) / 2.0, 7, caps.max_m, eps) {
            if m % 2 == 1
                && near(gm, 2.0 * (2.0 * PI / m as f64).cos() - 1.0)
                && near(bp, row31_beta_prime(gm))
            {
                push(&mut out, 31, vec![("m", m as i64)]);
            }
        }
        if let Some(m) = solve_cos_pi((gm + 1.0) / 2.0, 4, caps.max_m, eps) {
            if gcd(m as u64, 3) == 1
                && near(gm, 2.0 * (PI / m as f64).cos() - 1.0)
                && near(bp, gm * gm + 4.0 * gm)
            {
                push(&mut out, 32, vec![("m", m as i64)]);
            }
        }
        if let Some(m) = solve_cos_2pi(gm / 2.0, 7, caps.max_m, eps) {
            if gcd(m as u64, 4) <= 2 && near(gm, 2.0 * (2.0 * PI / m as f64).cos()) && near(bp, 2.0 * gm) {
                push(&mut out, 33, vec![("m", m as i64)]);
            }
        }
    }

    // ---- rows 34-41: sporadic ----
    for (row, t) in sporadic_rows() {
        if near(b, t.beta) && near(bp, t.beta_prime) && near(gm, t.gamma) {
            push(&mut out, row, vec![]);
        }
    }

    out.sort_by(|a, b| (a.row, &a.params).cmp(&(b.row, &b.params)));
    out
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// Enumerate the admissible integer-parameter instances of one row under the
/// caps. Rows with a free real parameter are sampled at the closed endpoint
/// plus a fixed offset ladder. Every yielded triple is truly spatial.
pub fn enumerate_row(row: u32, caps: &EnumCaps, tol: &Tolerances) -> Result<Vec<EnumeratedTriple>, OracleError> {
    if !(1..=41).contains(&row) {
        return Err(OracleError::InvalidRow(row));
    }
    let mut out: Vec<EnumeratedTriple> = Vec::new();
    let mut push = |row: u32, triple: ParamTriple, params: Vec<(&'static str, i64)>| {
        if admissible(&triple, tol) {
            out.push(EnumeratedTriple { row, triple, params });
        }
    };
    let closed = CLOSED_INTERVAL_OFFSETS;
    let open = OPEN_INTERVAL_OFFSETS;
    let r5 = 5.0_f64.sqrt();

    match row {
        1 => {
            for n in 3..=caps.max_n {
                for m in 3..=caps.max_m {
                    for p in 3..=caps.max_p {
                        let cp = (PI / p as f64).cos();
                        if cp > (PI / n as f64).sin() * (PI / m as f64).sin() {
                            let t = ParamTriple::new(beta_of_order(n), beta_of_order(m), -4.0 * sq(cp));
                            push(1, t, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                        }
                    }
                }
            }
        }
        2 => {
            for n in 3..=caps.max_n {
                for m in 3..=caps.max_m {
                    for off in closed {
                        let t = ParamTriple::new(beta_of_order(n), beta_of_order(m), -4.0 - off);
                        push(2, t, vec![("n", n as i64), ("m", m as i64)]);
                    }
                }
            }
        }
        3 => {
            for n in (7..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                push(3, ParamTriple::new(b, b, -sq(b + 2.0)), vec![("n", n as i64)]);
            }
        }
        4 => {
            for n in 3..=caps.max_n {
                for p in 3..=caps.max_p {
                    let t = ParamTriple::new(beta_of_order(n), 0.0, -4.0 * sq((PI / p as f64).cos()));
                    push(4, t, vec![("n", n as i64), ("p", p as i64)]);
                }
            }
        }
        5 => {
            for n in 3..=caps.max_n {
                for off in closed {
                    push(5, ParamTriple::new(beta_of_order(n), 0.0, -4.0 - off), vec![("n", n as i64)]);
                }
            }
        }
        6 => {
            for boff in closed {
                for bpoff in closed {
                    for p in 3..=caps.max_p {
                        let t = ParamTriple::new(boff, bpoff, -4.0 * sq((PI / p as f64).cos()));
                        push(6, t, vec![("p", p as i64)]);
                    }
                }
            }
        }
        7 => {
            for boff in closed {
                for bpoff in closed {
                    for goff in closed {
                        push(7, ParamTriple::new(boff, bpoff, -4.0 - goff), vec![]);
                    }
                }
            }
        }
        8 => {
            for n in 3..=caps.max_n {
                for p in 3..=caps.max_p {
                    for bpoff in open {
                        let t = ParamTriple::new(beta_of_order(n), bpoff, -4.0 * sq((PI / p as f64).cos()));
                        push(8, t, vec![("n", n as i64), ("p", p as i64)]);
                    }
                }
            }
        }
        9 => {
            for n in 3..=caps.max_n {
                for goff in closed {
                    for bpoff in open {
                        push(9, ParamTriple::new(beta_of_order(n), bpoff, -4.0 - goff), vec![("n", n as i64)]);
                    }
                }
            }
        }
        10 => {
            for n in (5..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                for p in 4..=caps.max_p {
                    let bp = 4.0 * (b + 4.0) * sq((PI / p as f64).cos()) - 4.0;
                    push(10, ParamTriple::new(b, bp, -sq(b + 2.0)), vec![("n", n as i64), ("p", p as i64)]);
                }
            }
        }
        11 => {
            for n in (5..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                for off in closed {
                    let bp = 4.0 * (b + 3.0) + off;
                    push(11, ParamTriple::new(b, bp, -sq(b + 2.0)), vec![("n", n as i64)]);
                }
            }
        }
        12 => {
            for p in 3..=caps.max_p {
                let bp = 2.0 * sq((PI / p as f64).cos()) * (7.0 + 3.0 * r5) - 4.0;
                push(12, ParamTriple::new(-3.0, bp, (r5 - 3.0) / 2.0), vec![("p", p as i64)]);
            }
        }
        13 => {
            for off in closed {
                let bp = 2.0 * (5.0 + 3.0 * r5) + off;
                push(13, ParamTriple::new(-3.0, bp, (r5 - 3.0) / 2.0), vec![]);
            }
        }
        14 | 15 | 18 | 19 => {
            for n in (4..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                for m in 3..=caps.max_m {
                    if 2 * (n as u64 + m as u64) >= n as u64 * m as u64 {
                        continue;
                    }
                    let want_even = row == 14 || row == 15;
                    if (m % 2 == 0) != want_even {
                        continue;
                    }
                    let gm = gamma_mn(m, n);
                    if gm <= 0.0 {
                        continue;
                    }
                    match row {
                        14 => {
                            for p in 3..=caps.max_p {
                                let bp = 4.0 * sq((PI / p as f64).cos()) / gm - 4.0 * gm / b;
                                push(14, ParamTriple::new(b, bp, gm), vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                            }
                        }
                        15 => {
                            for off in closed {
                                let bp = 4.0 / gm - 4.0 * gm / b + off;
                                push(15, ParamTriple::new(b, bp, gm), vec![("n", n as i64), ("m", m as i64)]);
                            }
                        }
                        18 => {
                            for p in 3..=caps.max_p {
                                let bp = 4.0 * (gm - b) * sq((PI / p as f64).cos()) / gm - 4.0 * gm / b;
                                push(18, ParamTriple::new(b, bp, gm), vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                            }
                        }
                        _ => {
                            for off in closed {
                                let bp = 4.0 * (gm - b) / gm - 4.0 * gm / b + off;
                                push(19, ParamTriple::new(b, bp, gm), vec![("n", n as i64), ("m", m as i64)]);
                            }
                        }
                    }
                }
            }
        }
        16 | 17 => {
            for n in (4..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                for goff in closed {
                    let gm = b + 4.0 + goff;
                    if row == 16 {
                        for p in 3..=caps.max_p {
                            let bp = 4.0 * sq((PI / p as f64).cos()) / gm - 4.0 * gm / b;
                            push(16, ParamTriple::new(b, bp, gm), vec![("n", n as i64), ("p", p as i64)]);
                        }
                    } else {
                        for off in closed {
                            let bp = 4.0 / gm - 4.0 * gm / b + off;
                            push(17, ParamTriple::new(b, bp, gm), vec![("n", n as i64)]);
                        }
                    }
                }
            }
        }
        20 => {
            for m in (5..=caps.max_m).step_by(2) {
                let gm = 2.0 * (2.0 * PI / m as f64).cos();
                push(20, ParamTriple::new(-2.0, gm * gm + 4.0 * gm, gm), vec![("m", m as i64)]);
            }
        }
        21 | 22 | 25 | 26 => {
            for n in (3..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                for m in 3..=caps.max_m {
                    if 2 * (n as u64 + m as u64) >= n as u64 * m as u64 {
                        continue;
                    }
                    let want_even = row == 21 || row == 22;
                    if (m % 2 == 0) != want_even {
                        continue;
                    }
                    let gm = gamma_mn(m, n);
                    if gm <= 0.0 {
                        continue;
                    }
                    match row {
                        21 => {
                            for p in 2..=caps.max_p {
                                let t = ParamTriple::new(b, row21_beta_prime(b, gm, n, p), gm);
                                push(21, t, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                            }
                        }
                        22 => {
                            for off in closed {
                                let t = ParamTriple::new(b, row22_lower(b, gm, n) + off, gm);
                                push(22, t, vec![("n", n as i64), ("m", m as i64)]);
                            }
                        }
                        25 => {
                            for p in 2..=caps.max_p {
                                let t = ParamTriple::new(b, row25_beta_prime(b, gm, n, p), gm);
                                push(25, t, vec![("n", n as i64), ("m", m as i64), ("p", p as i64)]);
                            }
                        }
                        _ => {
                            for off in closed {
                                let t = ParamTriple::new(b, row26_lower(b, gm, n) + off, gm);
                                push(26, t, vec![("n", n as i64), ("m", m as i64)]);
                            }
                        }
                    }
                }
            }
        }
        23 | 24 => {
            for n in (3..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                for goff in closed {
                    let gm = b + 4.0 + goff;
                    if row == 23 {
                        for p in 2..=caps.max_p {
                            let t = ParamTriple::new(b, row21_beta_prime(b, gm, n, p), gm);
                            push(23, t, vec![("n", n as i64), ("p", p as i64)]);
                        }
                    } else {
                        for off in closed {
                            let t = ParamTriple::new(b, row22_lower(b, gm, n) + off, gm);
                            push(24, t, vec![("n", n as i64)]);
                        }
                    }
                }
            }
        }
        27 | 28 => {
            for n in (7..=caps.max_n).step_by(2) {
                let b = beta_of_order(n);
                let gm = (b + 4.0) * (b + 1.0);
                if gm <= 0.0 {
                    continue;
                }
                if row == 27 {
                    for p in 2..=caps.max_p {
                        let t = ParamTriple::new(b, row27_beta_prime(b, n, p), gm);
                        push(27, t, vec![("n", n as i64), ("p", p as i64)]);
                    }
                } else {
                    for off in closed {
                        let t = ParamTriple::new(b, row28_lower(b, n) + off, gm);
                        push(28, t, vec![("n", n as i64)]);
                    }
                }
            }
        }
        29 | 30 => {
            for n in (5..=caps.max_n).step_by(2) {
                if gcd(n as u64, 3) != 1 {
                    continue;
                }
                let b = beta_of_order(n);
                if row == 29 {
                    let t = ParamTriple::new(b, row29_beta_prime(b, n), b + 3.0);
                    push(29, t, vec![("n", n as i64)]);
                } else {
                    let t = ParamTriple::new(b, row30_beta_prime(b, n), 2.0 * (b + 3.0));
                    push(30, t, vec![("n", n as i64)]);
                }
            }
        }
        31 => {
            for m in (7..=caps.max_m).step_by(2) {
                let gm = 2.0 * (2.0 * PI / m as f64).cos() - 1.0;
                push(31, ParamTriple::new(-3.0, row31_beta_prime(gm), gm), vec![("m", m as i64)]);
            }
        }
        32 => {
            for m in 4..=caps.max_m {
                if gcd(m as u64, 3) != 1 {
                    continue;
                }
                let gm = 2.0 * (PI / m as f64).cos() - 1.0;
                push(32, ParamTriple::new(-3.0, gm * gm + 4.0 * gm, gm), vec![("m", m as i64)]);
            }
        }
        33 => {
            for m in 7..=caps.max_m {
                if gcd(m as u64, 4) > 2 {
                    continue;
                }
                let gm = 2.0 * (2.0 * PI / m as f64).cos();
                push(33, ParamTriple::new(-3.0, 2.0 * gm, gm), vec![("m", m as i64)]);
            }
        }
        34..=41 => {
            for (r, t) in sporadic_rows() {
                if r == row {
                    push(row, t, vec![]);
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}
