//! Clause-by-clause discreteness check over the witness elements.

use std::fmt;

use serde::Serialize;
use std::f64::consts::PI;

use crate::config::Tolerances;
use crate::moebius::{classify_element, ElementClass, ElementKind, MoebiusMap};
use crate::rational::gcd;
use crate::witnesses::WitnessSet;

use super::OracleError;

/// The seven acceptance clauses, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClauseId::I => "i",
            ClauseId::II => "ii",
            ClauseId::III => "iii",
            ClauseId::IV => "iv",
            ClauseId::V => "v",
            ClauseId::VI => "vi",
            ClauseId::VII => "vii",
        };
        f.write_str(s)
    }
}

/// One satisfied clause with its solved side parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ClauseMatch {
    pub clause: ClauseId,
    pub params: Vec<(&'static str, String)>,
}

/// Result of the clause scan: first satisfied clause wins, all satisfied
/// clauses are recorded, failures leave per-clause notes.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremAOutcome {
    pub discrete: bool,
    pub matched: Option<ClauseMatch>,
    pub all_matched: Vec<ClauseMatch>,
    pub notes: Vec<String>,
}

/// `theta` matches `2 pi q / d` within eps; returns the reduced `(q, d)`.
fn angle_fraction(class: &ElementClass) -> Option<(u32, u32)> {
    class.angle_fraction
}

/// Exact test `2/n + 1/m < 1` over integers.
fn clause_i_order_bound(n: u32, m: u32) -> bool {
    2 * m as u64 + (n as u64) < (n as u64) * (m as u64)
}

/// Exact test `1/n + 1/m < 1/2` over integers.
fn odd_order_bound(n: u32, m: u32) -> bool {
    2 * (n as u64 + m as u64) < (n as u64) * (m as u64)
}

fn h_even_ok(class: &ElementClass, min_half_order: u32, n_for_bound: Option<u32>) -> bool {
    match class.kind {
        ElementKind::Hyperbolic | ElementKind::Parabolic => true,
        ElementKind::Elliptic => match class.primitive_even_half_order() {
            Some(m) => {
                m >= min_half_order
                    && n_for_bound.map(|n| clause_i_order_bound(n, m)).unwrap_or(true)
            }
            None => false,
        },
        _ => false,
    }
}

/// Rotation amount as `pi / l` with rational `l`: from angle `2 pi q / d`,
/// `l = d / (2q)` reduced. Returns `(num, den)` of `l`.
fn pi_over_l(fraction: (u32, u32)) -> (u32, u32) {
    let (q, d) = fraction;
    let g = gcd(d as u64, (2 * q) as u64) as u32;
    (d / g, 2 * q / g)
}

/// Rotation amount as `4 pi / k` with integer `k`, if so expressible.
fn four_pi_over_k(fraction: (u32, u32)) -> Option<u32> {
    let (q, d) = fraction;
    // 2 pi q / d = 4 pi / k  <=>  k = 2 d / q
    if (2 * d) % q == 0 {
        Some(2 * d / q)
    } else {
        None
    }
}

fn clause_ii_list(n: u32, m: u32, l: (u32, u32)) -> bool {
    // sporadic triples
    if (n, m) == (5, 2) && [(5, 2), (5, 3), (3, 2)].contains(&l) {
        return true;
    }
    if (n, m) == (3, 5) && [(3, 2), (5, 4)].contains(&l) {
        return true;
    }
    if (n, m) == (5, 3) && l == (5, 4) {
        return true;
    }
    // families: l = m/3 (already reduced since gcd(m, 3) = 1)
    if n == 3 && m >= 4 && gcd(m as u64, 3) == 1 && l == (m, 3) {
        return true;
    }
    if m == 3 && n >= 5 && gcd(n as u64, 3) == 1 && l == (n, 3) {
        return true;
    }
    false
}

/// Evaluate the clauses in order against the witness classes; the element
/// classes of the auxiliary products (`h2 g f g^-1`, `tilde_h2^2 g f g^-1`)
/// are computed on demand.
pub fn check_theorem_a(
    f: &MoebiusMap,
    g: &MoebiusMap,
    ws: &WitnessSet,
    tol: &Tolerances,
) -> Result<TheoremAOutcome, OracleError> {
    let n = ws.n;
    let c1 = &ws.h1_class;
    let c2 = &ws.h2_class;
    let mut matched: Vec<ClauseMatch> = Vec::new();
    let mut notes: Vec<String> = Vec::new();

    // (i): h1 hyperbolic/parabolic/primitive even order 2m (2/n + 1/m < 1),
    //      h2 hyperbolic/parabolic/primitive even order 2l (l >= 2)
    if h_even_ok(c1, 2, Some(n)) && h_even_ok(c2, 2, None) {
        let mut params = vec![];
        if let Some(m) = c1.primitive_even_half_order() {
            params.push(("m", m.to_string()));
        }
        if let Some(l) = c2.primitive_even_half_order() {
            params.push(("l", l.to_string()));
        }
        matched.push(ClauseMatch { clause: ClauseId::I, params });
    } else {
        notes.push("i: witness classes outside the even-order family".into());
    }

    // (ii): h1, h2 rotations by pi/m and pi/l with (n, m, l) in the finite list
    if c1.kind == ElementKind::Elliptic && c2.kind == ElementKind::Elliptic {
        if let (Some(f1), Some(f2)) = (angle_fraction(c1), angle_fraction(c2)) {
            let (mn, md) = pi_over_l(f1);
            let l = pi_over_l(f2);
            if md == 1 && clause_ii_list(n, mn, l) {
                matched.push(ClauseMatch {
                    clause: ClauseId::II,
                    params: vec![
                        ("n", n.to_string()),
                        ("m", mn.to_string()),
                        ("l", format!("{}/{}", l.0, l.1)),
                    ],
                });
            } else {
                notes.push(format!("ii: rotation pair (pi*{md}/{mn}, pi*{}/{}) not in the list", l.1, l.0));
            }
        }
    }

    // (iii): n = 3, h1 hyperbolic, h2 a rotation by 4 pi / k,
    //        h2 g f g^-1 primitive elliptic of order p, (k, p) admissible
    if n == 3 && c1.kind == ElementKind::Hyperbolic && c2.kind == ElementKind::Elliptic {
        if let Some(k) = angle_fraction(c2).and_then(four_pi_over_k) {
            let x = ws.h2 * *g * *f * g.inverse();
            let cx = classify_element(&x, tol)?;
            if cx.kind == ElementKind::Elliptic && cx.primitive == Some(true) {
                let p = cx.order.unwrap_or(0);
                let admissible = (k, p) == (6, 5) || (p == 3 && k >= 7 && gcd(k as u64, 4) <= 2);
                if admissible {
                    matched.push(ClauseMatch {
                        clause: ClauseId::III,
                        params: vec![("k", k.to_string()), ("p", p.to_string())],
                    });
                } else {
                    notes.push(format!("iii: pair ({k}, {p}) not admissible"));
                }
            }
        }
    }

    // (iv): h1 hyperbolic, h2 the cube of a primitive order-2n rotation,
    //       tilde_h2^2 g f g^-1 a rotation by 4 pi / k, (n, k) admissible
    if c1.kind == ElementKind::Hyperbolic && c2.kind == ElementKind::Elliptic {
        if let Some(angle) = c2.rotation_angle {
            if (angle - 3.0 * PI / n as f64).abs() <= tol.eps {
                if let Some(tilde_h2) = &ws.tilde_h2 {
                    let x = *tilde_h2 * *tilde_h2 * *g * *f * g.inverse();
                    let cx = classify_element(&x, tol)?;
                    if cx.kind == ElementKind::Elliptic {
                        if let Some(k) = angle_fraction(&cx).and_then(four_pi_over_k) {
                            let admissible =
                                (n, k) == (5, 5) || (k == 4 && n >= 5 && gcd(n as u64, 3) == 1);
                            if admissible {
                                matched.push(ClauseMatch {
                                    clause: ClauseId::IV,
                                    params: vec![("n", n.to_string()), ("k", k.to_string())],
                                });
                            } else {
                                notes.push(format!("iv: pair ({n}, {k}) not admissible"));
                            }
                        }
                    }
                }
            }
        }
    }

    // (v)/(vi): h1 primitive elliptic of odd order, decided through h3
    if c1.kind == ElementKind::Elliptic && c1.primitive == Some(true) {
        if let Some(mt) = c1.order.filter(|o| o % 2 == 1) {
            if odd_order_bound(n, mt) {
                match (&ws.h3, &ws.h3_class) {
                    (Some(_), Some(c3)) => {
                        if h_even_ok(c3, 2, None) {
                            matched.push(ClauseMatch {
                                clause: ClauseId::V,
                                params: vec![("m_tilde", mt.to_string())],
                            });
                        }
                        if n == 3
                            && mt >= 7
                            && c3.kind == ElementKind::Elliptic
                            && c3.primitive == Some(true)
                            && c3.order == Some(mt)
                        {
                            matched.push(ClauseMatch {
                                clause: ClauseId::VI,
                                params: vec![("m_tilde", mt.to_string())],
                            });
                        }
                        if !matched.iter().any(|m| m.clause == ClauseId::V || m.clause == ClauseId::VI) {
                            notes.push("v/vi: h3 class does not close the polyhedron".into());
                        }
                    }
                    _ => notes.push("v/vi: h3 not constructible".into()),
                }
            } else {
                notes.push("v: 1/n + 1/m_tilde >= 1/2".into());
            }
        }
    }

    // (vii): h1 the square of a primitive order-n rotation (n >= 7), decided
    //        through h4
    if n >= 7 && c1.kind == ElementKind::Elliptic {
        if let Some(angle) = c1.rotation_angle {
            if (angle - 4.0 * PI / n as f64).abs() <= tol.eps {
                match &ws.h4_class {
                    Some(c4) if h_even_ok(c4, 2, None) => {
                        matched.push(ClauseMatch {
                            clause: ClauseId::VII,
                            params: vec![("n", n.to_string())],
                        });
                    }
                    Some(_) => notes.push("vii: h4 class does not close the polyhedron".into()),
                    None => notes.push("vii: h4 not constructible".into()),
                }
            }
        }
    }

    // first clause in declaration order wins
    matched.sort_by_key(|m| m.clause as u8);
    Ok(TheoremAOutcome {
        discrete: !matched.is_empty(),
        matched: matched.first().cloned(),
        all_matched: matched,
        notes,
    })
}
