//! Bounded-denominator rational recognition via continued fractions.

/// A recognized fraction `num/den` in lowest terms, `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub num: i64,
    pub den: u32,
}

impl Fraction {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Best rational approximation to `x` with denominator at most `max_den`.
///
/// Expands the continued fraction of `x`, keeping convergents while their
/// denominators stay within the cap, then compares the last convergent with
/// the best admissible semiconvergent.
pub fn best_rational(x: f64, max_den: u32) -> Fraction {
    let max_den = max_den.max(1) as i64;
    let (mut h0, mut h1) = (1i64, x.floor() as i64);
    let (mut k0, mut k1) = (0i64, 1i64);
    let mut b = x - x.floor();
    // convergents h1/k1 while k stays under the cap
    for _ in 0..64 {
        if b.abs() < 1e-15 {
            return reduced(h1, k1);
        }
        b = 1.0 / b;
        if !b.is_finite() || b > 1e18 {
            return reduced(h1, k1);
        }
        let a = b.floor() as i64;
        let h2 = a.saturating_mul(h1).saturating_add(h0);
        let k2 = a.saturating_mul(k1).saturating_add(k0);
        if k2 > max_den {
            // best semiconvergent under the cap
            let t = (max_den - k0) / k1;
            let hs = t * h1 + h0;
            let ks = t * k1 + k0;
            let e_conv = (x - h1 as f64 / k1 as f64).abs();
            let e_semi = (x - hs as f64 / ks as f64).abs();
            return if e_semi < e_conv {
                reduced(hs, ks)
            } else {
                reduced(h1, k1)
            };
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        b -= a as f64;
    }
    reduced(h1, k1)
}

/// Recognize `x` as a fraction with denominator at most `max_den`, accepting
/// only if the approximation error is within `eps`.
pub fn recognize(x: f64, max_den: u32, eps: f64) -> Option<Fraction> {
    if !x.is_finite() {
        return None;
    }
    let f = best_rational(x, max_den);
    if (x - f.value()).abs() <= eps {
        Some(f)
    } else {
        None
    }
}

fn reduced(num: i64, den: i64) -> Fraction {
    debug_assert!(den > 0);
    let g = gcd_i64(num.unsigned_abs(), den.unsigned_abs()).max(1);
    Fraction {
        num: num / g as i64,
        den: (den / g as i64) as u32,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    gcd_i64(a, b)
}

fn gcd_i64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
