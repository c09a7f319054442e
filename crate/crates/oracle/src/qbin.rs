//! Gaussian binomial and multinomial coefficients.
//!
//! `[n+m, n]_q = (q^{m+1})_n / (q)_n` for `n ≥ 0` and `0` otherwise. For a
//! negative top this is the nonzero Laurent polynomial
//! `[-t, b] = (-1)^b q^{-(bt + T_{b-1})} [t+b-1, b]` (`t ≥ 1`); for
//! `0 ≤ top < bottom` it vanishes.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::poly::QPoly;

/// `T_m = m(m+1)/2`, literally also for negative `m`.
pub fn tri(m: i64) -> i64 {
    m * (m + 1) / 2
}

thread_local! {
    static CACHE: RefCell<HashMap<(i64, i64), QPoly>> = RefCell::new(HashMap::new());
}

/// The Gaussian binomial `[top, bottom]` in base `q^d`.
pub fn q_bin(top: i64, bottom: i64, d: u32) -> QPoly {
    assert!(d >= 1, "the base exponent must be positive");
    if bottom < 0 || (0..bottom).contains(&top) {
        return QPoly::zero();
    }
    let base = CACHE.with(|c| {
        if let Some(p) = c.borrow().get(&(top, bottom)) {
            return p.clone();
        }
        let p = if top >= 0 {
            nonnegative(top, bottom)
        } else {
            let t = -top;
            let sign = if bottom % 2 == 0 { 1 } else { -1 };
            let p = nonnegative(t + bottom - 1, bottom);
            &QPoly::monomial(sign, -(bottom * t + tri(bottom - 1))) * &p
        };
        c.borrow_mut().insert((top, bottom), p.clone());
        p
    });
    base.stretch(d)
}

/// `Π_{l=1}^{b} (1 - q^{n-b+l}) / (1 - q^l)` for `0 ≤ b ≤ n`, by exact
/// division.
fn nonnegative(n: i64, b: i64) -> QPoly {
    let b = b.min(n - b);
    let mut p = QPoly::one();
    for l in 1..=b {
        p = &p * &(&QPoly::one() - &QPoly::monomial(1, n - b + l));
    }
    for l in 1..=b {
        p = p.div_one_minus(l as usize).expect("Gaussian binomials are polynomials");
    }
    p
}

/// `[L; a_1, …, a_n] = [L, a_1] [L - a_1, a_2] ⋯` in base `q^d`.
pub fn q_multinomial(l: i64, parts: &[i64], d: u32) -> QPoly {
    let mut out = QPoly::one();
    let mut rest = l;
    for &a in parts {
        out = &out * &q_bin(rest, a, d);
        if out.is_zero() {
            break;
        }
        rest -= a;
    }
    out
}
