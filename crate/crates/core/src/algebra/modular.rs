//! Arithmetic modulo the Mersenne prime `2^61 - 1` at pseudo-random
//! evaluation points. Used only to guide exact computations (row and column
//! selection); every result derived from it is re-checked exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::factored::FactoredRat;
use super::monomial::MAX_VARS;
use super::poly::MultiPoly;
use super::rational::Rational;

pub const PRIME: u64 = 0x1fff_ffff_ffff_ffff;

pub fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64) -> Option<u64> {
    (a != 0).then(|| powmod(a, PRIME - 2))
}

pub fn submod(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

fn bigint_mod(x: &BigInt) -> u64 {
    let m = BigInt::from(PRIME);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("reduced below the prime")
}

/// `None` when the denominator vanishes modulo the prime.
pub fn rational_mod(c: &Rational) -> Option<u64> {
    let d = invmod(bigint_mod(c.denom()))?;
    Some(mulmod(bigint_mod(c.numer()), d))
}

/// A pseudo-random point with nonzero coordinates for every generator.
#[derive(Clone, Debug)]
pub struct ModPoint(pub [u64; MAX_VARS]);

impl ModPoint {
    pub fn random(seed: u64) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut point = [0u64; MAX_VARS];
        for p in point.iter_mut() {
            *p = rng.gen_range(2..PRIME);
        }
        ModPoint(point)
    }

    pub fn poly(&self, p: &MultiPoly) -> u64 {
        let mut acc = 0u64;
        for (m, c) in p.terms() {
            let mut t = rational_mod(c).unwrap_or(0);
            for v in 0..MAX_VARS {
                let e = m.exp(v);
                if e > 0 {
                    t = mulmod(t, powmod(self.0[v], e as u64));
                }
            }
            acc = (acc + t) % PRIME;
        }
        acc
    }

    /// `None` when a denominator factor vanishes at the point.
    pub fn factored(&self, r: &FactoredRat) -> Option<u64> {
        let mut acc = rational_mod(&r.scalar)?;
        for v in 0..MAX_VARS {
            let e = r.mono.0[v];
            if e != 0 {
                let x = if e > 0 { self.0[v] } else { invmod(self.0[v])? };
                acc = mulmod(acc, powmod(x, e.unsigned_abs() as u64));
            }
        }
        for (p, &e) in &r.factors {
            let x = self.poly(p);
            let x = if e > 0 { x } else { invmod(x)? };
            acc = mulmod(acc, powmod(x, e.unsigned_abs() as u64));
        }
        Some(acc)
    }
}

/// Rank of a matrix over the prime field.
pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = invmod(rows[r][c]).expect("pivot is nonzero");
        let pivot: Vec<u64> = rows[r].iter().map(|&x| mulmod(x, inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = submod(*x, mulmod(f, y));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
