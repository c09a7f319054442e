//! Rational functions kept as products of powers of canonical polynomials.
//!
//! Shift quotients of q-hypergeometric terms are products of many binomials
//! `1 - c·x^e`; keeping them factored makes common denominators and support
//! computations cheap and avoids repeated gcds of large expanded products.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::gcd::{obviously_coprime, poly_gcd};
use super::monomial::{LaurentMono, Monomial, MAX_VARS};
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::rational::Rational;

/// `scalar · mono · Π factor^mult` with every factor canonical: nonconstant,
/// free of monomial content, primitive over the integers with positive
/// leading coefficient. Multiplicities may be negative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRat {
    pub scalar: Rational,
    pub mono: LaurentMono,
    pub factors: BTreeMap<MultiPoly, i32>,
}

impl FactoredRat {
    pub fn one() -> Self {
        FactoredRat {
            scalar: Rational::one(),
            mono: LaurentMono::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_scalar(c: Rational) -> Self {
        assert!(!c.is_zero(), "factored rationals are nonzero");
        FactoredRat {
            scalar: c,
            ..Self::one()
        }
    }

    pub fn from_mono(m: LaurentMono) -> Self {
        FactoredRat {
            mono: m,
            ..Self::one()
        }
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.mono.is_one() && self.factors.is_empty()
    }

    /// Multiplies by `p^e` for a nonzero polynomial `p`.
    pub fn mul_poly_pow(&mut self, p: &MultiPoly, e: i32) {
        assert!(!p.is_zero(), "factored rationals are nonzero");
        if e == 0 {
            return;
        }
        let (c, m, core) = p.canonical_factor();
        self.scalar *= rational_pow(&c, e);
        self.mono = self.mono.mul(&LaurentMono::from_mono(&m).pow(e));
        if !core.is_constant() {
            add_mult(&mut self.factors, core, e);
        }
    }

    /// Multiplies by `(1 - c·m)^e` for a Laurent monomial `m`.
    pub fn mul_one_minus(&mut self, c: &Rational, m: &LaurentMono, e: i32) {
        let (pos, neg) = m.split_signs();
        // 1 - c·pos/neg = (neg - c·pos)/neg
        let p = &MultiPoly::monomial(neg, Rational::one()) - &MultiPoly::monomial(pos, c.clone());
        self.mul_poly_pow(&p, e);
        self.mono = self.mono.mul(&LaurentMono::from_mono(&neg).pow(-e));
    }

    pub fn mul(&self, other: &FactoredRat) -> FactoredRat {
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        out.mono = out.mono.mul(&other.mono);
        for (f, &e) in &other.factors {
            add_mult(&mut out.factors, f.clone(), e);
        }
        out
    }

    pub fn inv(&self) -> FactoredRat {
        FactoredRat {
            scalar: self.scalar.recip(),
            mono: self.mono.inv(),
            factors: self.factors.iter().map(|(f, &e)| (f.clone(), -e)).collect(),
        }
    }

    /// Numerator and denominator polynomials (not reduced against each other
    /// beyond what the factorization already guarantees).
    pub fn to_parts(&self) -> (MultiPoly, MultiPoly) {
        let (pos, neg) = self.mono.split_signs();
        let mut num = MultiPoly::monomial(pos, self.scalar.clone());
        let mut den = MultiPoly::monomial(neg, Rational::one());
        for (f, &e) in &self.factors {
            if e > 0 {
                num = &num * &f.pow(e as u32);
            } else {
                den = &den * &f.pow((-e) as u32);
            }
        }
        (num, den)
    }

    /// Value at a point with non-zero coordinates; `None` when a denominator
    /// factor vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut value = self.scalar.clone();
        for (v, x) in point.iter().enumerate() {
            if self.mono.0[v] != 0 {
                value *= rational_pow(x, self.mono.0[v]);
            }
        }
        let mut vanishes = false;
        for (f, &e) in &self.factors {
            let fx = f.eval(point);
            if fx.is_zero() {
                if e < 0 {
                    return None;
                }
                vanishes = true;
            } else {
                value *= rational_pow(&fx, e);
            }
        }
        Some(if vanishes { Rational::zero() } else { value })
    }

    /// The reduced rational function. Factors are first split into pairwise
    /// coprime leaves, so numerator and denominator need no gcd.
    pub fn to_ratfunc(&self) -> RatFunc {
        let mut basis = FactorBasis::new();
        for f in self.factors.keys() {
            basis.insert(f);
        }
        let (num, den) = self.refine(&basis).to_parts();
        RatFunc::normalize_units(num, den)
    }

    /// Rewrites every factor over the leaves of `basis`; every factor must
    /// have been inserted into the basis beforehand.
    pub fn refine(&self, basis: &FactorBasis) -> FactoredRat {
        let mut out = FactoredRat {
            scalar: self.scalar.clone(),
            mono: self.mono,
            factors: BTreeMap::new(),
        };
        for (f, &e) in &self.factors {
            let (unit, parts) = basis.decompose(f);
            out.scalar *= rational_pow(&unit, e);
            for (leaf, k) in parts {
                add_mult(&mut out.factors, basis.leaves[leaf].clone(), e * k as i32);
            }
        }
        out
    }
}

fn add_mult(map: &mut BTreeMap<MultiPoly, i32>, f: MultiPoly, e: i32) {
    match map.entry(f) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += e;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(e);
        }
    }
}

pub fn rational_pow(c: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

/// A set of pairwise coprime canonical polynomials ("leaves") such that every
/// inserted polynomial is, up to a unit, a product of leaf powers.
#[derive(Clone, Debug, Default)]
pub struct FactorBasis {
    leaves: Vec<MultiPoly>,
}

impl FactorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaves(&self) -> &[MultiPoly] {
        &self.leaves
    }

    /// Inserts a canonical polynomial, splitting leaves as needed so the
    /// basis stays pairwise coprime.
    pub fn insert(&mut self, p: &MultiPoly) {
        let mut pending = vec![canonical(p)];
        while let Some(a) = pending.pop() {
            if a.is_constant() {
                continue;
            }
            let mut split = None;
            for (idx, b) in self.leaves.iter().enumerate() {
                if *b == a {
                    split = Some((idx, None));
                    break;
                }
                if obviously_coprime(&a, b) {
                    continue;
                }
                let g = poly_gcd(&a, b);
                if !g.is_constant() {
                    split = Some((idx, Some(g)));
                    break;
                }
            }
            match split {
                None => self.leaves.push(a),
                Some((_, None)) => {}
                Some((idx, Some(g))) => {
                    let b = self.leaves.swap_remove(idx);
                    pending.push(canonical(&b.div_exact(&g).expect("gcd divides")));
                    pending.push(canonical(&a.div_exact(&g).expect("gcd divides")));
                    pending.push(g);
                }
            }
        }
        self.leaves.sort();
    }

    /// Writes `p = unit · Π leaf^k`; panics if `p` is not a product of leaves.
    pub fn decompose(&self, p: &MultiPoly) -> (Rational, Vec<(usize, u32)>) {
        let mut rest = p.clone();
        let mut parts = Vec::new();
        for (idx, leaf) in self.leaves.iter().enumerate() {
            if rest.is_constant() {
                break;
            }
            if obviously_coprime(&rest, leaf) {
                continue;
            }
            let mut k = 0;
            while let Some(q) = rest.div_exact(leaf) {
                rest = q;
                k += 1;
            }
            if k > 0 {
                parts.push((idx, k));
            }
        }
        let unit = rest
            .constant_value()
            .expect("polynomial was not inserted into the factor basis");
        (unit, parts)
    }

    /// Index of a leaf, if present.
    pub fn position(&self, leaf: &MultiPoly) -> Option<usize> {
        self.leaves.binary_search(leaf).ok()
    }
}

fn canonical(p: &MultiPoly) -> MultiPoly {
    p.canonical_factor().2
}

/// Expands `Π factor^mult` for non-negative multiplicities times a monomial
/// with non-negative exponents.
pub fn expand_product(mono: &Monomial, factors: &[(&MultiPoly, u32)]) -> MultiPoly {
    let mut sorted: Vec<&(&MultiPoly, u32)> = factors.iter().collect();
    sorted.sort_by_key(|(f, e)| f.len() * *e as usize);
    let mut out = MultiPoly::monomial(*mono, Rational::one());
    for (f, e) in sorted {
        out = &out * &f.pow(*e);
    }
    out
}

/// Component-wise minimum exponent over a set of Laurent monomials, as the
/// monomial that clears all negative exponents.
pub fn clearing_monomial<'a>(monos: impl IntoIterator<Item = &'a LaurentMono>) -> LaurentMono {
    let mut lo = [0i32; MAX_VARS];
    for m in monos {
        for (l, &e) in lo.iter_mut().zip(&m.0) {
            *l = (*l).min(e);
        }
    }
    LaurentMono(lo).inv()
}
