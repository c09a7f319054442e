//! Sparse multivariate polynomials over the rationals.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_VARS};
use super::rational::{format_rational, rational_content, Rational};

/// A polynomial stored as a list of terms in strictly decreasing graded-lex order,
/// with no zero coefficients. Two polynomials are equal iff their term lists are.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(super::rational::rat(c))
    }

    pub fn var(v: usize) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| Reverse(t.0));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Bit mask of variables that occur.
    pub fn vars_mask(&self) -> u32 {
        self.terms
            .iter()
            .fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Divides every term by `mono`; `None` unless all terms are divisible.
    pub fn div_monomial(&self, mono: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.div(mono)?, c.clone()));
        }
        // Division by a common monomial preserves the graded-lex order.
        Some(MultiPoly { terms })
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |g, (m, _)| g.gcd(m))
    }

    /// Writes `self = c * p` where `p` has coprime integer coefficients and a
    /// positive leading coefficient. The zero polynomial gives `(1, 0)`.
    pub fn primitive_part(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), Self::zero());
        }
        let mut c = rational_content(self.terms.iter().map(|t| &t.1));
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        if c.is_one() {
            return (c, self.clone());
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Primitive part with monomial content also removed.
    pub fn canonical_factor(&self) -> (Rational, Monomial, MultiPoly) {
        let mono = self.monomial_content();
        let stripped = if mono.is_one() {
            self.clone()
        } else {
            self.div_monomial(&mono).expect("monomial content divides")
        };
        let (c, p) = stripped.primitive_part();
        (c, mono, p)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c * &inv));
            }
            return Some(MultiPoly { terms });
        }
        if let Some(c) = self.constant_value() {
            return d.constant_value().map(|dc| Self::constant(c / dc));
        }
        let (lm, lc) = &d.terms[0];
        if lm.degree() > self.total_degree() {
            return None;
        }
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &d.terms[1..] {
                let t = qm.mul(dm);
                let v = &qc * dc;
                match rem.entry(t) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= v;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-v);
                    }
                }
            }
            quot.push((qm, qc));
            // Remainder terms smaller than the divisor's trailing term cannot be cancelled.
            if let Some((top, _)) = rem.last_key_value() {
                if top.degree() < lm.degree() {
                    return None;
                }
            }
        }
        Some(MultiPoly { terms: quot })
    }

    /// Coefficients with respect to variable `v`: `self = sum_k c_k v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by_key(|t| Reverse(t.0));
                MultiPoly { terms: t }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: usize, coeffs: &[MultiPoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vk = Monomial::var(v, k as u32);
            for (m, a) in &c.terms {
                terms.push((m.mul(&vk), a.clone()));
            }
        }
        terms.sort_unstable_by_key(|t| Reverse(t.0));
        MultiPoly { terms }
    }

    /// Replaces variable `v` by the polynomial `value`.
    pub fn substitute(&self, v: usize, value: &MultiPoly) -> MultiPoly {
        if self.vars_mask() & (1 << v) == 0 {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        // Horner
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Simultaneous substitution; variables without an entry are kept.
    #[allow(clippy::needless_range_loop)] // `v` also runs past `powers`
    pub fn substitute_all(&self, assignment: &[Option<MultiPoly>]) -> MultiPoly {
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); assignment.len()];
        let mut out: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut value = MultiPoly::constant(c.clone());
            for v in 0..MAX_VARS {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match assignment.get(v).and_then(|a| a.as_ref()) {
                    Some(p) => {
                        let cache = &mut powers[v];
                        if cache.is_empty() {
                            cache.push(MultiPoly::one());
                        }
                        while cache.len() <= e as usize {
                            let next = &cache[cache.len() - 1] * p;
                            cache.push(next);
                        }
                        value = &value * &cache[e as usize];
                    }
                    None => kept = kept.mul(&Monomial::var(v, e)),
                }
            }
            for (vm, vc) in value.terms {
                *out.entry(vm.mul(&kept)).or_insert_with(Rational::zero) += vc;
            }
        }
        Self::from_map(out)
    }

    /// Evaluates at a rational point (all variables).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Polynomial after setting variable `v` to the constant `x`.
    pub fn eval_var(&self, v: usize, x: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(x.clone()))
    }

    /// Human-readable form with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn merge(a: &MultiPoly, b: &MultiPoly, negate_b: bool) -> MultiPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ma.cmp(mb) {
            Ordering::Greater => {
                out.push((*ma, ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((*mb, if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*ma, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    for (m, c) in &b.terms[j..] {
        out.push((*m, if negate_b { -c } else { c.clone() }));
    }
    MultiPoly { terms: out }
}

fn multiply(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.len() == 1 {
        let (m, c) = &small.terms[0];
        return MultiPoly {
            terms: large
                .terms
                .iter()
                .map(|(lm, lc)| (lm.mul(m), lc * c))
                .collect(),
        };
    }
    let mut acc: FxHashMap<Monomial, Rational> =
        FxHashMap::with_capacity_and_hasher(a.len() * b.len() / 2 + 1, Default::default());
    for (ma, ca) in &small.terms {
        for (mb, cb) in &large.terms {
            let m = ma.mul(mb);
            let p = ca * cb;
            match acc.get_mut(&m) {
                Some(v) => *v += p,
                None => {
                    acc.insert(m, p);
                }
            }
        }
    }
    MultiPoly::from_map(acc)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        merge(self, rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        multiply(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for t in self.terms.iter_mut() {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for v in 0..MAX_VARS {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let name = self.names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
