//! Exact Laurent polynomials in `q` ([`QPoly`]) and in `q` and one ground
//! symbol `a` ([`BiLaurent`]), with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `Σ coeffs[e] q^{low + e}`; both ends trimmed, the zero polynomial has no
/// coefficients and `low = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(1, 0)
    }

    /// `c · q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        QPoly::from_coeffs(e, vec![c.into()])
    }

    /// `Σ coeffs[k] q^{low + k}`.
    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (`None` for zero).
    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.low;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms as (exponent, coefficient), increasing.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The substitution `q ↦ q^d` for `d ≥ 1`.
    pub fn stretch(&self, d: u32) -> Self {
        if d == 1 || self.is_zero() {
            return self.clone();
        }
        let d = d as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d] = c.clone();
        }
        QPoly::from_coeffs(self.low * d as i64, coeffs)
    }

    /// The value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Coefficients of `q^0 … q^n`.
    pub fn truncation(&self, n: usize) -> Vec<BigInt> {
        (0..=n as i64).map(|e| self.coeff(e)).collect()
    }

    /// Exact division by `1 - q^l` (`l ≥ 1`); `None` when not divisible.
    pub fn div_one_minus(&self, l: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        // P = (1 - q^l) R  ⇔  R_k = P_k + R_{k-l}
        let n = self.coeffs.len();
        if n <= l {
            return None;
        }
        let mut r = vec![BigInt::zero(); n - l];
        for k in 0..n {
            let mut v = self.coeffs[k].clone();
            if k >= l {
                v += &r[k - l];
            }
            if k < n - l {
                r[k] = v;
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(QPoly::from_coeffs(self.low, r))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for p in [self, rhs] {
            for (k, c) in p.coeffs.iter().enumerate() {
                coeffs[(p.low - low) as usize + k] += c;
            }
        }
        QPoly::from_coeffs(low, coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |a, b| &a + &b)
    }
}

/// `1 + q + 2 q^2 - q^(-1)` style; terms by increasing exponent.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (c, q_power(e))))
    }
}

fn q_power(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "q".into(),
        e if e > 0 => format!("q^{e}"),
        e => format!("q^({e})"),
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a BigInt, String)>) -> fmt::Result {
    let mut first = true;
    for (c, m) in terms {
        let sign = match (first, c.is_negative()) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        let a = c.abs();
        let body = match (a.is_one(), m.is_empty()) {
            (_, true) => a.to_string(),
            (true, false) => m,
            (false, false) => format!("{a} {m}"),
        };
        write!(f, "{sign}{body}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `Σ c · q^e a^g` over (q-exponent `e`, ground exponent `g`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent::default()
    }

    pub fn one() -> Self {
        BiLaurent::monomial(1, 0, 0)
    }

    /// `c · q^e a^g`.
    pub fn monomial(c: impl Into<BigInt>, e: i64, g: i64) -> Self {
        let mut out = BiLaurent::zero();
        out.add_term(e, g, c.into());
        out
    }

    fn add_term(&mut self, e: i64, g: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((e, g)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(e, g));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64, g: i64) -> BigInt {
        self.terms.get(&(e, g)).cloned().unwrap_or_default()
    }

    /// Nonzero terms as ((q-exponent, ground exponent), coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }
}

impl From<&QPoly> for BiLaurent {
    fn from(p: &QPoly) -> Self {
        let mut out = BiLaurent::zero();
        for (e, c) in p.terms() {
            out.add_term(e, 0, c.clone());
        }
        out
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(e, g), c) in &rhs.terms {
            out.add_term(e, g, c.clone());
        }
        out
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(e1, g1), c1) in &self.terms {
            for (&(e2, g2), c2) in &rhs.terms {
                out.add_term(e1 + e2, g1 + g2, c1 * c2);
            }
        }
        out
    }
}

impl std::iter::Sum for BiLaurent {
    fn sum<I: Iterator<Item = BiLaurent>>(iter: I) -> BiLaurent {
        iter.fold(BiLaurent::zero(), |a, b| &a + &b)
    }
}

/// Terms ordered by q-exponent, then ground exponent: `1 + a^(-1) q - q + a q`.
impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&(i64, i64)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(e, g)| (e, g));
        write_terms(
            f,
            keys.into_iter().map(|k| {
                let a = match k.1 {
                    0 => String::new(),
                    1 => "a".into(),
                    g if g > 0 => format!("a^{g}"),
                    g => format!("a^({g})"),
                };
                let m = [a, q_power(k.0)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" ");
                (&self.terms[k], m)
            }),
        )
    }
}
