use std::fmt;

use num_traits::Zero;

use super::monomial::{LaurentMono, Monomial, MAX_VARS};
use super::poly::MultiPoly;
use super::factored::rational_pow;
use super::rational::Rational;

/// A Laurent polynomial `mono · poly`, canonical when `poly` has no monomial
/// content (zero is `1 · 0`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    mono: LaurentMono,
    poly: MultiPoly,
}

impl LaurentPoly {
    pub fn new(mono: LaurentMono, poly: MultiPoly) -> Self {
        if poly.is_zero() {
            return Self::zero();
        }
        let content = poly.monomial_content();
        if content.is_one() {
            return LaurentPoly { mono, poly };
        }
        LaurentPoly {
            mono: mono.mul(&LaurentMono::from_mono(&content)),
            poly: poly.div_monomial(&content).expect("content divides"),
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            mono: LaurentMono::one(),
            poly: MultiPoly::zero(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::new(LaurentMono::one(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The polynomial itself when no exponent is negative.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        mono_poly(&self.mono).map(|m| &m * &self.poly)
    }

    /// Value at a point with non-zero coordinates (one per generator).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut value = self.poly.eval(point);
        for (v, x) in point.iter().enumerate() {
            let e = self.mono.0[v];
            if e != 0 {
                value *= rational_pow(x, e);
            }
        }
        value
    }

    /// Terms as (signed exponent vector, coefficient).
    pub fn terms(&self) -> Vec<(LaurentMono, Rational)> {
        self.poly
            .terms()
            .iter()
            .map(|(m, c)| (LaurentMono::from_mono(m).mul(&self.mono), c.clone()))
            .collect()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LaurentMono, Rational)>) -> Self {
        let terms: Vec<(LaurentMono, Rational)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut lo = [0i32; MAX_VARS];
        for (m, _) in &terms {
            for (l, &e) in lo.iter_mut().zip(&m.0) {
                *l = (*l).min(e);
            }
        }
        let shift = LaurentMono(lo);
        let poly = MultiPoly::from_terms(terms.into_iter().map(|(m, c)| {
            let (pos, _) = m.mul(&shift.inv()).split_signs();
            (pos, c)
        }));
        Self::new(shift, poly)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        Self::from_terms(self.terms().into_iter().chain(other.terms()))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        Self::new(self.mono.mul(&other.mono), &self.poly * &other.poly)
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> LaurentPoly {
        Self::new(self.mono, &self.poly * p)
    }

    pub fn mul_mono(&self, m: &LaurentMono) -> LaurentPoly {
        Self::new(self.mono.mul(m), self.poly.clone())
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LaurentPoly, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.mono.is_one() {
                    return write!(f, "{}", self.0.poly.display_with(self.1));
                }
                let (pos, neg) = self.0.mono.split_signs();
                write!(f, "({})", self.0.poly.display_with(self.1))?;
                if !pos.is_one() {
                    write!(f, "*{}", MultiPoly::monomial(pos, Rational::from_integer(1.into())).display_with(self.1))?;
                }
                if !neg.is_one() {
                    write!(f, "/({})", MultiPoly::monomial(neg, Rational::from_integer(1.into())).display_with(self.1))?;
                }
                Ok(())
            }
        }
        D(self, names)
    }
}

/// `mono` as a polynomial when its exponents are non-negative.
pub fn mono_poly(m: &LaurentMono) -> Option<MultiPoly> {
    let (pos, neg) = m.split_signs();
    if neg != Monomial::ONE {
        return None;
    }
    Some(MultiPoly::monomial(pos, Rational::from_integer(1.into())))
}
