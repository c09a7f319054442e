//! Exact evaluation of summands at integer points.
//!
//! Factor values follow the defining cases: the q-binomial vanishes for a
//! negative lower index and is the Laurent polynomial
//! `Π_{l=1}^{b} (1 - x^{n-b+l}) / (1 - x^l)` otherwise (also for negative `n`);
//! `(a)_n` uses the three-case Pochhammer definition.
//!
//! A rational tail may be `0/0` at points where the product as a whole is
//! well defined (for instance `(1 - q^a)/(1 - q^{L-t+a})` next to a binomial
//! `[L-t+a, a]` whose top vanishes). Such points are resolved as a limit:
//! every integer symbol that does not occur in a binomial bottom, a
//! Pochhammer length or a sign/ground exponent is perturbed, `q^x ↦ Z·q^x`,
//! and the value is the limit `Z → 1`, computed by counting factors `(Z - 1)`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::linform::LinForm;
use super::summand::{Factor, Summand, Tail, TailCoef, TailOp};
use super::vars::{SymbolClass, MINUS_ONE};
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::monomial::LaurentMono;
use crate::algebra::poly::MultiPoly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{as_i64, rat, Rational};
use crate::error::{Error, Result};

struct Accum {
    scalar: Rational,
    mono: LaurentMono,
    num: Vec<MultiPoly>,
    den: Vec<MultiPoly>,
}

impl Accum {
    /// Multiplies by `(1 - c·m)^{±1}`.
    fn one_minus(&mut self, c: &Rational, m: &LaurentMono, invert: bool) {
        let (pos, neg) = m.split_signs();
        let p = &MultiPoly::monomial(neg, Rational::one()) - &MultiPoly::monomial(pos, c.clone());
        let nm = LaurentMono::from_mono(&neg);
        if invert {
            self.den.push(p);
            self.mono = self.mono.mul(&nm);
        } else {
            self.num.push(p);
            self.mono = self.mono.mul(&nm.inv());
        }
    }
}

impl Summand {
    /// Symbols perturbed during evaluation (see module docs).
    pub fn perturbed_symbols(&self) -> BTreeSet<String> {
        let mut excluded = BTreeSet::new();
        for f in &self.factors {
            let forms: Vec<&LinForm> = match f {
                Factor::QBinom { bottom, .. } => vec![bottom],
                Factor::QPoch { length, .. } => vec![length],
                Factor::SymPow { exponent, .. } => vec![exponent],
                Factor::QPow(_) => vec![],
            };
            for l in forms {
                excluded.extend(l.symbols().map(String::from));
            }
        }
        self.table
            .declared()
            .iter()
            .filter(|(n, c)| matches!(c, SymbolClass::Rec | SymbolClass::Param) && !excluded.contains(n))
            .map(|(n, _)| n.clone())
            .collect()
    }

    /// Exact value at an integer assignment of all integer symbols, as a
    /// Laurent polynomial in `q` and the ground-symbol generators.
    pub fn eval_at(&self, assignment: &dyn Fn(&str) -> Option<i64>) -> Result<LaurentPoly> {
        let zgen = self.table.perturbation_gen();
        let perturbed = self.perturbed_symbols();
        let weight = |l: &LinForm| -> i64 {
            l.coeffs()
                .iter()
                .filter(|(n, _)| perturbed.contains(*n))
                .map(|(_, c)| as_i64(c).unwrap_or(0))
                .sum()
        };
        let value = |l: &LinForm| -> Result<i64> { l.eval_int(assignment) };
        // q^{d·ℓ(v)} · Z^{d·w(ℓ)}
        let qz = |l: &LinForm, d: i64| -> Result<LaurentMono> {
            let mut m = LaurentMono::var(0, exp32(d * value(l)?)?);
            m.0[zgen] = exp32(d * weight(l))?;
            Ok(m)
        };
        let mut acc = Accum {
            scalar: Rational::one(),
            mono: LaurentMono::one(),
            num: Vec::new(),
            den: Vec::new(),
        };
        for f in &self.factors {
            match f {
                Factor::QPow(q) => {
                    let e = q.eval(assignment)?;
                    let e = as_i64(&e).ok_or_else(|| Error::NonInteger(format!("q-power exponent {e}")))?;
                    acc.mono.0[0] += exp32(e)?;
                }
                Factor::QBinom { top, bottom, base } => {
                    let b = value(bottom)?;
                    if b < 0 {
                        return Ok(LaurentPoly::zero());
                    }
                    let d = *base as i64;
                    let x = LaurentMono::var(0, exp32(d)?);
                    // Π_{l=1}^{b} (1 - x^{n-b+l} Z^{w}) / (1 - x^l)
                    let low = qz(&top.add_const(-b), d)?;
                    for l in 1..=b {
                        acc.one_minus(&Rational::one(), &low.mul(&x.pow(exp32(l)?)), false);
                        acc.one_minus(&Rational::one(), &x.pow(exp32(l)?), true);
                    }
                }
                Factor::QPoch {
                    arg,
                    sym,
                    length,
                    power,
                } => {
                    let n = value(length)?;
                    let (c, m) = self.ground_factor(sym.as_deref())?;
                    let a = m.mul(&qz(arg, 1)?);
                    let invert = *power < 0;
                    if n > 0 {
                        for j in 0..n {
                            acc.one_minus(&c, &a.mul(&LaurentMono::var(0, exp32(j)?)), invert);
                        }
                    } else {
                        for j in 1..=-n {
                            acc.one_minus(&c, &a.mul(&LaurentMono::var(0, exp32(-j)?)), !invert);
                        }
                    }
                }
                Factor::SymPow { base, exponent } => {
                    let e = value(exponent)?;
                    if base == MINUS_ONE {
                        if e % 2 != 0 {
                            acc.scalar = -acc.scalar.clone();
                        }
                    } else {
                        let g = self.table.gen(base).ok_or_else(|| Error::UnknownSymbol(base.clone()))?;
                        acc.mono.0[g] += exp32(e)?;
                    }
                }
            }
        }
        if let (true, Tail::Leaf { coef: TailCoef::Number(c), .. }) = (self.tail.is_constant(), &self.tail) {
            acc.scalar *= c;
        } else {
            let t = self.eval_tail_point(&self.tail, &qz)?;
            if t.is_zero() {
                return Ok(LaurentPoly::zero());
            }
            let (n, d) = t.into_parts();
            acc.num.push(n);
            acc.den.push(d);
        }
        finish(acc, zgen)
    }

    fn ground_factor(&self, sym: Option<&str>) -> Result<(Rational, LaurentMono)> {
        match sym {
            None => Ok((Rational::one(), LaurentMono::one())),
            Some(MINUS_ONE) => Ok((rat(-1), LaurentMono::one())),
            Some(s) => {
                let g = self.table.gen(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))?;
                Ok((Rational::one(), LaurentMono::var(g, 1)))
            }
        }
    }

    fn eval_tail_point(
        &self,
        t: &Tail,
        qz: &dyn Fn(&LinForm, i64) -> Result<LaurentMono>,
    ) -> Result<RatFunc> {
        match t {
            Tail::Leaf { coef, qexp } => {
                let (c, cm) = match coef {
                    TailCoef::Number(r) => (r.clone(), LaurentMono::one()),
                    TailCoef::Symbol(s) => self.ground_factor(Some(s))?,
                };
                if c.is_zero() {
                    return Ok(RatFunc::zero());
                }
                let (pos, neg) = qz(qexp, 1)?.mul(&cm).split_signs();
                RatFunc::new(MultiPoly::monomial(pos, c), MultiPoly::monomial(neg, Rational::one()))
            }
            Tail::Node { op, args } => {
                let vals = args
                    .iter()
                    .map(|a| self.eval_tail_point(a, qz))
                    .collect::<Result<Vec<_>>>()?;
                match op {
                    TailOp::Add => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| a.add(b))),
                    TailOp::Mul => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| a.mul(b))),
                    TailOp::Sub => Ok(vals[0].sub(&vals[1])),
                    TailOp::Neg => Ok(vals[0].neg()),
                    TailOp::Div => {
                        if vals[1].is_zero() {
                            Err(Error::Undefined("tail division by zero".into()))
                        } else {
                            vals[0].div(&vals[1])
                        }
                    }
                }
            }
        }
    }

    /// `eval_at` with an assignment given as `(name, value)` pairs.
    pub fn eval_with(&self, assignment: &[(&str, i64)]) -> Result<LaurentPoly> {
        self.eval_at(&|n| assignment.iter().find(|(m, _)| *m == n).map(|(_, v)| *v))
    }
}

/// Strips factors `(Z - 1)` and sets `Z = 1`; returns the multiplicity and value.
fn split_at_one(p: &MultiPoly, zgen: usize) -> (i64, MultiPoly) {
    let z_minus_one = &MultiPoly::var(zgen) - &MultiPoly::one();
    let mut p = p.clone();
    let mut k = 0;
    loop {
        let at_one = p.eval_var(zgen, &Rational::one());
        if !at_one.is_zero() {
            return (k, at_one);
        }
        p = p.div_exact(&z_minus_one).expect("vanishing at Z=1 means divisible by Z-1");
        k += 1;
    }
}

fn finish(acc: Accum, zgen: usize) -> Result<LaurentPoly> {
    // An unperturbed factor that vanishes identically decides the value.
    if acc.den.iter().any(|p| p.is_zero()) {
        return Err(Error::Undefined("vanishing denominator factor".into()));
    }
    if acc.num.iter().any(|p| p.is_zero()) || acc.scalar.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let mut order = 0i64;
    let mut num = MultiPoly::constant(acc.scalar);
    let mut den = MultiPoly::one();
    for p in &acc.num {
        let (k, v) = split_at_one(p, zgen);
        order += k;
        num = &num * &v;
    }
    for p in &acc.den {
        let (k, v) = split_at_one(p, zgen);
        order -= k;
        den = &den * &v;
    }
    if order > 0 {
        return Ok(LaurentPoly::zero());
    }
    if order < 0 {
        return Err(Error::Undefined("pole of the summand".into()));
    }
    let mut mono = acc.mono;
    mono.0[zgen] = 0;
    let den_content = den.monomial_content();
    let den = den.div_monomial(&den_content).expect("content divides");
    mono = mono.mul(&LaurentMono::from_mono(&den_content).inv());
    let quotient = num
        .div_exact(&den)
        .ok_or_else(|| Error::Undefined("value is not a Laurent polynomial".into()))?;
    Ok(LaurentPoly::new(mono, quotient))
}

fn exp32(e: i64) -> Result<i32> {
    i32::try_from(e).map_err(|_| Error::NonInteger(format!("exponent {e} out of range")))
}
