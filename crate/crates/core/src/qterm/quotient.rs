//! Shift quotients `F(v - s) / F(v)` of summands.

use num_traits::{One, Zero};

use super::linform::LinForm;
use super::summand::{Factor, Summand, Tail, TailCoef, TailOp};
use super::vars::MINUS_ONE;
use crate::algebra::factored::{FactorBasis, FactoredRat};
use crate::algebra::monomial::{LaurentMono, Monomial};
use crate::algebra::poly::MultiPoly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::rational::{as_i64, rat, Rational};
use crate::error::{Error, Result};

impl Summand {
    /// Integer amount `ℓ(v) - ℓ(v - s)`.
    pub fn delta(&self, l: &LinForm, shift: &[i64]) -> Result<i64> {
        let d = self.delta_rational(l, shift);
        as_i64(&d).ok_or_else(|| Error::NonInteger(format!("shift of {l} by {shift:?}")))
    }

    /// The Laurent monomial `q^{d·ℓ}` in the generators.
    pub fn q_power(&self, l: &LinForm, d: i64) -> Result<LaurentMono> {
        let mut m = LaurentMono::one();
        let c0 = as_i64(l.constant_part()).ok_or_else(|| Error::NonInteger(format!("constant term of {l}")))?;
        m.0[0] = checked_exp(c0 * d)?;
        for (name, c) in l.coeffs() {
            let c = as_i64(c).ok_or_else(|| Error::NonInteger(format!("coefficient of `{name}` in {l}")))?;
            let g = self.table.gen(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            m.0[g] += checked_exp(c * d)?;
        }
        Ok(m)
    }

    fn ground_mono(&self, sym: &str) -> Result<(Rational, LaurentMono)> {
        if sym == MINUS_ONE {
            return Ok((rat(-1), LaurentMono::one()));
        }
        let g = self.table.gen(sym).ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
        Ok((Rational::one(), LaurentMono::var(g, 1)))
    }

    /// `F(v - s) / F(v)` in factored form.
    pub fn shift_quotient_factored(&self, shift: &[i64]) -> Result<FactoredRat> {
        if shift.len() != self.table.shift_len() {
            return Err(Error::Shape(format!(
                "shift has length {}, expected {}",
                shift.len(),
                self.table.shift_len()
            )));
        }
        let mut out = FactoredRat::one();
        if shift.iter().all(|&s| s == 0) {
            return Ok(out);
        }
        for f in &self.factors {
            match f {
                Factor::QPow(q) => {
                    let diff = q.shift_difference(&|l| Ok(self.delta_rational(l, shift)))?;
                    out.mono = out.mono.mul(&self.q_power(&diff, 1)?);
                }
                Factor::QBinom { top, bottom, base } => {
                    let d = *base as i64;
                    let rest = top.sub(bottom);
                    self.phi_ratio(&mut out, top, d, shift, 1)?;
                    self.phi_ratio(&mut out, bottom, d, shift, -1)?;
                    self.phi_ratio(&mut out, &rest, d, shift, -1)?;
                }
                Factor::QPoch {
                    arg,
                    sym,
                    length,
                    power,
                } => {
                    let (c, m) = match sym {
                        Some(s) => self.ground_mono(s)?,
                        None => (Rational::one(), LaurentMono::one()),
                    };
                    // (A q^u; q)_ℓ = (A q^u)_∞ / (A q^{u+ℓ})_∞
                    let du = self.delta(arg, shift)?;
                    let end = arg.add(length);
                    let dend = self.delta(&end, shift)?;
                    self.ratio_inf(&mut out, &c, &m, 1, arg, -du, *power)?;
                    self.ratio_inf(&mut out, &c, &m, 1, &end.add_const(-dend), dend, *power)?;
                }
                Factor::SymPow { base, exponent } => {
                    let d = self.delta(exponent, shift)?;
                    if base == MINUS_ONE {
                        if d % 2 != 0 {
                            out.scalar = -out.scalar.clone();
                        }
                    } else {
                        let g = self.table.gen(base).ok_or_else(|| Error::UnknownSymbol(base.clone()))?;
                        out.mono = out.mono.mul(&LaurentMono::var(g, checked_exp(-d)?));
                    }
                }
            }
        }
        if !self.tail.is_constant() {
            let at_v = self.tail_at(&vec![0; shift.len()])?;
            let shifted = self.tail_at(shift)?;
            if at_v.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            if shifted.is_zero() {
                return Err(Error::VanishingFactor("shifted tail is identically zero".into()));
            }
            out.mul_poly_pow(shifted.num(), 1);
            out.mul_poly_pow(shifted.den(), -1);
            out.mul_poly_pow(at_v.num(), -1);
            out.mul_poly_pow(at_v.den(), 1);
        }
        Ok(out)
    }

    /// `F(v - s) / F(v)` as a reduced rational function.
    pub fn shift_quotient(&self, shift: &[i64]) -> Result<RatFunc> {
        Ok(self.shift_quotient_factored(shift)?.to_ratfunc())
    }

    /// Multiplies by `(φ(ℓ - δ) / φ(ℓ))^e` where `φ(n) = (x; x)_n`, `x = q^d`.
    fn phi_ratio(&self, out: &mut FactoredRat, l: &LinForm, d: i64, shift: &[i64], e: i32) -> Result<()> {
        let delta = self.delta(l, shift)?;
        // φ(ℓ-δ)/φ(ℓ) = (x^{ℓ+1}; x)_∞ / (x^{ℓ-δ+1}; x)_∞
        self.ratio_inf(out, &Rational::one(), &LaurentMono::one(), d, &l.add_const(1 - delta), delta, e)
    }

    /// Multiplies by `((A x^{e₂+k}; x)_∞ / (A x^{e₂}; x)_∞)^e` with `x = q^d`
    /// and `A = c·m`.
    #[allow(clippy::too_many_arguments)]
    fn ratio_inf(
        &self,
        out: &mut FactoredRat,
        c: &Rational,
        m: &LaurentMono,
        d: i64,
        e2: &LinForm,
        k: i64,
        e: i32,
    ) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let base = m.mul(&self.q_power(e2, d)?);
        let x = LaurentMono::var(0, checked_exp(d)?);
        if k > 0 {
            // 1 / Π_{j=0}^{k-1} (1 - A x^{e₂+j})
            for j in 0..k {
                out.mul_one_minus(c, &base.mul(&x.pow(checked_exp(j)?)), -e);
            }
        } else {
            // Π_{j=0}^{-k-1} (1 - A x^{e₂+k+j})
            for j in 0..-k {
                out.mul_one_minus(c, &base.mul(&x.pow(checked_exp(k + j)?)), e);
            }
        }
        Ok(())
    }

    /// The tail evaluated at `v - s` as a rational function in the generators.
    pub fn tail_at(&self, shift: &[i64]) -> Result<RatFunc> {
        self.eval_tail(&self.tail, shift)
    }

    fn eval_tail(&self, t: &Tail, shift: &[i64]) -> Result<RatFunc> {
        match t {
            Tail::Leaf { coef, qexp } => {
                let d = self.delta(qexp, shift)?;
                let mut m = self.q_power(qexp, 1)?;
                m.0[0] -= checked_exp(d)?;
                let (c, cm) = match coef {
                    TailCoef::Number(r) => (r.clone(), LaurentMono::one()),
                    TailCoef::Symbol(s) => self.ground_mono(s)?,
                };
                if c.is_zero() {
                    return Ok(RatFunc::zero());
                }
                let (pos, neg) = m.mul(&cm).split_signs();
                RatFunc::new(MultiPoly::monomial(pos, c), MultiPoly::monomial(neg, Rational::one()))
            }
            Tail::Node { op, args } => {
                let vals = args
                    .iter()
                    .map(|a| self.eval_tail(a, shift))
                    .collect::<Result<Vec<_>>>()?;
                match op {
                    TailOp::Add => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| a.add(b))),
                    TailOp::Mul => Ok(vals.iter().skip(1).fold(vals[0].clone(), |a, b| a.mul(b))),
                    TailOp::Sub => Ok(vals[0].sub(&vals[1])),
                    TailOp::Neg => Ok(vals[0].neg()),
                    TailOp::Div => {
                        if vals[1].is_zero() {
                            Err(Error::ZeroDenominator)
                        } else {
                            vals[0].div(&vals[1])
                        }
                    }
                }
            }
        }
    }

    /// Replaces every shifted generator `g_l = q^{v_l}` by `q^{-s_l}·g_l`,
    /// i.e. evaluates a function of `v` at `v - s`.
    pub fn shift_generators(&self, f: &FactoredRat, shift: &[i64]) -> Result<FactoredRat> {
        let gens = self.table.shift_gens();
        let mut out = FactoredRat::from_scalar(f.scalar.clone());
        let mut mono = f.mono;
        for &(g, i) in &gens {
            mono.0[0] -= checked_exp(shift[i] * f.mono.0[g] as i64)?;
        }
        out.mono = mono;
        for (p, &e) in &f.factors {
            let (shifted, m) = shift_poly(p, &gens, shift)?;
            out.mul_poly_pow(&shifted, e);
            out.mono = out.mono.mul(&m.pow(e));
        }
        Ok(out)
    }

    /// Checks `R_{s+t}(v) = R_t(v - s) · R_s(v)` exactly.
    pub fn cocycle_check(&self, s: &[i64], t: &[i64]) -> Result<bool> {
        let st: Vec<i64> = s.iter().zip(t).map(|(a, b)| a + b).collect();
        let left = self.shift_quotient_factored(&st)?;
        let right = self
            .shift_generators(&self.shift_quotient_factored(t)?, s)?
            .mul(&self.shift_quotient_factored(s)?);
        Ok(factored_equal(&left, &right))
    }
}

/// Exact equality of two factored rational functions.
pub fn factored_equal(a: &FactoredRat, b: &FactoredRat) -> bool {
    let ratio = a.mul(&b.inv());
    let mut basis = FactorBasis::new();
    for f in ratio.factors.keys() {
        basis.insert(f);
    }
    ratio.refine(&basis).is_one()
}

/// Applies `g ↦ q^{-s}·g` to a polynomial, returning a polynomial and the
/// Laurent monomial it must be multiplied by.
fn shift_poly(p: &MultiPoly, gens: &[(usize, usize)], shift: &[i64]) -> Result<(MultiPoly, LaurentMono)> {
    let mut q_exps = Vec::with_capacity(p.len());
    for (m, _) in p.terms() {
        let mut e = m.exp(0) as i64;
        for &(g, i) in gens {
            e -= shift[i] * m.exp(g) as i64;
        }
        q_exps.push(e);
    }
    let lo = q_exps.iter().copied().min().unwrap_or(0);
    let terms = p.terms().iter().zip(&q_exps).map(|((m, c), &e)| {
        let exp = u32::try_from(e - lo).expect("non-negative after shifting");
        (m.with_exp(0, exp), c.clone())
    });
    Ok((MultiPoly::from_terms(terms), LaurentMono::var(0, checked_exp(lo)?)))
}

fn checked_exp(e: i64) -> Result<i32> {
    i32::try_from(e).map_err(|_| Error::NonInteger(format!("exponent {e} out of range")))
}

/// Monomial in a single generator, for tests and callers building polynomials.
pub fn gen_monomial(g: usize, e: u32) -> MultiPoly {
    MultiPoly::monomial(Monomial::var(g, e), Rational::one())
}
