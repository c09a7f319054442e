//! Numeric evaluation of symbolic recurrences at integer points, used to
//! check them against the oracle's sequences.
//!
//! A coefficient generator named after a recurrence variable or parameter
//! `n` stands for `q^n`; a ground generator becomes the oracle's second
//! variable `a`. The recurrence `Σ c_s SUM(v - s) = 0` holds at a point `v`
//! when `Σ c_s(v)·seq(v - s)` vanishes.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use qrec_core::algebra::{MultiPoly, Rational};
use qrec_core::sumrec::SumRecurrence;
use qrec_oracle::BiLaurent;

use crate::error::{CliError, CliResult};

/// A point: values of the recurrence variables and parameters.
pub type Point = BTreeMap<String, i64>;

/// The least common denominator of all coefficients of a recurrence.
fn common_denominator(rec: &SumRecurrence) -> BigInt {
    let mut l = BigInt::one();
    for (_, c) in &rec.terms {
        for (_, r) in c.terms() {
            let d = r.denom();
            l = l.lcm(d);
        }
    }
    l
}

/// `scale · p` at a point.
fn eval_coefficient(p: &MultiPoly, scale: &BigInt, rec: &SumRecurrence, point: &Point) -> CliResult<BiLaurent> {
    let mut out = BiLaurent::zero();
    for (m, c) in p.terms() {
        let c = c * Rational::from_integer(scale.clone());
        if !c.is_integer() {
            return Err(CliError::Math(format!("coefficient {c} is not integral after clearing denominators")));
        }
        let (mut qe, mut ae) = (m.exp(0) as i64, 0i64);
        for (g, name) in rec.gens.iter().enumerate().skip(1) {
            let e = m.exp(g) as i64;
            if e == 0 {
                continue;
            }
            if rec.grounds.contains(name) {
                ae += e;
            } else {
                let v = point
                    .get(name)
                    .ok_or_else(|| CliError::Input(format!("no value for {name} at the evaluation point")))?;
                qe += e * v;
            }
        }
        out = &out + &BiLaurent::monomial(c.to_integer(), qe, ae);
    }
    Ok(out)
}

/// `Σ c_s(v)·seq(v - s)` for the recurrence variables shifted and the
/// remaining entries of `point` (parameters) passed through unchanged.
pub fn residual(rec: &SumRecurrence, point: &Point, seq: &dyn Fn(&Point) -> BiLaurent) -> CliResult<BiLaurent> {
    let scale = common_denominator(rec);
    let mut total = BiLaurent::zero();
    for (s, c) in &rec.terms {
        let coeff = eval_coefficient(c, &scale, rec, point)?;
        if coeff.is_zero() {
            continue;
        }
        let mut shifted = point.clone();
        for (name, &x) in rec.rec_names.iter().zip(s) {
            let v = shifted
                .get_mut(name)
                .ok_or_else(|| CliError::Input(format!("no value for {name} at the evaluation point")))?;
            *v -= x;
        }
        total = &total + &(&coeff * &seq(&shifted));
    }
    Ok(total)
}

/// Every point of a box given as `(name, lo, hi)` ranges.
pub fn box_points(ranges: &[(&str, i64, i64)]) -> Vec<Point> {
    let mut out = vec![Point::new()];
    for &(name, lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut p = p.clone();
                    p.insert(name.to_string(), x);
                    p
                })
            })
            .collect();
    }
    out
}

/// The first point of `points` where the residual does not vanish.
pub fn first_failure(
    rec: &SumRecurrence,
    points: &[Point],
    seq: &dyn Fn(&Point) -> BiLaurent,
) -> CliResult<Option<(Point, BiLaurent)>> {
    for p in points {
        let r = residual(rec, p, seq)?;
        if !r.is_zero() {
            return Ok(Some((p.clone(), r)));
        }
    }
    Ok(None)
}

pub fn describe_point(p: &Point) -> String {
    p.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ")
}

/// A sequence cached by point: shifted recurrence terms revisit values.
pub fn memo(f: impl Fn(&Point) -> BiLaurent) -> impl Fn(&Point) -> BiLaurent {
    let cache: RefCell<BTreeMap<Point, BiLaurent>> = RefCell::new(BTreeMap::new());
    move |p: &Point| {
        if let Some(v) = cache.borrow().get(p) {
            return v.clone();
        }
        let v = f(p);
        cache.borrow_mut().insert(p.clone(), v.clone());
        v
    }
}
