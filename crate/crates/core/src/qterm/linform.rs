//! Affine linear forms over named integer symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};

/// `Σ c_x · x + c_0` with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinForm {
    coeffs: BTreeMap<String, Rational>,
    constant: Rational,
}

impl LinForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn symbol(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), Rational::one());
        LinForm {
            coeffs,
            constant: Rational::zero(),
        }
    }

    pub fn from_parts(coeffs: impl IntoIterator<Item = (String, Rational)>, constant: Rational) -> Self {
        let mut f = Self::constant(constant);
        for (name, c) in coeffs {
            f.add_term(&name, &c);
        }
        f
    }

    fn add_term(&mut self, name: &str, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(name.to_string()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(name);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(|s| s.as_str())
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (n, c) in &other.coeffs {
            out.add_term(n, c);
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> LinForm {
        if k.is_zero() {
            return LinForm::zero();
        }
        LinForm {
            coeffs: self.coeffs.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn neg(&self) -> LinForm {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &LinForm) -> LinForm {
        self.add(&other.neg())
    }

    pub fn add_const(&self, c: i64) -> LinForm {
        let mut out = self.clone();
        out.constant += rat(c);
        out
    }

    /// Replaces `name` by the form `value`.
    pub fn substitute(&self, name: &str, value: &LinForm) -> LinForm {
        match self.coeffs.get(name) {
            None => self.clone(),
            Some(c) => {
                let c = c.clone();
                let mut rest = self.clone();
                rest.coeffs.remove(name);
                rest.add(&value.scale(&c))
            }
        }
    }

    /// Value at a point; symbols missing from `point` are an error.
    pub fn eval(&self, point: &dyn Fn(&str) -> Option<i64>) -> Result<Rational> {
        let mut acc = self.constant.clone();
        for (n, c) in &self.coeffs {
            let v = point(n).ok_or_else(|| Error::UnknownSymbol(n.clone()))?;
            acc += c * rat(v);
        }
        Ok(acc)
    }

    /// Integer value at a point.
    pub fn eval_int(&self, point: &dyn Fn(&str) -> Option<i64>) -> Result<i64> {
        let v = self.eval(point)?;
        crate::algebra::rational::as_i64(&v)
            .ok_or_else(|| Error::NonInteger(format!("{self} evaluates to {}", format_rational(&v))))
    }

    /// Parses forms such as `L1 - t + a`, `2*i + 3`, `-1/2 x`, `i+j-1`.
    pub fn parse(s: &str) -> Result<LinForm> {
        parse_linform(s)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut write_term = |f: &mut fmt::Formatter<'_>, c: &Rational, name: Option<&str>| -> fmt::Result {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match name {
                Some(n) if a.is_one() => write!(f, "{n}"),
                Some(n) => write!(f, "{}*{n}", format_rational(&a)),
                None => write!(f, "{}", format_rational(&a)),
            }
        };
        for (n, c) in &self.coeffs {
            write_term(f, c, Some(n))?;
        }
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            write_term(f, &self.constant, None)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinForm({self})")
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn parse_linform(src: &str) -> Result<LinForm> {
    let err = |msg: &str| Error::Parse(format!("linear form {src:?}: {msg}"));
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut out = LinForm::zero();
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            if first {
                return Err(err("empty"));
            }
            break;
        }
        let mut sign = Rational::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err("expected `+` or `-`"));
        }
        first = false;
        // optional rational coefficient
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let coef = if pos > start {
            let text: String = chars[start..pos].iter().collect();
            Some(parse_rational(&text)?)
        } else {
            None
        };
        skip_ws(&mut pos);
        if pos < chars.len() && chars[pos] == '*' {
            if coef.is_none() {
                return Err(err("`*` without a coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos < chars.len() && is_ident_start(chars[pos]) {
            let start = pos;
            while pos < chars.len() && is_ident_char(chars[pos]) {
                pos += 1;
            }
            let name: String = chars[start..pos].iter().collect();
            let c = coef.unwrap_or_else(Rational::one) * &sign;
            out.add_term(&name, &c);
        } else {
            let c = coef.ok_or_else(|| err("expected a number or symbol"))?;
            out.constant += c * sign;
        }
    }
    Ok(out)
}
