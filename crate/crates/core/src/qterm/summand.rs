//! Symbolic q-hypergeometric summands.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::linform::LinForm;
use super::vars::{SymbolClass, VarTable, MINUS_ONE};
use crate::algebra::rational::{format_rational, rat, rat2, Rational};
use crate::error::{Error, Result};

/// One summand of a quadratic form in the exponent of `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuadPart {
    /// `c · T(ℓ)` with `T(m) = m(m+1)/2`.
    Tri(Rational, LinForm),
    /// `c · ℓ₁ · ℓ₂`.
    Prod(Rational, LinForm, LinForm),
    /// `ℓ`.
    Lin(LinForm),
}

/// A quadratic form written as a sum of triangular numbers, products and a
/// linear part; equivalent to a symmetric rational matrix plus an affine part.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QuadForm {
    pub parts: Vec<QuadPart>,
}

impl QuadForm {
    pub fn new(parts: Vec<QuadPart>) -> Self {
        QuadForm { parts }
    }

    /// `Q(v - s) - Q(v)` as a linear form, given the shift amount `δ(ℓ)` of
    /// every linear form.
    pub fn shift_difference(&self, delta: &dyn Fn(&LinForm) -> Result<Rational>) -> Result<LinForm> {
        let mut out = LinForm::zero();
        for part in &self.parts {
            let term = match part {
                QuadPart::Tri(c, l) => {
                    // T(ℓ-δ) - T(ℓ) = -δℓ + (δ² - δ)/2
                    let d = delta(l)?;
                    let k = (&d * &d - &d) * rat2(1, 2);
                    l.scale(&-d).add(&LinForm::constant(k)).scale(c)
                }
                QuadPart::Prod(c, a, b) => {
                    // (a-δa)(b-δb) - ab = -δb·a - δa·b + δa·δb
                    let da = delta(a)?;
                    let db = delta(b)?;
                    a.scale(&-db.clone())
                        .add(&b.scale(&-da.clone()))
                        .add(&LinForm::constant(da * db))
                        .scale(c)
                }
                QuadPart::Lin(l) => LinForm::constant(-delta(l)?),
            };
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Value at an integer point.
    pub fn eval(&self, point: &dyn Fn(&str) -> Option<i64>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for part in &self.parts {
            acc += match part {
                QuadPart::Tri(c, l) => {
                    let m = l.eval(point)?;
                    c * (&m * (&m + Rational::one())) * rat2(1, 2)
                }
                QuadPart::Prod(c, a, b) => c * a.eval(point)? * b.eval(point)?,
                QuadPart::Lin(l) => l.eval(point)?,
            };
        }
        Ok(acc)
    }

    fn map_forms(&self, f: &dyn Fn(&LinForm) -> LinForm) -> QuadForm {
        QuadForm {
            parts: self
                .parts
                .iter()
                .map(|p| match p {
                    QuadPart::Tri(c, l) => QuadPart::Tri(c.clone(), f(l)),
                    QuadPart::Prod(c, a, b) => QuadPart::Prod(c.clone(), f(a), f(b)),
                    QuadPart::Lin(l) => QuadPart::Lin(f(l)),
                })
                .collect(),
        }
    }

    fn forms(&self) -> Vec<&LinForm> {
        self.parts
            .iter()
            .flat_map(|p| match p {
                QuadPart::Tri(_, l) | QuadPart::Lin(l) => vec![l],
                QuadPart::Prod(_, a, b) => vec![a, b],
            })
            .collect()
    }
}

/// A multiplicative building block of a summand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Factor {
    /// `q^{Q}`.
    QPow(QuadForm),
    /// Gaussian binomial `[top, bottom]` in base `q^base`; zero for negative bottom.
    QBinom { top: LinForm, bottom: LinForm, base: u32 },
    /// `(sym · q^{arg}; q)_{length}` raised to `power` (±1).
    QPoch {
        arg: LinForm,
        sym: Option<String>,
        length: LinForm,
        power: i32,
    },
    /// `base^{exponent}` for a ground symbol or the formal sign `-1`.
    SymPow { base: String, exponent: LinForm },
}

impl Factor {
    fn map_forms(&self, f: &dyn Fn(&LinForm) -> LinForm) -> Factor {
        match self {
            Factor::QPow(q) => Factor::QPow(q.map_forms(f)),
            Factor::QBinom { top, bottom, base } => Factor::QBinom {
                top: f(top),
                bottom: f(bottom),
                base: *base,
            },
            Factor::QPoch {
                arg,
                sym,
                length,
                power,
            } => Factor::QPoch {
                arg: f(arg),
                sym: sym.clone(),
                length: f(length),
                power: *power,
            },
            Factor::SymPow { base, exponent } => Factor::SymPow {
                base: base.clone(),
                exponent: f(exponent),
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Factor::QPow(_) => "qpow",
            Factor::QBinom { .. } => "qbinom",
            Factor::QPoch { .. } => "qpoch",
            Factor::SymPow { .. } => "sympow",
        }
    }
}

/// Coefficient of a tail leaf.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TailCoef {
    Number(Rational),
    Symbol(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TailOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Rational expression in `q`-powers of linear forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tail {
    /// `coef · q^{qexp}`.
    Leaf { coef: TailCoef, qexp: LinForm },
    Node { op: TailOp, args: Vec<Tail> },
}

impl Tail {
    pub fn one() -> Tail {
        Tail::Leaf {
            coef: TailCoef::Number(Rational::one()),
            qexp: LinForm::zero(),
        }
    }

    /// True when the tail is a constant leaf.
    pub fn is_constant(&self) -> bool {
        matches!(self, Tail::Leaf { coef: TailCoef::Number(_), qexp } if qexp.is_constant() && qexp.constant_part().is_zero())
    }

    fn map_forms(&self, f: &dyn Fn(&LinForm) -> LinForm) -> Tail {
        match self {
            Tail::Leaf { coef, qexp } => Tail::Leaf {
                coef: coef.clone(),
                qexp: f(qexp),
            },
            Tail::Node { op, args } => Tail::Node {
                op: *op,
                args: args.iter().map(|a| a.map_forms(f)).collect(),
            },
        }
    }

    /// Number of distinct non-constant `q`-power leaves.
    pub fn q_power_leaves(&self) -> usize {
        let mut set = BTreeSet::new();
        self.collect_leaves(&mut set);
        set.len()
    }

    fn collect_leaves(&self, set: &mut BTreeSet<LinForm>) {
        match self {
            Tail::Leaf { qexp, .. } => {
                if !qexp.is_constant() {
                    set.insert(qexp.clone());
                }
            }
            Tail::Node { args, .. } => args.iter().for_each(|a| a.collect_leaves(set)),
        }
    }

    fn forms(&self, out: &mut Vec<LinForm>) {
        match self {
            Tail::Leaf { qexp, .. } => out.push(qexp.clone()),
            Tail::Node { args, .. } => args.iter().for_each(|a| a.forms(out)),
        }
    }

    fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Tail::Leaf {
                coef: TailCoef::Symbol(s),
                ..
            } => {
                out.insert(s.clone());
            }
            Tail::Leaf { .. } => {}
            Tail::Node { args, .. } => args.iter().for_each(|a| a.symbols(out)),
        }
    }

    pub(crate) fn validate_shape(&self) -> Result<()> {
        match self {
            Tail::Leaf { .. } => Ok(()),
            Tail::Node { op, args } => {
                let ok = match op {
                    TailOp::Add | TailOp::Mul => !args.is_empty(),
                    TailOp::Sub | TailOp::Div => args.len() == 2,
                    TailOp::Neg => args.len() == 1,
                };
                if !ok {
                    return Err(Error::MalformedTail(format!("{op:?} with {} arguments", args.len())));
                }
                args.iter().try_for_each(|a| a.validate_shape())
            }
        }
    }
}

/// A q-hypergeometric term: product of factors times a rational tail.
#[derive(Clone, Debug)]
pub struct Summand {
    pub name: String,
    pub table: VarTable,
    pub factors: Vec<Factor>,
    pub tail: Tail,
    /// Substitutions applied so far, in order, for provenance.
    pub substitutions: Vec<(String, LinForm)>,
}

impl Summand {
    /// Builds and validates a summand whose forms mention only table symbols.
    pub fn new(name: &str, table: VarTable, factors: Vec<Factor>, tail: Tail) -> Result<Self> {
        let s = Summand {
            name: name.to_string(),
            table,
            factors,
            tail,
            substitutions: Vec::new(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Constant summand `F ≡ 1` over the given table.
    pub fn constant_one(table: VarTable) -> Self {
        Summand {
            name: "one".into(),
            table,
            factors: Vec::new(),
            tail: Tail::one(),
            substitutions: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        self.tail.validate_shape()?;
        let check_form = |l: &LinForm, exponent: bool| -> Result<()> {
            for (name, c) in l.coeffs() {
                if !self.table.contains(name) {
                    return Err(Error::UnknownSymbol(name.clone()));
                }
                if !self.table.is_integer_symbol(name) {
                    return Err(Error::Parse(format!(
                        "ground symbol `{name}` cannot appear in the linear form {l}"
                    )));
                }
                if exponent && !c.is_integer() {
                    return Err(Error::NonInteger(format!(
                        "coefficient {} of `{name}` in {l}",
                        format_rational(c)
                    )));
                }
            }
            if exponent && !l.constant_part().is_integer() {
                return Err(Error::NonInteger(format!("constant term of {l}")));
            }
            Ok(())
        };
        let check_ground = |s: &str| -> Result<()> {
            if s == MINUS_ONE || self.table.class_of(s) == Some(SymbolClass::Ground) {
                Ok(())
            } else if self.table.contains(s) {
                Err(Error::Parse(format!("`{s}` is not a ground symbol")))
            } else {
                Err(Error::UnknownSymbol(s.to_string()))
            }
        };
        for f in &self.factors {
            match f {
                Factor::QPow(q) => {
                    for l in q.forms() {
                        check_form(l, false)?;
                    }
                    self.validate_quadform(q)?;
                }
                Factor::QBinom { top, bottom, base } => {
                    if *base == 0 {
                        return Err(Error::Parse("q-binomial base exponent must be positive".into()));
                    }
                    check_form(top, true)?;
                    check_form(bottom, true)?;
                }
                Factor::QPoch {
                    arg,
                    sym,
                    length,
                    power,
                } => {
                    check_form(arg, true)?;
                    check_form(length, true)?;
                    if let Some(s) = sym {
                        check_ground(s)?;
                    }
                    if power.abs() != 1 {
                        return Err(Error::Parse(format!("q-Pochhammer power must be ±1, got {power}")));
                    }
                }
                Factor::SymPow { base, exponent } => {
                    check_ground(base)?;
                    check_form(exponent, true)?;
                }
            }
        }
        let mut forms = Vec::new();
        self.tail.forms(&mut forms);
        for l in &forms {
            check_form(l, true)?;
        }
        let mut syms = BTreeSet::new();
        self.tail.symbols(&mut syms);
        for s in &syms {
            check_ground(s)?;
        }
        Ok(())
    }

    /// `Q(v - e_x) - Q(v)` must have integer coefficients for every unit
    /// shift; this implies integrality for all integer shifts.
    fn validate_quadform(&self, q: &QuadForm) -> Result<()> {
        for idx in 0..self.table.shift_len() {
            let mut shift = vec![0i64; self.table.shift_len()];
            shift[idx] = 1;
            let diff = q.shift_difference(&|l| Ok(self.delta_rational(l, &shift)))?;
            let integral = diff.coeffs().values().all(|c| c.is_integer()) && diff.constant_part().is_integer();
            if !integral {
                return Err(Error::NonInteger(format!(
                    "q-power exponent difference {diff} for a unit shift of `{}`",
                    self.table.shift_symbol(idx)
                )));
            }
        }
        Ok(())
    }

    /// `ℓ(v) - ℓ(v - s)`, the amount by which a form decreases under the shift.
    pub(crate) fn delta_rational(&self, l: &LinForm, shift: &[i64]) -> Rational {
        let mut d = Rational::zero();
        for (name, c) in l.coeffs() {
            if let Some(i) = self.table.shift_index(name) {
                d += c * rat(shift[i]);
            }
        }
        d
    }

    /// Replaces an integer symbol by a linear form everywhere. The symbol is
    /// removed from the table; symbols new to the table become parameters.
    pub fn substitute(&self, name: &str, value: &LinForm) -> Result<Summand> {
        if !self.table.contains(name) {
            return Err(Error::UnknownSymbol(name.to_string()));
        }
        if !self.table.is_integer_symbol(name) {
            return Err(Error::Parse(format!("cannot substitute ground symbol `{name}`")));
        }
        if value.coeffs().contains_key(name) {
            return Err(Error::Parse(format!("substitution for `{name}` refers to itself")));
        }
        let mut declared: Vec<(String, SymbolClass)> = self
            .table
            .declared()
            .iter()
            .filter(|(n, _)| n != name)
            .cloned()
            .collect();
        for sym in value.symbols() {
            match self.table.class_of(sym) {
                Some(SymbolClass::Ground) => {
                    return Err(Error::Parse(format!("ground symbol `{sym}` in substitution")));
                }
                Some(_) => {}
                None => {
                    if !declared.iter().any(|(n, _)| n == sym) {
                        declared.push((sym.to_string(), SymbolClass::Param));
                    }
                }
            }
        }
        let rec_order: Vec<String> = self
            .table
            .rec_vars()
            .iter()
            .filter(|n| *n != name)
            .cloned()
            .collect();
        let table = VarTable::new(declared, Some(&rec_order))?;
        let f = |l: &LinForm| l.substitute(name, value);
        let mut out = Summand {
            name: self.name.clone(),
            table,
            factors: self.factors.iter().map(|x| x.map_forms(&f)).collect(),
            tail: self.tail.map_forms(&f),
            substitutions: self.substitutions.clone(),
        };
        out.substitutions.push((name.to_string(), value.clone()));
        out.validate()?;
        Ok(out)
    }

    /// Reclassifies the integer symbols: exactly the listed ones become
    /// recurrence variables, in the listed order; former recurrence variables
    /// not listed become parameters. Summation variables cannot be listed.
    pub fn with_rec(&self, rec: &[String]) -> Result<Summand> {
        let mut declared = self.table.declared().to_vec();
        for r in rec {
            match self.table.class_of(r) {
                None => return Err(Error::UnknownSymbol(r.clone())),
                Some(SymbolClass::Sum) => {
                    return Err(Error::Parse(format!("`{r}` is a summation variable")));
                }
                Some(SymbolClass::Ground) => {
                    return Err(Error::Parse(format!("`{r}` is a ground symbol")));
                }
                _ => {}
            }
        }
        for (n, c) in declared.iter_mut() {
            if *c == SymbolClass::Rec || *c == SymbolClass::Param {
                *c = if rec.contains(n) {
                    SymbolClass::Rec
                } else {
                    SymbolClass::Param
                };
            }
        }
        let table = VarTable::new(declared, Some(rec))?;
        let out = Summand {
            table,
            ..self.clone()
        };
        out.validate()?;
        Ok(out)
    }

    pub fn count_factors(&self, kind: &str) -> usize {
        self.factors.iter().filter(|f| f.kind() == kind).count()
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{} factors; rec {:?}; sum {:?}]",
            self.name,
            self.factors.len(),
            self.table.rec_vars(),
            self.table.sum_vars()
        )
    }
}
