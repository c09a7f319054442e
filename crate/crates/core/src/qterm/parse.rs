//! JSON serialization of summands.
//!
//! ```json
//! { "schema_version": 1, "name": "psum",
//!   "variables": [{"name": "L1", "class": "rec"}, {"name": "s", "class": "sum"}],
//!   "substitutions": [{"name": "t", "linform": "L1 - s"}],
//!   "factors": [
//!     {"kind": "qpow", "exponent": [{"tri": "s"}, {"prod": ["s", "L1 + 2"]}, {"lin": "s"}]},
//!     {"kind": "qbinom", "top": "L1", "bottom": "s", "base": 1},
//!     {"kind": "qpoch", "arg": "s", "sym": "alpha", "length": "L1", "power": 1},
//!     {"kind": "sympow", "base": "-1", "exponent": "s"}],
//!   "tail": {"op": "add", "args": [{"leaf": {"coef": "1", "qexp": "s"}}, "1"]} }
//! ```
//!
//! Linear forms are strings such as `"L1 - t + a"` or objects
//! `{"coeffs": {"L1": "1", "t": "-1"}, "const": "0"}`. Tail leaves may be
//! abbreviated to a bare rational string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linform::LinForm;
use super::summand::{Factor, QuadForm, QuadPart, Summand, Tail, TailCoef, TailOp};
use super::vars::{SymbolClass, VarTable};
use crate::algebra::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

pub const SUMMAND_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum LinFormDoc {
    Text(String),
    Object {
        #[serde(default)]
        coeffs: BTreeMap<String, String>,
        #[serde(rename = "const", default)]
        constant: Option<String>,
    },
}

impl LinFormDoc {
    pub fn to_linform(&self) -> Result<LinForm> {
        match self {
            LinFormDoc::Text(s) => LinForm::parse(s),
            LinFormDoc::Object { coeffs, constant } => {
                let mut parts = Vec::new();
                for (n, c) in coeffs {
                    parts.push((n.clone(), parse_rational(c)?));
                }
                let c0 = match constant {
                    Some(c) => parse_rational(c)?,
                    None => Rational::from_integer(0.into()),
                };
                Ok(LinForm::from_parts(parts, c0))
            }
        }
    }

    pub fn from_linform(l: &LinForm) -> Self {
        LinFormDoc::Object {
            coeffs: l
                .coeffs()
                .iter()
                .map(|(n, c)| (n.clone(), format_rational(c)))
                .collect(),
            constant: Some(format_rational(l.constant_part())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VariableDoc {
    pub name: String,
    pub class: SymbolClass,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SubstitutionDoc {
    pub name: String,
    pub linform: LinFormDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum QuadPartDoc {
    Tri {
        tri: LinFormDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coef: Option<String>,
    },
    Prod {
        prod: [LinFormDoc; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coef: Option<String>,
    },
    Lin {
        lin: LinFormDoc,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorDoc {
    Qpow {
        exponent: Vec<QuadPartDoc>,
    },
    Qbinom {
        top: LinFormDoc,
        bottom: LinFormDoc,
        #[serde(default = "default_base")]
        base: u32,
    },
    Qpoch {
        arg: LinFormDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sym: Option<String>,
        length: LinFormDoc,
        #[serde(default = "default_power")]
        power: i32,
    },
    Sympow {
        base: String,
        exponent: LinFormDoc,
    },
}

fn default_base() -> u32 {
    1
}

fn default_power() -> i32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LeafDoc {
    pub coef: String,
    pub qexp: LinFormDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum TailDoc {
    Constant(String),
    Leaf { leaf: LeafDoc },
    Node { op: String, args: Vec<TailDoc> },
}

impl Default for TailDoc {
    fn default() -> Self {
        TailDoc::Constant("1".into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SummandDoc {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    #[serde(default)]
    pub name: String,
    pub variables: Vec<VariableDoc>,
    #[serde(default)]
    pub substitutions: Vec<SubstitutionDoc>,
    #[serde(default)]
    pub factors: Vec<FactorDoc>,
    #[serde(default)]
    pub tail: TailDoc,
}

fn default_schema() -> u32 {
    SUMMAND_SCHEMA_VERSION
}

/// Parses a summand document and applies its substitutions.
pub fn parse_summand(json: &str) -> Result<Summand> {
    let doc: SummandDoc = serde_json::from_str(json).map_err(|e| Error::Parse(format!("summand JSON: {e}")))?;
    summand_from_doc(&doc)
}

pub fn summand_from_doc(doc: &SummandDoc) -> Result<Summand> {
    if doc.schema_version != SUMMAND_SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported summand schema_version {}",
            doc.schema_version
        )));
    }
    let declared: Vec<(String, SymbolClass)> = doc.variables.iter().map(|v| (v.name.clone(), v.class)).collect();
    let table = VarTable::new(declared, None)?;
    // Substitution definitions may refer to earlier ones; expand in order.
    let mut subs: Vec<(String, LinForm)> = Vec::new();
    for s in &doc.substitutions {
        if table.contains(&s.name) {
            return Err(Error::Parse(format!(
                "substitution name `{}` clashes with a declared variable",
                s.name
            )));
        }
        let mut l = s.linform.to_linform()?;
        for (n, v) in &subs {
            l = l.substitute(n, v);
        }
        subs.push((s.name.clone(), l));
    }
    let expand = |l: LinForm| -> LinForm {
        subs.iter().rev().fold(l, |acc, (n, v)| acc.substitute(n, v))
    };
    let form = |d: &LinFormDoc| -> Result<LinForm> { Ok(expand(d.to_linform()?)) };
    let mut factors = Vec::new();
    for f in &doc.factors {
        factors.push(match f {
            FactorDoc::Qpow { exponent } => {
                let mut parts = Vec::new();
                for p in exponent {
                    parts.push(match p {
                        QuadPartDoc::Tri { tri, coef } => QuadPart::Tri(opt_rational(coef)?, form(tri)?),
                        QuadPartDoc::Prod { prod, coef } => {
                            QuadPart::Prod(opt_rational(coef)?, form(&prod[0])?, form(&prod[1])?)
                        }
                        QuadPartDoc::Lin { lin } => QuadPart::Lin(form(lin)?),
                    });
                }
                Factor::QPow(QuadForm::new(parts))
            }
            FactorDoc::Qbinom { top, bottom, base } => Factor::QBinom {
                top: form(top)?,
                bottom: form(bottom)?,
                base: *base,
            },
            FactorDoc::Qpoch {
                arg,
                sym,
                length,
                power,
            } => Factor::QPoch {
                arg: form(arg)?,
                sym: sym.clone(),
                length: form(length)?,
                power: *power,
            },
            FactorDoc::Sympow { base, exponent } => Factor::SymPow {
                base: base.clone(),
                exponent: form(exponent)?,
            },
        });
    }
    let tail = tail_from_doc(&doc.tail, &form)?;
    let mut s = Summand::new(&doc.name, table, factors, tail)?;
    s.substitutions = subs;
    Ok(s)
}

fn opt_rational(c: &Option<String>) -> Result<Rational> {
    match c {
        None => Ok(Rational::from_integer(1.into())),
        Some(s) => parse_rational(s),
    }
}

fn tail_coef(s: &str) -> Result<TailCoef> {
    match parse_rational(s) {
        Ok(r) => Ok(TailCoef::Number(r)),
        Err(_) if s.chars().next().is_some_and(|c| c.is_alphabetic()) => Ok(TailCoef::Symbol(s.to_string())),
        Err(_) => Err(Error::MalformedTail(format!("bad leaf coefficient {s:?}"))),
    }
}

fn tail_from_doc(doc: &TailDoc, form: &dyn Fn(&LinFormDoc) -> Result<LinForm>) -> Result<Tail> {
    Ok(match doc {
        TailDoc::Constant(c) => Tail::Leaf {
            coef: tail_coef(c)?,
            qexp: LinForm::zero(),
        },
        TailDoc::Leaf { leaf } => Tail::Leaf {
            coef: tail_coef(&leaf.coef)?,
            qexp: form(&leaf.qexp)?,
        },
        TailDoc::Node { op, args } => {
            let op = match op.as_str() {
                "add" => TailOp::Add,
                "sub" => TailOp::Sub,
                "mul" => TailOp::Mul,
                "div" => TailOp::Div,
                "neg" => TailOp::Neg,
                other => return Err(Error::MalformedTail(format!("unknown operator `{other}`"))),
            };
            let args = args
                .iter()
                .map(|a| tail_from_doc(a, form))
                .collect::<Result<Vec<_>>>()?;
            let t = Tail::Node { op, args };
            t.validate_shape()?;
            t
        }
    })
}

/// Parses `NAME=LINFORM` as used on the command line.
pub fn parse_substitution(s: &str) -> Result<(String, LinForm)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("substitution {s:?} is not of the form NAME=LINFORM")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(Error::Parse(format!("bad substitution target {name:?}")));
    }
    Ok((name.to_string(), LinForm::parse(value)?))
}
