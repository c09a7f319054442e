//! Symbol classification and generator allocation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::monomial::MAX_VARS;
use crate::error::{Error, Result};

/// Name of the formal sign, usable as a ground-symbol base without declaration.
pub const MINUS_ONE: &str = "-1";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolClass {
    /// Shifted by the recurrence; its generator lives in the coefficient field.
    Rec,
    /// Summed over; its generator is an elimination variable.
    Sum,
    /// Integer parameter held fixed; coefficient-field generator.
    Param,
    /// Non-integer symbol such as the Jacobi parameter; coefficient-field generator.
    Ground,
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolClass::Rec => "rec",
            SymbolClass::Sum => "sum",
            SymbolClass::Param => "param",
            SymbolClass::Ground => "ground",
        })
    }
}

/// Ordered symbols with their classes and polynomial generators.
///
/// Generator 0 is `q`. Then come the coefficient-field generators: `q^x` for
/// every recurrence variable (in recurrence order), `q^x` for every parameter
/// and the ground symbols themselves (declaration order). The elimination
/// generators `q^x` for the summation variables come last, so gcd recursion
/// treats them as main variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarTable {
    declared: Vec<(String, SymbolClass)>,
    rec: Vec<String>,
    sum: Vec<String>,
    gen_of: BTreeMap<String, usize>,
    gen_names: Vec<String>,
    first_elim: usize,
}

impl VarTable {
    /// Builds a table; `rec_order` fixes the order of the recurrence
    /// variables (defaults to declaration order).
    pub fn new(declared: Vec<(String, SymbolClass)>, rec_order: Option<&[String]>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (name, class) in &declared {
            if name == MINUS_ONE || name == "q" {
                return Err(Error::Parse(format!("reserved symbol name `{name}`")));
            }
            if seen.insert(name.clone(), *class).is_some() {
                return Err(Error::Parse(format!("symbol `{name}` declared twice")));
            }
        }
        let of_class = |c: SymbolClass| -> Vec<String> {
            declared
                .iter()
                .filter(|(_, k)| *k == c)
                .map(|(n, _)| n.clone())
                .collect()
        };
        let rec = match rec_order {
            None => of_class(SymbolClass::Rec),
            Some(order) => {
                let declared_rec = of_class(SymbolClass::Rec);
                let mut sorted_order = order.to_vec();
                sorted_order.sort();
                let mut sorted_decl = declared_rec.clone();
                sorted_decl.sort();
                if sorted_order != sorted_decl {
                    return Err(Error::Parse(format!(
                        "recurrence order {order:?} does not match recurrence variables {declared_rec:?}"
                    )));
                }
                order.to_vec()
            }
        };
        let sum = of_class(SymbolClass::Sum);
        let mut gen_names = vec!["q".to_string()];
        gen_names.extend(rec.iter().cloned());
        gen_names.extend(of_class(SymbolClass::Param));
        gen_names.extend(of_class(SymbolClass::Ground));
        let first_elim = gen_names.len();
        gen_names.extend(sum.iter().cloned());
        // One slot is kept free for the perturbation variable used by evaluation.
        if gen_names.len() > MAX_VARS - 1 {
            return Err(Error::TooManyVariables(gen_names.len(), MAX_VARS - 1));
        }
        let gen_of = gen_names
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Ok(VarTable {
            declared,
            rec,
            sum,
            gen_of,
            gen_names,
            first_elim,
        })
    }

    pub fn declared(&self) -> &[(String, SymbolClass)] {
        &self.declared
    }

    pub fn class_of(&self, name: &str) -> Option<SymbolClass> {
        self.declared.iter().find(|(n, _)| n == name).map(|(_, c)| *c)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.class_of(name).is_some()
    }

    pub fn is_integer_symbol(&self, name: &str) -> bool {
        matches!(
            self.class_of(name),
            Some(SymbolClass::Rec | SymbolClass::Sum | SymbolClass::Param)
        )
    }

    pub fn rec_vars(&self) -> &[String] {
        &self.rec
    }

    pub fn sum_vars(&self) -> &[String] {
        &self.sum
    }

    pub fn params(&self) -> Vec<String> {
        self.of_class(SymbolClass::Param)
    }

    pub fn grounds(&self) -> Vec<String> {
        self.of_class(SymbolClass::Ground)
    }

    fn of_class(&self, c: SymbolClass) -> Vec<String> {
        self.declared
            .iter()
            .filter(|(_, k)| *k == c)
            .map(|(n, _)| n.clone())
            .collect()
    }

    /// Length of a shift tuple: recurrence shifts followed by summation shifts.
    pub fn shift_len(&self) -> usize {
        self.rec.len() + self.sum.len()
    }

    /// Position of a shiftable symbol inside a shift tuple.
    pub fn shift_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.rec.iter().position(|n| n == name) {
            return Some(i);
        }
        self.sum
            .iter()
            .position(|n| n == name)
            .map(|i| self.rec.len() + i)
    }

    /// Name of the symbol at a shift-tuple position.
    pub fn shift_symbol(&self, idx: usize) -> &str {
        if idx < self.rec.len() {
            &self.rec[idx]
        } else {
            &self.sum[idx - self.rec.len()]
        }
    }

    /// Generator index for `q^name` (integer symbols) or `name` (ground symbols).
    pub fn gen(&self, name: &str) -> Option<usize> {
        self.gen_of.get(name).copied()
    }

    pub fn gen_count(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Generator indices of the elimination variables.
    pub fn elim_gens(&self) -> std::ops::Range<usize> {
        self.first_elim..self.gen_names.len()
    }

    /// Bit mask of the elimination generators.
    pub fn elim_mask(&self) -> u32 {
        self.elim_gens().fold(0, |m, g| m | (1 << g))
    }

    /// Index of the spare generator used for perturbation during evaluation.
    pub fn perturbation_gen(&self) -> usize {
        MAX_VARS - 1
    }

    /// Generators whose symbol is shifted by a shift tuple, as
    /// `(generator, position in the tuple)`.
    pub fn shift_gens(&self) -> Vec<(usize, usize)> {
        (0..self.shift_len())
            .map(|i| (self.gen(self.shift_symbol(i)).expect("shiftable symbols have generators"), i))
            .collect()
    }
}
