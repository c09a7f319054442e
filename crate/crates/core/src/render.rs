//! Human-readable rendering of recurrences in `SUM(...)` / `F(...)` notation.
//!
//! Generators for recurrence variables and parameters stand for `q^{name}`,
//! so a monomial `q^2·L^3` is printed `q^(2 + 3 L)`; ground symbols print as
//! themselves. Polynomial coefficients print as `q^(...) (poly)` with the
//! smallest term's q-power pulled out and the sign chosen so that the last
//! term inside the parentheses is positive.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::algebra::monomial::{LaurentMono, MAX_VARS};
use crate::algebra::rational::{format_rational, Rational};

/// A coefficient as Laurent terms, ready for rendering.
pub type CoeffTerms = Vec<(LaurentMono, Rational)>;

/// Generator naming used for rendering.
pub struct Namer<'a> {
    pub gens: &'a [String],
    pub grounds: &'a [String],
}

impl Namer<'_> {
    fn is_ground(&self, g: usize) -> bool {
        g > 0 && self.grounds.iter().any(|n| n == &self.gens[g])
    }

    /// Splits a Laurent monomial into its q-power part and its ground part.
    fn split(&self, m: &LaurentMono) -> (LaurentMono, LaurentMono) {
        let mut q = LaurentMono::one();
        let mut ground = LaurentMono::one();
        for v in 0..MAX_VARS.min(self.gens.len()) {
            if self.is_ground(v) {
                ground.0[v] = m.0[v];
            } else {
                q.0[v] = m.0[v];
            }
        }
        (q, ground)
    }

    /// `q^(c + a L + ...)`, empty for `q^0`.
    fn q_power(&self, m: &LaurentMono) -> String {
        let mut syms: Vec<(&str, i32)> = (1..self.gens.len().min(MAX_VARS))
            .filter(|&v| m.0[v] != 0 && !self.is_ground(v))
            .map(|v| (self.gens[v].as_str(), m.0[v]))
            .collect();
        syms.sort_by(|a, b| symbol_order(a.0, b.0));
        let c = m.0[0];
        if syms.is_empty() {
            return match c {
                0 => String::new(),
                c if c > 0 => format!("q^{c}"),
                c => format!("q^({c})"),
            };
        }
        if c == 0 && syms.len() == 1 && syms[0].1 == 1 {
            return format!("q^{}", syms[0].0);
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        if c != 0 {
            parts.push((c < 0, c.abs().to_string()));
        }
        for (name, e) in syms {
            let text = if e.abs() == 1 { name.to_string() } else { format!("{} {name}", e.abs()) };
            parts.push((e < 0, text));
        }
        format!("q^({})", join_signed(&parts))
    }

    fn ground_power(&self, m: &LaurentMono) -> String {
        let mut out: Vec<String> = Vec::new();
        for v in 1..self.gens.len().min(MAX_VARS) {
            if self.is_ground(v) && m.0[v] != 0 {
                out.push(match m.0[v] {
                    1 => self.gens[v].clone(),
                    e if e > 0 => format!("{}^{e}", self.gens[v]),
                    e => format!("{}^({e})", self.gens[v]),
                });
            }
        }
        out.join(" ")
    }

    /// A single term `c · m` as (negative, text of |c|·m); the text is empty
    /// for `±1`.
    fn term(&self, c: &Rational, m: &LaurentMono) -> (bool, String) {
        let (q, ground) = self.split(m);
        let mut parts: Vec<String> = Vec::new();
        if !c.abs().is_one() {
            parts.push(format_rational(&c.abs()));
        }
        let g = self.ground_power(&ground);
        if !g.is_empty() {
            parts.push(g);
        }
        let qp = self.q_power(&q);
        if !qp.is_empty() {
            parts.push(qp);
        }
        (c.is_negative(), parts.join(" "))
    }

    /// Renders a coefficient given as Laurent terms. Returns (negative, text)
    /// where the text is empty for `±1`.
    pub fn coefficient(&self, terms: &[(LaurentMono, Rational)]) -> (bool, String) {
        let mut terms: Vec<&(LaurentMono, Rational)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        assert!(!terms.is_empty(), "zero coefficients are not rendered");
        terms.sort_by(|a, b| display_order(&a.0, &b.0));
        if terms.len() == 1 {
            return self.term(&terms[0].1, &terms[0].0);
        }
        let (factor, _) = self.split(&terms[0].0);
        let inv = factor.inv();
        let negative = terms.last().unwrap().1.is_negative();
        let inner: Vec<(bool, String)> = terms
            .iter()
            .map(|(m, c)| {
                let c = if negative { -c.clone() } else { c.clone() };
                let (neg, text) = self.term(&c, &m.mul(&inv));
                (neg, if text.is_empty() { "1".to_string() } else { text })
            })
            .collect();
        let poly = format!("({})", join_signed(&inner));
        let prefix = self.q_power(&factor);
        (negative, if prefix.is_empty() { poly } else { format!("{prefix} {poly}") })
    }
}

/// Terms of a polynomial coefficient ordered by total degree, then exponents.
fn display_order(a: &LaurentMono, b: &LaurentMono) -> Ordering {
    let da: i64 = a.0.iter().map(|&e| e as i64).sum();
    let db: i64 = b.0.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Case-insensitive symbol order, ties broken case-sensitively.
pub fn symbol_order(a: &str, b: &str) -> Ordering {
    a.to_lowercase().cmp(&b.to_lowercase()).then_with(|| a.cmp(b))
}

/// Joins (negative, text) parts as `a + b - c`, the first with a leading `-`
/// when negative.
pub fn join_signed(parts: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, text)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(text);
    }
    out
}

/// A shifted argument `v - s` in the form `-1 + L`, `L`, `2 + L`.
pub fn shifted_argument(name: &str, offset: i64) -> String {
    match offset {
        0 => name.to_string(),
        o => format!("{o} + {name}"),
    }
}

/// `c1 HEAD(args1) + c2 HEAD(args2) + ... = 0` for terms given as
/// (argument offsets, coefficient terms). When a term has all offsets zero,
/// signs are flipped as needed so that it is printed with a leading `-`.
pub fn render_relation(head: &str, names: &[String], namer: &Namer, terms: &[(Vec<i64>, CoeffTerms)]) -> String {
    let flip = terms
        .iter()
        .find(|(o, _)| o.iter().all(|&x| x == 0))
        .is_some_and(|(_, c)| !namer.coefficient(c).0);
    let parts: Vec<(bool, String)> = terms
        .iter()
        .map(|(offsets, coeff)| {
            let args: Vec<String> = names
                .iter()
                .zip(offsets)
                .map(|(n, &o)| shifted_argument(n, o))
                .collect();
            let call = format!("{head}({})", args.join(", "));
            let (neg, c) = namer.coefficient(coeff);
            (neg != flip, if c.is_empty() { call } else { format!("{c} {call}") })
        })
        .collect();
    format!("{} = 0", join_signed(&parts))
}
