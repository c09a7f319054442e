//! k-free recurrences of summands (the q-analogue of Sister Celine's method).
//!
//! For a structure set `S` the ansatz `Σ_{s∈S} σ_s F(v - s) = 0` is divided by
//! `F(v)`, giving `Σ σ_s R_s = 0` with `R_s = F(v - s)/F(v)`. Clearing the
//! elimination-involving denominators turns this into a polynomial identity
//! in the summation generators; comparing coefficients of their power
//! products gives a linear system over the field of the remaining
//! generators, whose nullspace yields the recurrences.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rayon::prelude::*;

use crate::algebra::factored::{clearing_monomial, expand_product, FactoredRat};
use crate::algebra::gcd::gcd_many;
use crate::algebra::monomial::{LaurentMono, Monomial, MAX_VARS};
use crate::algebra::rational::rational_content;
use crate::algebra::{nullspace, LaurentPoly, MultiPoly, PolyMatrix, Rational};
use crate::error::{Error, Result};
use crate::qterm::Summand;
use crate::render::{render_relation, CoeffTerms, Namer};
use crate::structset::{check_width, elim_part, QuotientData, StructureSet};

/// A recurrence `Σ_s σ_s F(v - s) = 0` whose coefficients are polynomials in
/// the non-summation generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KFreeRecurrence {
    /// Shift tuples with nonzero coefficients, sorted, paired with them.
    pub terms: Vec<(Vec<i64>, MultiPoly)>,
    /// Generator names (index 0 is `q`).
    pub gens: Vec<String>,
    /// Generators that stand for ground symbols rather than powers of `q`.
    pub grounds: Vec<String>,
    /// Names of the shifted variables: recurrence variables, then summation
    /// variables.
    pub shift_names: Vec<String>,
    /// Number of recurrence variables among `shift_names`.
    pub rec_len: usize,
}

impl KFreeRecurrence {
    /// Builds a recurrence in the layout of `f`, dropping zero coefficients.
    pub fn from_terms(f: &Summand, terms: impl IntoIterator<Item = (Vec<i64>, MultiPoly)>) -> Result<Self> {
        let width = f.table.shift_len();
        let mut map: BTreeMap<Vec<i64>, MultiPoly> = BTreeMap::new();
        for (s, c) in terms {
            if s.len() != width {
                return Err(Error::Shape(format!("shift {s:?} has length {}, expected {width}", s.len())));
            }
            let entry = map.entry(s).or_insert_with(MultiPoly::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::AllZero);
        }
        Ok(KFreeRecurrence {
            terms: map.into_iter().collect(),
            gens: f.table.gen_names().to_vec(),
            grounds: f.table.grounds(),
            shift_names: (0..width).map(|i| f.table.shift_symbol(i).to_string()).collect(),
            rec_len: f.table.rec_vars().len(),
        })
    }

    pub fn structure(&self) -> StructureSet {
        StructureSet::new(self.terms.iter().map(|(s, _)| s.clone()).collect()).expect("recurrences are non-empty")
    }

    pub fn coeff(&self, shift: &[i64]) -> Option<&MultiPoly> {
        self.terms.iter().find(|(s, _)| s == shift).map(|(_, c)| c)
    }

    /// Human-readable `c F(...) + ... = 0` over all shifted variables.
    pub fn render(&self) -> String {
        let namer = Namer {
            gens: &self.gens,
            grounds: &self.grounds,
        };
        let terms: Vec<(Vec<i64>, CoeffTerms)> = self
            .terms
            .iter()
            .rev()
            .map(|(s, c)| (s.iter().map(|x| -x).collect(), LaurentPoly::from_poly(c.clone()).terms()))
            .collect();
        render_relation("F", &self.shift_names, &namer, &terms)
    }

    /// True when no coefficient mentions a generator in `elim_mask`.
    fn elimination_free(&self, elim_mask: u32) -> bool {
        self.terms.iter().all(|(_, c)| c.vars_mask() & elim_mask == 0)
    }
}

/// Canonical form of a coefficient vector: polynomial and rational content
/// (including common monomial factors, which are units for Laurent
/// coefficients) removed; the coefficient at the lexicographically greatest
/// shift has a positive leading coefficient. `terms` must be sorted by shift.
pub fn normalize_terms(terms: &[(Vec<i64>, MultiPoly)]) -> Result<Vec<(Vec<i64>, MultiPoly)>> {
    let nonzero: Vec<&(Vec<i64>, MultiPoly)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
    let Some(last) = nonzero.iter().max_by(|a, b| a.0.cmp(&b.0)) else {
        return Err(Error::AllZero);
    };
    let g = gcd_many(nonzero.iter().map(|(_, c)| c));
    let divided: Vec<(Vec<i64>, MultiPoly)> = nonzero
        .par_iter()
        .map(|(s, c)| (s.clone(), if g.is_one() { c.clone() } else { c.div_exact(&g).expect("content divides") }))
        .collect();
    let content = rational_content(divided.iter().flat_map(|(_, c)| c.terms().iter().map(|t| &t.1)));
    let anchor = divided.iter().find(|(s, _)| s == &last.0).expect("anchor survives");
    let scale = if anchor.1.leading_coeff().is_negative() {
        -content.recip()
    } else {
        content.recip()
    };
    let mut out: Vec<(Vec<i64>, MultiPoly)> = divided.into_iter().map(|(s, c)| (s, c.scale(&scale))).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Canonical form of a recurrence (see [`normalize_terms`]); idempotent.
pub fn normalize(rec: &KFreeRecurrence) -> Result<KFreeRecurrence> {
    Ok(KFreeRecurrence {
        terms: normalize_terms(&rec.terms)?,
        ..rec.clone()
    })
}

/// All k-free recurrences over the structure set, one per nullspace basis
/// vector, normalized and ordered by support size, then total degree, then
/// lexicographically. An empty list means there is no recurrence over `S`.
pub fn find_recurrences(f: &Summand, structure: &StructureSet) -> Result<Vec<KFreeRecurrence>> {
    check_width(f, structure)?;
    let shifts = structure.tuples();
    let system = celine_system(f, shifts)?;
    let basis = nullspace(&system.matrix);
    let mut recs: Vec<KFreeRecurrence> = basis
        .into_par_iter()
        .map(|tau| system.recurrence(f, shifts, &tau))
        .collect::<Result<_>>()?;
    recs.sort_by(|a, b| {
        let da: u32 = a.terms.iter().map(|(_, c)| c.total_degree()).sum();
        let db: u32 = b.terms.iter().map(|(_, c)| c.total_degree()).sum();
        a.terms
            .len()
            .cmp(&b.terms.len())
            .then(da.cmp(&db))
            .then_with(|| a.terms.cmp(&b.terms))
    });
    debug_assert!(recs.iter().all(|r| r.elimination_free(f.table.elim_mask())));
    Ok(recs)
}

/// The linear system of the method: `Σ_s τ_s P_s = 0` where `P_s` is the
/// elimination-dependent part of the cleared quotient `R_s` and
/// `σ_s = τ_s / C_s` with `C_s` the part free of elimination generators.
/// Rows are indexed by monomials in the elimination generators.
pub(crate) struct CelineSystem {
    pub matrix: PolyMatrix,
    pub columns: Vec<FactoredRat>,
}

impl CelineSystem {
    /// The normalized recurrence for a nullspace vector `τ`.
    pub fn recurrence(&self, f: &Summand, shifts: &[Vec<i64>], tau: &[MultiPoly]) -> Result<KFreeRecurrence> {
        let sigma = divide_by_columns(tau, &self.columns.iter().collect::<Vec<_>>());
        let rec = KFreeRecurrence::from_terms(f, shifts.iter().cloned().zip(sigma))?;
        normalize(&rec)
    }
}

pub(crate) fn celine_system(f: &Summand, shifts: &[Vec<i64>]) -> Result<CelineSystem> {
    let columns: Vec<Vec<ColumnPart>> = (0..shifts.len())
        .map(|shift| {
            vec![ColumnPart {
                shift,
                coef: MultiPoly::one(),
                mono: LaurentMono::one(),
            }]
        })
        .collect();
    general_system(f, shifts, &columns)
}

/// One summand of a generalized unknown `Σ_parts coef · mono · R_shift`:
/// `coef` is free of elimination generators, `mono` is any Laurent monomial.
#[derive(Clone, Debug)]
pub(crate) struct ColumnPart {
    pub shift: usize,
    pub coef: MultiPoly,
    pub mono: LaurentMono,
}

/// The system `Σ_c σ_c Σ_{parts of c} coef · mono · R_shift = 0`. Each column
/// is scaled by the common factor of its parts that is free of elimination
/// generators, so `σ_c = τ_c / columns[c]` as in the plain method.
/// `C_s`, the elimination part of the monomial of `R_s`, and the elimination
/// factors of `R_s` with their multiplicities.
type ShiftParts = (FactoredRat, LaurentMono, Vec<(MultiPoly, u32)>);

pub(crate) fn general_system(f: &Summand, shifts: &[Vec<i64>], spec: &[Vec<ColumnPart>]) -> Result<CelineSystem> {
    let n = shifts.len();
    let elim_mask = f.table.elim_mask();
    let data = QuotientData::new(f, shifts)?;
    let d = data.elim_denominator(0..n);

    // Per shift: C_s (free of elimination generators), the elimination part
    // of the monomial, and the elimination factors cleared by D.
    let per_shift: Vec<ShiftParts> = (0..n)
        .map(|i| {
            let r = &data.quotients[i];
            let mono_elim = elim_part(&r.mono, elim_mask);
            let mut c = FactoredRat::from_scalar(r.scalar.clone());
            c.mono = r.mono.mul(&mono_elim.inv());
            let mut elim = Vec::new();
            let mut seen = Vec::new();
            for (p, &e) in &r.factors {
                let idx = data.basis.position(p).expect("refined factors are leaves");
                if data.elim_leaf[idx] {
                    seen.push(idx);
                    let total = e + d.get(&idx).copied().unwrap_or(0) as i32;
                    if total > 0 {
                        elim.push((p.clone(), total as u32));
                    }
                } else {
                    c.mul_poly_pow(p, e);
                }
            }
            for (&idx, &m) in &d {
                if !seen.contains(&idx) {
                    elim.push((data.basis.leaves()[idx].clone(), m));
                }
            }
            (c, mono_elim, elim)
        })
        .collect();
    let part_elim = |p: &ColumnPart| per_shift[p.shift].1.mul(&elim_part(&p.mono, elim_mask));
    let shift_elim = clearing_monomial(spec.iter().flatten().map(part_elim).collect::<Vec<_>>().iter());

    // Columns as maps: elimination monomial → coefficient polynomial.
    let built: Vec<(FactoredRat, BTreeMap<Monomial, MultiPoly>)> = spec
        .par_iter()
        .map(|parts| {
            let free: Vec<FactoredRat> = parts
                .iter()
                .map(|p| {
                    let mut x = per_shift[p.shift].0.clone();
                    x.mono = x.mono.mul(&p.mono.mul(&elim_part(&p.mono, elim_mask).inv()));
                    x.mul_poly_pow(&p.coef, 1);
                    x
                })
                .collect();
            let scale = common_part(&free);
            let mut poly = MultiPoly::zero();
            for (p, x) in parts.iter().zip(&free) {
                let (mono, neg) = part_elim(p).mul(&shift_elim).split_signs();
                debug_assert!(neg.is_one());
                let refs: Vec<(&MultiPoly, u32)> = per_shift[p.shift].2.iter().map(|(q, e)| (q, *e)).collect();
                let elim = expand_product(&mono, &refs);
                let residual = expand_nonnegative(&x.mul(&scale.inv()));
                poly = &poly + &(&elim * &residual);
            }
            let mut by_row: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
            for (m, c) in poly.terms() {
                let (e, rest) = m.split(elim_mask);
                by_row.entry(e).or_default().push((rest, c.clone()));
            }
            let col = by_row
                .into_iter()
                .map(|(e, terms)| (e, MultiPoly::from_terms(terms)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            (scale, col)
        })
        .collect();
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (_, col) in &built {
        for m in col.keys() {
            let next = row_index.len();
            row_index.entry(*m).or_insert(next);
        }
    }
    let mut matrix = PolyMatrix::zeros(row_index.len(), spec.len());
    let mut columns = Vec::with_capacity(spec.len());
    for (j, (scale, col)) in built.into_iter().enumerate() {
        for (m, c) in col {
            matrix.set(row_index[&m], j, c);
        }
        columns.push(scale);
    }
    Ok(CelineSystem { matrix, columns })
}

/// The largest factor common to all inputs that is visible from their
/// factorizations: minimal exponent per factor and per variable, with the
/// scalar of the first input.
fn common_part(xs: &[FactoredRat]) -> FactoredRat {
    let mut out = FactoredRat::from_scalar(xs[0].scalar.clone());
    out.mono = xs[0].mono;
    for x in &xs[1..] {
        for v in 0..MAX_VARS {
            out.mono.0[v] = out.mono.0[v].min(x.mono.0[v]);
        }
    }
    let keys: BTreeSet<&MultiPoly> = xs.iter().flat_map(|x| x.factors.keys()).collect();
    for p in keys {
        let e = xs.iter().map(|x| x.factors.get(p).copied().unwrap_or(0)).min().unwrap_or(0);
        if e != 0 {
            out.factors.insert(p.clone(), e);
        }
    }
    out
}

/// Expands a factored rational with non-negative exponents.
fn expand_nonnegative(x: &FactoredRat) -> MultiPoly {
    let (mono, neg) = x.mono.split_signs();
    debug_assert!(neg.is_one());
    let refs: Vec<(&MultiPoly, u32)> = x
        .factors
        .iter()
        .map(|(p, &e)| {
            debug_assert!(e >= 0);
            (p, e as u32)
        })
        .collect();
    expand_product(&mono, &refs).scale(&x.scalar)
}

/// `σ_s = τ_s / C_s`, scaled by a common multiple so all entries are
/// polynomials.
pub(crate) fn divide_by_columns(tau: &[MultiPoly], cols: &[&FactoredRat]) -> Vec<MultiPoly> {
    let inv: Vec<Option<FactoredRat>> = tau
        .iter()
        .zip(cols)
        .map(|(t, c)| (!t.is_zero()).then(|| c.inv()))
        .collect();
    let mut lift: BTreeMap<MultiPoly, i32> = BTreeMap::new();
    for g in inv.iter().flatten() {
        for (p, &e) in &g.factors {
            if e < 0 {
                let m = lift.entry(p.clone()).or_insert(0);
                *m = (*m).max(-e);
            }
        }
    }
    let mono_lift = clearing_monomial(inv.iter().flatten().map(|g| &g.mono));
    tau.iter()
        .zip(inv)
        .map(|(t, g)| {
            let Some(g) = g else {
                return MultiPoly::zero();
            };
            let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
            for (p, &m) in &lift {
                let e = m + g.factors.get(p).copied().unwrap_or(0);
                if e > 0 {
                    factors.push((p.clone(), e as u32));
                }
            }
            for (p, &e) in &g.factors {
                if e > 0 && !lift.contains_key(p) {
                    factors.push((p.clone(), e as u32));
                }
            }
            let (mono, neg) = g.mono.mul(&mono_lift).split_signs();
            debug_assert!(neg.is_one());
            let refs: Vec<(&MultiPoly, u32)> = factors.iter().map(|(p, e)| (p, *e)).collect();
            (t * &expand_product(&mono, &refs)).scale(&g.scalar)
        })
        .collect()
}

/// Independent check that `Σ σ_s R_s` is the zero rational function: the
/// quotients are brought over one common denominator built from a fresh
/// factor basis and the numerators are summed in expanded form.
pub fn check_kfree(f: &Summand, rec: &KFreeRecurrence) -> Result<bool> {
    let width = f.table.shift_len();
    if rec.terms.iter().any(|(s, _)| s.len() != width) {
        return Err(Error::Shape("recurrence does not match the summand's variables".into()));
    }
    if !rec.elimination_free(f.table.elim_mask()) {
        return Ok(false);
    }
    relation_vanishes(f, &rec.terms)
}

/// Whether `Σ σ_s R_s = 0` for coefficients that may involve any generator
/// (including the elimination generators).
pub(crate) fn relation_vanishes(f: &Summand, terms: &[(Vec<i64>, MultiPoly)]) -> Result<bool> {
    let shifts: Vec<Vec<i64>> = terms.iter().map(|(s, _)| s.clone()).collect();
    let data = QuotientData::new(f, &shifts)?;
    let mut denom: BTreeMap<usize, u32> = BTreeMap::new();
    for r in &data.quotients {
        for (p, &e) in &r.factors {
            if e < 0 {
                let idx = data.basis.position(p).expect("refined factors are leaves");
                let m = denom.entry(idx).or_insert(0);
                *m = (*m).max((-e) as u32);
            }
        }
    }
    let clear = clearing_monomial(data.quotients.iter().map(|r| &r.mono));
    let parts: Vec<MultiPoly> = data
        .quotients
        .par_iter()
        .zip(terms)
        .map(|(r, (_, sigma))| {
            let mut factors: Vec<(&MultiPoly, u32)> = Vec::new();
            for (idx, leaf) in data.basis.leaves().iter().enumerate() {
                let e = r.factors.get(leaf).copied().unwrap_or(0) + denom.get(&idx).copied().unwrap_or(0) as i32;
                if e > 0 {
                    factors.push((leaf, e as u32));
                }
            }
            let (mono, _) = r.mono.mul(&clear).split_signs();
            (sigma * &expand_product(&mono, &factors)).scale(&r.scalar)
        })
        .collect();
    let total = parts.iter().fold(MultiPoly::zero(), |acc, p| &acc + p);
    Ok(total.is_zero())
}
