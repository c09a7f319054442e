//! Structure sets: the finite shift supports over which a k-free recurrence
//! is sought, and their Verbaeten completion.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::factored::{FactorBasis, FactoredRat};
use crate::algebra::monomial::{LaurentMono, MAX_VARS};
use crate::error::{Error, Result};
use crate::qterm::Summand;

pub const STRUCTSET_SCHEMA_VERSION: u32 = 1;

/// A non-empty set of equal-length shift tuples (recurrence-variable shifts
/// first, then summation-variable shifts), kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<Vec<i64>>")]
pub struct StructureSet {
    tuples: Vec<Vec<i64>>,
}

impl From<StructureSet> for Vec<Vec<i64>> {
    fn from(s: StructureSet) -> Self {
        s.tuples
    }
}

impl<'de> Deserialize<'de> for StructureSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let tuples = Vec::<Vec<i64>>::deserialize(d)?;
        StructureSet::new(tuples).map_err(serde::de::Error::custom)
    }
}

/// The wrapped file form `{ "schema_version": 1, "tuples": [...] }`.
#[derive(Deserialize)]
struct StructureSetDoc {
    schema_version: u32,
    tuples: Vec<Vec<i64>>,
}

impl StructureSet {
    /// Validates and sorts a list of tuples.
    pub fn new(tuples: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = tuples.first() else {
            return Err(Error::EmptyStructureSet);
        };
        let width = first.len();
        if let Some(bad) = tuples.iter().find(|t| t.len() != width) {
            return Err(Error::RaggedStructureSet(format!(
                "tuple {bad:?} has length {}, expected {width}",
                bad.len()
            )));
        }
        let set: BTreeSet<Vec<i64>> = tuples.into_iter().collect();
        Ok(StructureSet {
            tuples: set.into_iter().collect(),
        })
    }

    pub fn tuples(&self) -> &[Vec<i64>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn width(&self) -> usize {
        self.tuples[0].len()
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        self.tuples.binary_search_by(|x| x.as_slice().cmp(t)).is_ok()
    }

    pub fn is_superset(&self, other: &StructureSet) -> bool {
        other.tuples.iter().all(|t| self.contains(t))
    }
}

/// The box `{(i, j) | 0 ≤ i_l ≤ I_l, 0 ≤ j_m ≤ J_m}`.
pub fn rectangular(i: &[u32], j: &[u32]) -> StructureSet {
    let bounds: Vec<i64> = i.iter().chain(j).map(|&b| b as i64).collect();
    let mut tuples = vec![Vec::new()];
    for &b in &bounds {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..=b).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    StructureSet::new(tuples).expect("a box is non-empty and rectangular")
}

/// Parses a structure set from JSON: either a bare array of integer arrays
/// or `{ "schema_version": 1, "tuples": [...] }`.
pub fn parse_structure_set(json: &str) -> Result<StructureSet> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let tuples: Vec<Vec<i64>> = if value.is_array() {
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        let doc: StructureSetDoc = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema_version != STRUCTSET_SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", doc.schema_version)));
        }
        doc.tuples
    };
    StructureSet::new(tuples)
}

/// Checks that a structure set fits a summand's shift layout.
pub fn check_width(f: &Summand, s: &StructureSet) -> Result<()> {
    if s.width() != f.table.shift_len() {
        return Err(Error::Shape(format!(
            "structure set tuples have length {}, the summand has {} recurrence and {} summation variables",
            s.width(),
            f.table.rec_vars().len(),
            f.table.sum_vars().len()
        )));
    }
    Ok(())
}

/// Limits for [`verbaeten_complete`].
#[derive(Clone, Copy, Debug)]
pub struct CompletionLimits {
    /// Maximum number of sweeps.
    pub max_sweeps: usize,
    /// Maximum size of the completed set.
    pub max_size: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_sweeps: 12,
            max_size: 512,
        }
    }
}

/// The elimination side of the cleared quotients `P_s` (Eq. 2.3 in the
/// reference notation): for each shift the Laurent support in the summation
/// generators, given the common denominator of elimination-involving leaves.
pub(crate) struct QuotientData {
    pub quotients: Vec<FactoredRat>,
    pub basis: FactorBasis,
    /// `true` for leaves involving an elimination generator.
    pub elim_leaf: Vec<bool>,
}

impl QuotientData {
    pub fn new(f: &Summand, shifts: &[Vec<i64>]) -> Result<Self> {
        let raw: Vec<FactoredRat> = shifts
            .par_iter()
            .map(|s| f.shift_quotient_factored(s))
            .collect::<Result<_>>()?;
        let mut basis = FactorBasis::new();
        for r in &raw {
            for p in r.factors.keys() {
                basis.insert(p);
            }
        }
        let quotients: Vec<FactoredRat> = raw.par_iter().map(|r| r.refine(&basis)).collect();
        let mask = f.table.elim_mask();
        let elim_leaf = basis.leaves().iter().map(|l| l.vars_mask() & mask != 0).collect();
        Ok(QuotientData {
            quotients,
            basis,
            elim_leaf,
        })
    }

    /// Leaf index → denominator multiplicity of elimination-involving leaves.
    pub fn elim_denominator(&self, which: impl Iterator<Item = usize>) -> BTreeMap<usize, u32> {
        let mut d = BTreeMap::new();
        for i in which {
            for (p, &e) in &self.quotients[i].factors {
                let idx = self.basis.position(p).expect("refined factors are leaves");
                if e < 0 && self.elim_leaf[idx] {
                    let m = d.entry(idx).or_insert(0u32);
                    *m = (*m).max((-e) as u32);
                }
            }
        }
        d
    }
}

/// The part of a Laurent monomial over the variables in `mask`.
pub(crate) fn elim_part(m: &LaurentMono, mask: u32) -> LaurentMono {
    let mut out = LaurentMono::one();
    for v in 0..MAX_VARS {
        if mask & (1 << v) != 0 {
            out.0[v] = m.0[v];
        }
    }
    out
}

/// Verbaeten completion: repeatedly adds the non-negative shifts at
/// ℓ∞-distance one from the current set whose quotient `R_c` is cleared by
/// the common denominator `D` of the elimination-involving factors of the
/// starting set. Such points add an unknown without raising the degree of the
/// cleared left-hand side in the summation generators beyond what `D`
/// already forces, so the number of equations stays bounded while the number
/// of unknowns grows. Since `D` never changes, the result is the closure of
/// the starting set under these steps, cut off by the limits.
pub fn verbaeten_complete(f: &Summand, s0: &StructureSet, limits: CompletionLimits) -> Result<StructureSet> {
    check_width(f, s0)?;
    let start: Vec<Vec<i64>> = s0.tuples.clone();
    let base = QuotientData::new(f, &start)?;
    let mut d = FactoredRat::one();
    for (idx, m) in base.elim_denominator(0..start.len()) {
        d.mul_poly_pow(&base.basis.leaves()[idx], m as i32);
    }
    let mut current: BTreeSet<Vec<i64>> = start.into_iter().collect();
    let mut rejected: BTreeSet<Vec<i64>> = BTreeSet::new();
    for _ in 0..limits.max_sweeps {
        let candidates: Vec<Vec<i64>> = neighbours(&current)
            .into_iter()
            .filter(|c| !rejected.contains(c))
            .collect();
        if candidates.is_empty() {
            break;
        }
        let verdicts: Vec<bool> = candidates
            .par_iter()
            .map(|c| cleared_by(f, c, &d))
            .collect::<Result<_>>()?;
        let mut added = false;
        for (c, ok) in candidates.into_iter().zip(verdicts) {
            if ok {
                current.insert(c);
                added = true;
            } else {
                rejected.insert(c);
            }
        }
        if !added || current.len() > limits.max_size {
            break;
        }
    }
    StructureSet::new(current.into_iter().collect())
}

/// Whether `D·R_c` has no elimination-involving denominator.
fn cleared_by(f: &Summand, c: &[i64], d: &FactoredRat) -> Result<bool> {
    let product = f.shift_quotient_factored(c)?.mul(d);
    let mut basis = FactorBasis::new();
    for p in product.factors.keys() {
        basis.insert(p);
    }
    let mask = f.table.elim_mask();
    Ok(product
        .refine(&basis)
        .factors
        .iter()
        .all(|(p, &e)| e >= 0 || p.vars_mask() & mask == 0))
}

/// Non-negative tuples at ℓ∞-distance exactly one from the set, not in it.
fn neighbours(set: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for t in set {
        let w = t.len();
        let total = 3usize.pow(w as u32);
        for code in 0..total {
            let mut c = code;
            let mut cand = Vec::with_capacity(w);
            for &x in t {
                cand.push(x + (c % 3) as i64 - 1);
                c /= 3;
            }
            if cand.iter().all(|&x| x >= 0) && !set.contains(&cand) {
                out.insert(cand);
            }
        }
    }
    out
}

