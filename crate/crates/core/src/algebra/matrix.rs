//! Polynomial matrices and their right nullspace over the fraction field.
//!
//! The nullspace is computed in three stages:
//! 1. a modular pass (random evaluation point, word-size prime) selects a set
//!    of rows that is independent with high probability, preferring sparse rows;
//! 2. fraction-free Gauss–Jordan elimination (Bareiss) on those rows yields
//!    polynomial nullspace vectors directly — for a free column `f` the vector
//!    has `d` in position `f` and `-A[i][f]` in the pivot positions, where `d`
//!    is the last pivot;
//! 3. every candidate vector is verified against all rows exactly; if the
//!    modular pass was unlucky the elimination is repeated on all rows.

use std::cmp::Ordering;

use num_traits::{One, Signed};
use rayon::prelude::*;

use super::gcd::gcd_many;
use super::modular::{mulmod, powmod, ModPoint, PRIME};
use super::poly::MultiPoly;
use super::rational::rational_content;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(PolyMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// An `rows × cols` matrix with no rows still records its column count.
    pub fn with_cols(cols: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let mut m = Self::from_rows(rows)?;
        if m.rows == 0 {
            m.cols = cols;
        } else if m.cols != cols {
            return Err(Error::Shape(format!("expected {cols} columns, got {}", m.cols)));
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .into_par_iter()
            .map(|r| row_dot(self.row(r), v))
            .collect()
    }
}

fn row_dot(row: &[MultiPoly], v: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for (a, b) in row.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// Basis of the right nullspace of `m` over the fraction field of the
/// polynomial ring. Each vector is polynomial, content-free, with the first
/// nonzero entry having a positive leading coefficient; vectors are ordered
/// lexicographically by support.
pub fn nullspace(m: &PolyMatrix) -> Vec<Vec<MultiPoly>> {
    let n = m.cols;
    if n == 0 {
        return Vec::new();
    }
    let all_rows: Vec<usize> = (0..m.rows).filter(|&r| m.row(r).iter().any(|e| !e.is_zero())).collect();
    let selected = modular_row_selection(m, &all_rows);
    if selected.len() == n {
        return Vec::new();
    }
    let rows: Vec<Vec<MultiPoly>> = selected.iter().map(|&r| m.row(r).to_vec()).collect();
    let mut basis = eliminate_and_extract(rows, n);
    let verified = basis
        .iter()
        .all(|v| m.mul_vec(v).iter().all(|e| e.is_zero()));
    if !verified {
        let rows: Vec<Vec<MultiPoly>> = all_rows.iter().map(|&r| m.row(r).to_vec()).collect();
        basis = eliminate_and_extract(rows, n);
    }
    basis.sort_by(|a, b| support_cmp(a, b));
    basis
}

fn support_cmp(a: &[MultiPoly], b: &[MultiPoly]) -> Ordering {
    let sa: Vec<usize> = (0..a.len()).filter(|&i| !a[i].is_zero()).collect();
    let sb: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

fn eliminate_and_extract(rows: Vec<Vec<MultiPoly>>, n: usize) -> Vec<Vec<MultiPoly>> {
    let (reduced, pivots, d) = fraction_free_gauss_jordan(rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![MultiPoly::zero(); n];
            v[f] = d.clone();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&reduced[i][f];
            }
            normalize_vector(v)
        })
        .collect()
}

/// Divides out the polynomial and rational content and fixes the sign so the
/// first nonzero entry has a positive leading coefficient.
pub fn normalize_vector(v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let g = gcd_many(v.iter());
    let v: Vec<MultiPoly> = if g.is_one() || g.is_zero() {
        v
    } else {
        v.par_iter()
            .map(|e| e.div_exact(&g).expect("content divides entry"))
            .collect()
    };
    let c = rational_content(v.iter().flat_map(|e| e.terms().iter().map(|t| &t.1)));
    let sign_negative = v
        .iter()
        .find(|e| !e.is_zero())
        .is_some_and(|e| e.leading_coeff().is_negative());
    let scale = if sign_negative { -c.recip() } else { c.recip() };
    if scale.is_one() {
        v
    } else {
        v.iter().map(|e| e.scale(&scale)).collect()
    }
}

/// Fraction-free Gauss–Jordan elimination with fewest-terms pivoting.
/// Returns the reduced rows (only the first `rank` are kept), the pivot
/// column of each, and the common pivot value `d`.
pub fn fraction_free_gauss_jordan(
    mut a: Vec<Vec<MultiPoly>>,
    n: usize,
) -> (Vec<Vec<MultiPoly>>, Vec<usize>, MultiPoly) {
    let mut prev = MultiPoly::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < a.len() {
        // Pick the sparsest nonzero entry among the remaining rows and
        // non-pivot columns.
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(k) {
            for (c, entry) in row.iter().enumerate().take(n) {
                if pivots.contains(&c) || entry.is_zero() {
                    continue;
                }
                let cost = entry.len();
                if best.is_none_or(|(_, _, b)| cost < b) {
                    best = Some((r, c, cost));
                }
            }
        }
        let Some((pr, pc, _)) = best else {
            a.truncate(k);
            break;
        };
        a.swap(k, pr);
        let pivot_row = a[k].clone();
        let p = pivot_row[pc].clone();
        a.par_iter_mut().enumerate().for_each(|(i, row)| {
            if i == k {
                return;
            }
            let factor = row[pc].clone();
            for c in 0..n {
                let updated = if factor.is_zero() || pivot_row[c].is_zero() {
                    &p * &row[c]
                } else {
                    &(&p * &row[c]) - &(&factor * &pivot_row[c])
                };
                row[c] = if prev.is_one() {
                    updated
                } else {
                    updated.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
        });
        pivots.push(pc);
        prev = p;
        k += 1;
    }
    (a, pivots, prev)
}

/// Greedily selects rows (sparsest first) that are linearly independent
/// modulo a prime at a pseudo-random evaluation point.
fn modular_row_selection(m: &PolyMatrix, candidates: &[usize]) -> Vec<usize> {
    let n = m.cols;
    let point = ModPoint::random(0x5eed_2024);
    let mut order: Vec<usize> = candidates.to_vec();
    order.sort_by_key(|&r| (m.row(r).iter().map(|e| e.len()).sum::<usize>(), r));
    let values: Vec<Vec<u64>> = order
        .par_iter()
        .map(|&r| m.row(r).iter().map(|e| point.poly(e)).collect())
        .collect();
    // Echelon basis modulo the prime: (pivot column, normalized row).
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut selected = Vec::new();
    for (idx, row) in values.into_iter().enumerate() {
        let mut row = row;
        for (pc, brow) in &echelon {
            let f = row[*pc];
            if f != 0 {
                for c in 0..n {
                    row[c] = (row[c] + PRIME - mulmod(f, brow[c])) % PRIME;
                }
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let inv = powmod(row[pc], PRIME - 2);
            for x in row.iter_mut() {
                *x = mulmod(*x, inv);
            }
            echelon.push((pc, row));
            selected.push(order[idx]);
            if selected.len() == n {
                break;
            }
        }
    }
    selected.sort_unstable();
    selected
}
