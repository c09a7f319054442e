//! Recurrences for sums: summing k-free recurrences over the summation
//! variables, re-indexing shifts, and termwise verification against other
//! summands.

use std::collections::BTreeMap;

use crate::algebra::monomial::{LaurentMono, Monomial, MAX_VARS};
use crate::algebra::modular::{rank, ModPoint};
use crate::algebra::{normalize_vector, nullspace, LaurentPoly, MultiPoly};
use crate::celine::{divide_by_columns, general_system, normalize_terms, relation_vanishes, CelineSystem, ColumnPart, KFreeRecurrence};
use crate::error::{Error, Result};
use crate::qterm::Summand;
use crate::render::{render_relation, CoeffTerms, Namer};

/// A recurrence `Σ_i c_i SUM(n - i) = 0` for a sum over all summation
/// variables; `i` ranges over recurrence-variable shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRecurrence {
    /// (shift `i`, coefficient `c_i`), sorted by shift, no zero coefficients.
    pub terms: Vec<(Vec<i64>, MultiPoly)>,
    /// Generator names (index 0 is `q`).
    pub gens: Vec<String>,
    /// Generators that stand for ground symbols.
    pub grounds: Vec<String>,
    /// Recurrence variable names, in shift order.
    pub rec_names: Vec<String>,
}

impl SumRecurrence {
    /// Builds a normalized recurrence.
    pub fn new(
        terms: impl IntoIterator<Item = (Vec<i64>, MultiPoly)>,
        gens: Vec<String>,
        grounds: Vec<String>,
        rec_names: Vec<String>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, MultiPoly> = BTreeMap::new();
        for (s, c) in terms {
            if s.len() != rec_names.len() {
                return Err(Error::Shape(format!(
                    "shift {s:?} has length {}, expected {}",
                    s.len(),
                    rec_names.len()
                )));
            }
            let e = map.entry(s).or_insert_with(MultiPoly::zero);
            *e = &*e + &c;
        }
        let terms: Vec<(Vec<i64>, MultiPoly)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::AllZero);
        }
        Ok(SumRecurrence {
            terms: normalize_terms(&terms)?,
            gens,
            grounds,
            rec_names,
        })
    }

    pub fn coeff(&self, shift: &[i64]) -> Option<&MultiPoly> {
        self.terms.iter().find(|(s, _)| s == shift).map(|(_, c)| c)
    }

    /// Maximal and minimal shift per recurrence variable.
    fn shift_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.rec_names.len();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for (s, _) in &self.terms {
            for l in 0..n {
                lo[l] = lo[l].min(s[l]);
                hi[l] = hi[l].max(s[l]);
            }
        }
        (lo, hi)
    }

    /// Re-indexes `n ↦ n + m`: `Σ c_i(n + m) SUM(n - (i - m)) = 0`.
    fn reindex(&self, m: &[i64]) -> Result<SumRecurrence> {
        if m.iter().all(|&x| x == 0) {
            return Ok(self.clone());
        }
        let offsets: Vec<(usize, i64)> = self
            .rec_names
            .iter()
            .zip(m)
            .filter(|(_, &x)| x != 0)
            .filter_map(|(name, &x)| self.gens.iter().position(|g| g == name).map(|g| (g, x)))
            .collect();
        let rescaled: Vec<(Vec<i64>, LaurentPoly)> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let shifted: Vec<i64> = s.iter().zip(m).map(|(a, b)| a - b).collect();
                (shifted, rescale_generators(c, &offsets))
            })
            .collect();
        let clear = clearing_of(rescaled.iter().map(|(_, c)| c));
        let terms = rescaled.into_iter().map(|(s, c)| (s, c.mul_mono(&clear).to_poly().expect("cleared")));
        SumRecurrence::new(terms, self.gens.clone(), self.grounds.clone(), self.rec_names.clone())
    }

    /// Human-readable `c SUM(...) + ... = 0`, terms ordered by argument
    /// offset; coefficients are divided by the q-power part of the anchor
    /// term (the one with the lexicographically greatest argument offset).
    pub fn render(&self) -> String {
        let namer = Namer {
            gens: &self.gens,
            grounds: &self.grounds,
        };
        let mut terms: Vec<(Vec<i64>, &MultiPoly)> = self
            .terms
            .iter()
            .map(|(s, c)| (s.iter().map(|x| -x).collect(), c))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let anchor = terms.last().expect("non-empty").1;
        let divisor = q_part(&LaurentPoly::from_poly(anchor.clone()), &self.gens, &self.grounds);
        let rendered: Vec<(Vec<i64>, CoeffTerms)> = terms
            .into_iter()
            .map(|(o, c)| (o, LaurentPoly::from_poly(c.clone()).mul_mono(&divisor.inv()).terms()))
            .collect();
        render_relation("SUM", &self.rec_names, &namer, &rendered)
    }
}

/// The q-generator part of the monomial content of a coefficient whose
/// terms share it (for a single-term coefficient: its q-power).
fn q_part(c: &LaurentPoly, gens: &[String], grounds: &[String]) -> LaurentMono {
    let terms = c.terms();
    let mut lo = terms[0].0;
    for (m, _) in &terms {
        for v in 0..MAX_VARS {
            lo.0[v] = lo.0[v].min(m.0[v]);
        }
    }
    for (v, name) in gens.iter().enumerate().skip(1) {
        if grounds.contains(name) {
            lo.0[v] = 0;
        }
    }
    lo
}

fn clearing_of<'a>(items: impl Iterator<Item = &'a LaurentPoly>) -> LaurentMono {
    let mut lo = [0i32; MAX_VARS];
    for p in items {
        for (m, _) in p.terms() {
            for (l, &e) in lo.iter_mut().zip(&m.0) {
                *l = (*l).min(e);
            }
        }
    }
    LaurentMono(lo).inv()
}

/// `g ↦ q^{c}·g` for the given (generator, c) pairs.
fn rescale_generators(p: &MultiPoly, offsets: &[(usize, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().iter().map(|(m, c)| {
        let mut e = LaurentMono::from_mono(m);
        for &(g, x) in offsets {
            e.0[0] += (x * m.exp(g) as i64) as i32;
        }
        (e, c.clone())
    }))
}

/// Sums a k-free recurrence over the summation variables: coefficients with
/// equal recurrence shift are added (valid because the summand has compact
/// support in the summation variables). Fails with [`Error::Collapse`] when
/// every aggregated coefficient vanishes.
pub fn sum_over(rec: &KFreeRecurrence) -> Result<SumRecurrence> {
    let mut map: BTreeMap<Vec<i64>, MultiPoly> = BTreeMap::new();
    for (s, c) in &rec.terms {
        let e = map.entry(s[..rec.rec_len].to_vec()).or_insert_with(MultiPoly::zero);
        *e = &*e + c;
    }
    if map.values().all(|c| c.is_zero()) {
        return Err(Error::Collapse);
    }
    SumRecurrence::new(
        map,
        rec.gens.clone(),
        rec.grounds.clone(),
        rec.shift_names[..rec.rec_len].to_vec(),
    )
}

/// Re-indexes so every variable's largest argument offset is 0 (all terms
/// are `SUM(n - i)` with `i ≥ 0`).
pub fn backward_shifts(rec: &SumRecurrence) -> Result<SumRecurrence> {
    let (lo, _) = rec.shift_bounds();
    rec.reindex(&lo)
}

/// Re-indexes so every variable's smallest argument offset is 0 (all terms
/// are `SUM(n + i)` with `i ≥ 0`).
pub fn forward_shifts(rec: &SumRecurrence) -> Result<SumRecurrence> {
    let (_, hi) = rec.shift_bounds();
    rec.reindex(&hi)
}

/// Result of a termwise check. When `holds`, the summand satisfies
/// `multiplier · Σ_i c_i F(v - (i, 0)) = Σ_m [G_m(s) - G_m(s - e_m)]`
/// identically, where `G_m(s) = Σ_t u_t F(v - t)` is given by
/// `telescopers[m]` as (shift `t`, coefficient `u_t`) pairs whose
/// coefficients may involve the summation generators `q^{s_m}`. Summing over
/// all summation variables cancels the right-hand side (compact support), so
/// the sum satisfies the recurrence. With all telescopers empty the
/// recurrence holds for the summand itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermwiseCertificate {
    pub holds: bool,
    /// The level at which the certificate was found (the searched window
    /// when none was found).
    pub window: u32,
    pub multiplier: MultiPoly,
    pub telescopers: Vec<Vec<(Vec<i64>, MultiPoly)>>,
}

impl TermwiseCertificate {
    fn failed(window: u32) -> Self {
        TermwiseCertificate {
            holds: false,
            window,
            multiplier: MultiPoly::zero(),
            telescopers: Vec::new(),
        }
    }
}

/// Moves the coefficients of `rec` onto the generators of `f` by name.
pub fn coefficients_for(f: &Summand, rec: &SumRecurrence) -> Result<Vec<(Vec<i64>, MultiPoly)>> {
    if rec.rec_names.as_slice() != f.table.rec_vars() {
        return Err(Error::Shape(format!(
            "recurrence variables {:?} do not match the summand's {:?}",
            rec.rec_names,
            f.table.rec_vars()
        )));
    }
    let mut used = 0u32;
    for (_, c) in &rec.terms {
        used |= c.vars_mask();
    }
    let map: Vec<usize> = rec
        .gens
        .iter()
        .enumerate()
        .map(|(i, name)| match i {
            0 => Ok(0),
            _ if used & (1 << i) == 0 => Ok(0),
            _ => f.table.gen(name).ok_or_else(|| Error::UnknownSymbol(name.clone())),
        })
        .collect::<Result<_>>()?;
    Ok(rec
        .terms
        .iter()
        .map(|(s, c)| {
            let poly = MultiPoly::from_terms(c.terms().iter().map(|(m, coef)| {
                let mut exps = [0u32; MAX_VARS];
                for (from, &to) in map.iter().enumerate() {
                    exps[to] += m.exp(from);
                }
                (Monomial::from_exps(&exps), coef.clone())
            }));
            (s.clone(), poly)
        })
        .collect())
}

/// Checks that a summand satisfies a sum recurrence term by term, up to
/// telescoping in the summation variables (see [`TermwiseCertificate`]).
/// Levels `w = 0, 1, …, window` are tried in turn; level `w` allows
/// telescoper terms `q^{e·s} F(v - (i, j))` for the recurrence shifts `i`,
/// summation shifts `max |j| ≤ w` and exponents `|e|₁ ≤ w`. A summation-shift
/// assignment `j_i` per term, `Σ c_i F(v - (i, j_i)) = 0`, is the special case
/// of constant telescopers. A certificate proves that the sum satisfies the
/// recurrence; failure within the window is inconclusive.
///
/// The telescoper support is first narrowed by rank tests modulo a prime at
/// a random point; the certificate is then solved for and re-checked exactly.
pub fn check_termwise(f: &Summand, rec: &SumRecurrence, window: u32) -> Result<TermwiseCertificate> {
    let coeffs = coefficients_for(f, rec)?;
    let sum_gens: Vec<usize> = f
        .table
        .sum_vars()
        .iter()
        .map(|name| f.table.gen(name).ok_or_else(|| Error::UnknownSymbol(name.clone())))
        .collect::<Result<_>>()?;
    for w in 0..=window {
        let ansatz = Ansatz::new(&coeffs, &sum_gens, w);
        let all: Vec<usize> = (0..ansatz.telescoping.len()).collect();
        let narrowed = match ansatz.narrow(f)? {
            None => continue,
            Some(keep) => keep,
        };
        let mut found = ansatz.solve(f, &narrowed)?;
        if found.is_none() && narrowed.len() < all.len() {
            found = ansatz.solve(f, &all)?;
        }
        if let Some((multiplier, telescopers)) = found {
            let cert = TermwiseCertificate {
                holds: true,
                window: w,
                multiplier,
                telescopers,
            };
            if verify_certificate(f, rec, &cert)? {
                return Ok(cert);
            }
        }
    }
    Ok(TermwiseCertificate::failed(window))
}

/// A telescoper unknown: `q^{e·s} (F(v - t) - q^{-e_m} F(v - t - e_m))`.
struct Telescoping {
    var: usize,
    shift: Vec<i64>,
    exps: Vec<u32>,
}

/// The linear ansatz of one level: the static column `Σ c_i F(v - (i, 0))`
/// followed by the telescoping columns.
struct Ansatz<'a> {
    coeffs: &'a [(Vec<i64>, MultiPoly)],
    sum_gens: &'a [usize],
    telescoping: Vec<Telescoping>,
}

impl<'a> Ansatz<'a> {
    fn new(coeffs: &'a [(Vec<i64>, MultiPoly)], sum_gens: &'a [usize], w: u32) -> Self {
        let r = sum_gens.len();
        let mut telescoping = Vec::new();
        for (i, _) in coeffs {
            for j in cube(r, w as i64) {
                for exps in simplex(r, w) {
                    for var in 0..r {
                        let mut shift = i.clone();
                        shift.extend(&j);
                        telescoping.push(Telescoping {
                            var,
                            shift,
                            exps: exps.clone(),
                        });
                    }
                }
            }
        }
        // Simplest unknowns first, so narrowing drops the elaborate ones.
        telescoping.sort_by_key(|t| {
            let spread: i64 = t.shift[t.shift.len() - r..].iter().map(|x| x.abs()).sum();
            (t.exps.iter().sum::<u32>(), spread)
        });
        Ansatz {
            coeffs,
            sum_gens,
            telescoping,
        }
    }

    fn sum_mono(&self, exps: &[u32]) -> LaurentMono {
        let mut m = LaurentMono::one();
        for (&g, &e) in self.sum_gens.iter().zip(exps) {
            m.0[g] = e as i32;
        }
        m
    }

    /// The system for the static column plus the chosen telescoping columns.
    fn system(&self, f: &Summand, chosen: &[usize]) -> Result<(Vec<Vec<i64>>, CelineSystem)> {
        let r = self.sum_gens.len();
        let mut shifts: Vec<Vec<i64>> = Vec::new();
        let index = |s: Vec<i64>, shifts: &mut Vec<Vec<i64>>| -> usize {
            match shifts.iter().position(|x| *x == s) {
                Some(k) => k,
                None => {
                    shifts.push(s);
                    shifts.len() - 1
                }
            }
        };
        let mut spec: Vec<Vec<ColumnPart>> = Vec::new();
        let static_col: Vec<ColumnPart> = self
            .coeffs
            .iter()
            .map(|(i, c)| {
                let mut s = i.clone();
                s.extend(std::iter::repeat_n(0, r));
                ColumnPart {
                    shift: index(s, &mut shifts),
                    coef: c.clone(),
                    mono: LaurentMono::one(),
                }
            })
            .collect();
        spec.push(static_col);
        for &k in chosen {
            let t = &self.telescoping[k];
            let mono = self.sum_mono(&t.exps);
            let mut next = t.shift.clone();
            let at = t.shift.len() - r + t.var;
            next[at] += 1;
            let mut lowered = mono;
            lowered.0[0] -= t.exps[t.var] as i32;
            spec.push(vec![
                ColumnPart {
                    shift: index(t.shift.clone(), &mut shifts),
                    coef: MultiPoly::one(),
                    mono,
                },
                ColumnPart {
                    shift: index(next, &mut shifts),
                    coef: -&MultiPoly::one(),
                    mono: lowered,
                },
            ]);
        }
        let system = general_system(f, &shifts, &spec)?;
        Ok((shifts, system))
    }

    /// Indices of a small set of telescoping columns that still admits a
    /// certificate modulo a prime; `None` when even all columns do not.
    fn narrow(&self, f: &Summand) -> Result<Option<Vec<usize>>> {
        let n = self.telescoping.len();
        let all: Vec<usize> = (0..n).collect();
        let (_, system) = self.system(f, &all)?;
        let point = ModPoint::random(0x7e57_1e55);
        let values: Vec<Vec<u64>> = (0..system.matrix.rows())
            .map(|i| system.matrix.row(i).iter().map(|e| point.poly(e)).collect())
            .collect();
        // Column 0 is static; telescoping column k is matrix column k + 1.
        let feasible = |keep: &[usize]| -> bool {
            let pick = |with_static: bool| -> Vec<Vec<u64>> {
                values
                    .iter()
                    .map(|row| {
                        let mut out: Vec<u64> = keep.iter().map(|&k| row[k + 1]).collect();
                        if with_static {
                            out.push(row[0]);
                        }
                        out
                    })
                    .collect()
            };
            rank(pick(false)) == rank(pick(true))
        };
        if !feasible(&all) {
            return Ok(None);
        }
        let mut keep = all;
        for k in (0..n).rev() {
            let trial: Vec<usize> = keep.iter().copied().filter(|&x| x != k).collect();
            if feasible(&trial) {
                keep = trial;
            }
        }
        Ok(Some(keep))
    }

    /// Exact certificate using the chosen telescoping columns.
    #[allow(clippy::type_complexity)]
    fn solve(&self, f: &Summand, chosen: &[usize]) -> Result<Option<(MultiPoly, Vec<Vec<(Vec<i64>, MultiPoly)>>)>> {
        let (_, system) = self.system(f, chosen)?;
        let kernel = nullspace(&system.matrix);
        let Some(tau) = kernel.into_iter().find(|v| !v[0].is_zero()) else {
            return Ok(None);
        };
        let sigma = divide_by_columns(&tau, &system.columns.iter().collect::<Vec<_>>());
        // σ_0·static + Σ σ_k (G-difference) = 0, so G_m = -Σ σ_k q^{e·s} F(v - t).
        let mut entries: Vec<MultiPoly> = vec![sigma[0].clone()];
        let mut layout: Vec<(usize, Vec<i64>)> = Vec::new();
        for (pos, &k) in chosen.iter().enumerate() {
            let s = &sigma[pos + 1];
            if s.is_zero() {
                continue;
            }
            let t = &self.telescoping[k];
            let (mono, _) = self.sum_mono(&t.exps).split_signs();
            entries.push(-&s.mul_monomial(&mono));
            layout.push((t.var, t.shift.clone()));
        }
        let mut entries = normalize_vector(entries).into_iter();
        let multiplier = entries.next().expect("static entry");
        let mut telescopers: Vec<BTreeMap<Vec<i64>, MultiPoly>> = vec![BTreeMap::new(); self.sum_gens.len()];
        for ((var, shift), u) in layout.into_iter().zip(entries) {
            let e = telescopers[var].entry(shift).or_insert_with(MultiPoly::zero);
            *e = &*e + &u;
        }
        let telescopers = telescopers
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, u)| !u.is_zero()).collect())
            .collect();
        Ok(Some((multiplier, telescopers)))
    }
}

/// Re-verifies a certificate from scratch: the identity
/// `μ Σ c_i R_(i,0) - Σ_m Σ_t (u_t R_t - u_t(q^{s - e_m}) R_{t + e_m}) = 0`
/// is checked over a fresh common denominator.
pub fn verify_certificate(f: &Summand, rec: &SumRecurrence, cert: &TermwiseCertificate) -> Result<bool> {
    if !cert.holds || cert.multiplier.is_zero() {
        return Ok(false);
    }
    let coeffs = coefficients_for(f, rec)?;
    let r = f.table.sum_vars().len();
    if cert.telescopers.len() > r {
        return Ok(false);
    }
    let sum_gens: Vec<usize> = f
        .table
        .sum_vars()
        .iter()
        .map(|name| f.table.gen(name).ok_or_else(|| Error::UnknownSymbol(name.clone())))
        .collect::<Result<_>>()?;
    let mut terms: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
    let mut add = |s: Vec<i64>, c: LaurentPoly| {
        let e = terms.entry(s).or_insert_with(LaurentPoly::zero);
        *e = e.add(&c);
    };
    for (i, c) in &coeffs {
        let mut s = i.clone();
        s.extend(std::iter::repeat_n(0, r));
        add(s, LaurentPoly::from_poly(&cert.multiplier * c));
    }
    for (m, g) in cert.telescopers.iter().enumerate() {
        for (t, u) in g {
            if t.len() != f.table.shift_len() {
                return Ok(false);
            }
            add(t.clone(), LaurentPoly::from_poly(-u));
            let mut next = t.clone();
            next[t.len() - r + m] += 1;
            // u(q^{s - e_m}): every power of q^{s_m} picks up q^{-1}.
            let lowered = LaurentPoly::from_terms(u.terms().iter().map(|(mono, c)| {
                let mut e = LaurentMono::from_mono(mono);
                e.0[0] -= mono.exp(sum_gens[m]) as i32;
                (e, c.clone())
            }));
            add(next, lowered);
        }
    }
    let clear = clearing_of(terms.values());
    let terms: Vec<(Vec<i64>, MultiPoly)> = terms
        .into_iter()
        .map(|(s, c)| (s, c.mul_mono(&clear).to_poly().expect("cleared")))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if terms.is_empty() {
        return Ok(true);
    }
    relation_vanishes(f, &terms)
}

/// Exponent vectors of length `n` with entry sum at most `w`.
fn simplex(n: usize, w: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                let used: u32 = t.iter().sum();
                (0..=w - used).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// All vectors of length `n` with entries in `[-w, w]`, in lexicographic
/// order.
fn cube(n: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                (-w..=w).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}
