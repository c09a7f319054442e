//! The JSON documents read and written by the command-line tool. Every
//! document carries `schema_version` and a `kind` tag.

use std::collections::BTreeMap;

use qrec_core::algebra::{parse_rational, MultiPoly, Monomial, MAX_VARS};
use qrec_core::celine::{check_kfree, KFreeRecurrence};
use qrec_core::qterm::{parse_substitution, parse_summand, Summand};
use qrec_core::sumrec::{verify_certificate, SumRecurrence, TermwiseCertificate};
use qrec_oracle::GridReport;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// One term `coeff · Π name^exp` of a polynomial in named generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exps: BTreeMap<String, u32>,
}

pub fn poly_to_doc(p: &MultiPoly, gens: &[String]) -> Vec<TermDoc> {
    p.terms()
        .iter()
        .map(|(m, c)| TermDoc {
            coeff: c.to_string(),
            exps: (0..gens.len().min(MAX_VARS))
                .filter(|&v| m.exp(v) > 0)
                .map(|v| (gens[v].clone(), m.exp(v)))
                .collect(),
        })
        .collect()
}

pub fn poly_from_doc(terms: &[TermDoc], gens: &[String]) -> CliResult<MultiPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = parse_rational(&t.coeff).map_err(|e| CliError::Input(format!("coefficient {:?}: {e}", t.coeff)))?;
        let mut exps = vec![0u32; gens.len()];
        for (name, &e) in &t.exps {
            let v = gens
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| CliError::Input(format!("unknown generator {name:?}")))?;
            exps[v] = e;
        }
        out.push((Monomial::from_exps(&exps), c));
    }
    Ok(MultiPoly::from_terms(out))
}

/// A summand as given on the command line: the input document, the
/// `NAME=LINFORM` substitutions applied to it and the optional recurrence
/// variable order. Embedded in every output so that results re-verify from
/// the file alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummandSpec {
    pub document: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub substitutions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rec_vars: Option<Vec<String>>,
}

impl SummandSpec {
    pub fn new(text: &str, substitutions: &[String], rec_vars: Option<Vec<String>>) -> CliResult<Self> {
        let document: serde_json::Value = serde_json::from_str(text)?;
        let spec = SummandSpec {
            document,
            substitutions: substitutions.to_vec(),
            rec_vars,
        };
        spec.build()?;
        Ok(spec)
    }

    pub fn build(&self) -> CliResult<Summand> {
        let mut f = parse_summand(&self.document.to_string())?;
        for s in &self.substitutions {
            let (name, value) = parse_substitution(s)?;
            f = f.substitute(&name, &value)?;
        }
        if let Some(vars) = &self.rec_vars {
            f = f.with_rec(vars)?;
        }
        Ok(f)
    }
}

/// A (shift, coefficient) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftTermDoc {
    pub shift: Vec<i64>,
    pub poly: Vec<TermDoc>,
}

fn terms_to_doc(terms: &[(Vec<i64>, MultiPoly)], gens: &[String]) -> Vec<ShiftTermDoc> {
    terms
        .iter()
        .map(|(s, c)| ShiftTermDoc {
            shift: s.clone(),
            poly: poly_to_doc(c, gens),
        })
        .collect()
}

fn terms_from_doc(terms: &[ShiftTermDoc], gens: &[String]) -> CliResult<Vec<(Vec<i64>, MultiPoly)>> {
    terms
        .iter()
        .map(|t| Ok((t.shift.clone(), poly_from_doc(&t.poly, gens)?)))
        .collect()
}

/// An input file identified by its SHA-256.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub file: String,
    pub sha256: String,
}

impl InputHash {
    pub fn of(file: &str, bytes: &[u8]) -> Self {
        InputHash {
            file: file.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// A k-free recurrence of a summand; `F(v - s)` for shifts over the
/// recurrence variables followed by the summation variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KFreeDoc {
    pub structure: Vec<Vec<i64>>,
    pub coeffs: Vec<ShiftTermDoc>,
    pub rendering: String,
    /// Outcome of the exact re-check that the recurrence annihilates the
    /// summand.
    pub verified: bool,
}

/// Output of `find-rec`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrencesDoc {
    pub schema_version: u32,
    pub kind: String,
    pub inputs: Vec<InputHash>,
    pub summand: SummandSpec,
    pub gens: Vec<String>,
    pub grounds: Vec<String>,
    pub rec_vars: Vec<String>,
    pub sum_vars: Vec<String>,
    pub structure_set: Vec<Vec<i64>>,
    pub recurrences: Vec<KFreeDoc>,
}

pub const KIND_RECURRENCES: &str = "kfree_recurrences";
pub const KIND_SUM_RECURRENCE: &str = "sum_recurrence";
pub const KIND_CERTIFICATE: &str = "termwise_certificate";
pub const KIND_GRID_REPORT: &str = "grid_report";
pub const KIND_TRANSCRIPT: &str = "proof_transcript";

impl RecurrencesDoc {
    /// Re-checks every recurrence against the embedded summand.
    pub fn reverify(&self) -> CliResult<bool> {
        let f = self.summand.build()?;
        for i in 0..self.recurrences.len() {
            if !check_kfree(&f, &self.recurrence(i)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn recurrence(&self, index: usize) -> CliResult<KFreeRecurrence> {
        let r = self.recurrences.get(index).ok_or_else(|| {
            CliError::Input(format!("recurrence index {index} out of range ({} recurrences)", self.recurrences.len()))
        })?;
        let mut shift_names = self.rec_vars.clone();
        shift_names.extend(self.sum_vars.iter().cloned());
        let terms = terms_from_doc(&r.coeffs, &self.gens)?;
        if let Some((s, _)) = terms.iter().find(|(s, _)| s.len() != shift_names.len()) {
            return Err(CliError::Input(format!("shift {s:?} does not match {} shifted variables", shift_names.len())));
        }
        Ok(KFreeRecurrence {
            terms,
            gens: self.gens.clone(),
            grounds: self.grounds.clone(),
            shift_names,
            rec_len: self.rec_vars.len(),
        })
    }
}

pub fn kfree_to_doc(rec: &KFreeRecurrence, verified: bool) -> KFreeDoc {
    KFreeDoc {
        structure: rec.terms.iter().map(|(s, _)| s.clone()).collect(),
        coeffs: terms_to_doc(&rec.terms, &rec.gens),
        rendering: rec.render(),
        verified,
    }
}

/// Output of `sum-rec`: `Σ c_i SUM(v - i) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumRecurrenceDoc {
    pub schema_version: u32,
    pub kind: String,
    pub inputs: Vec<InputHash>,
    /// `backward` (all offsets ≤ 0, touching 0) or `forward` (all ≥ 0).
    pub shifts: String,
    pub gens: Vec<String>,
    pub grounds: Vec<String>,
    pub rec_vars: Vec<String>,
    pub coeffs: Vec<ShiftTermDoc>,
    pub rendering: String,
}

impl SumRecurrenceDoc {
    pub fn new(rec: &SumRecurrence, shifts: &str, inputs: Vec<InputHash>) -> Self {
        SumRecurrenceDoc {
            schema_version: SCHEMA_VERSION,
            kind: KIND_SUM_RECURRENCE.into(),
            inputs,
            shifts: shifts.into(),
            gens: rec.gens.clone(),
            grounds: rec.grounds.clone(),
            rec_vars: rec.rec_names.clone(),
            coeffs: terms_to_doc(&rec.terms, &rec.gens),
            rendering: rec.render(),
        }
    }

    pub fn recurrence(&self) -> CliResult<SumRecurrence> {
        let terms = terms_from_doc(&self.coeffs, &self.gens)?;
        Ok(SumRecurrence::new(terms, self.gens.clone(), self.grounds.clone(), self.rec_vars.clone())?)
    }
}

/// Output of `check-rec`: a self-contained termwise certificate, carrying
/// the summand and the recurrence it is for. The multiplier and telescopers
/// are polynomials in the generators of the summand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema_version: u32,
    pub kind: String,
    pub inputs: Vec<InputHash>,
    pub summand: SummandSpec,
    pub recurrence: SumRecurrenceDoc,
    pub holds: bool,
    pub window: u32,
    pub gens: Vec<String>,
    pub multiplier: Vec<TermDoc>,
    /// One telescoper per summation variable.
    pub telescopers: Vec<Vec<ShiftTermDoc>>,
    /// Outcome of the exact re-verification of the certificate identity.
    pub verified: bool,
}

impl CertificateDoc {
    pub fn new(
        cert: &TermwiseCertificate,
        summand: SummandSpec,
        gens: &[String],
        recurrence: SumRecurrenceDoc,
        verified: bool,
        inputs: Vec<InputHash>,
    ) -> Self {
        CertificateDoc {
            schema_version: SCHEMA_VERSION,
            kind: KIND_CERTIFICATE.into(),
            inputs,
            summand,
            recurrence,
            holds: cert.holds,
            window: cert.window,
            gens: gens.to_vec(),
            multiplier: poly_to_doc(&cert.multiplier, gens),
            telescopers: cert.telescopers.iter().map(|t| terms_to_doc(t, gens)).collect(),
            verified,
        }
    }

    /// Re-checks the certificate from the document alone.
    pub fn reverify(&self) -> CliResult<bool> {
        let f = self.summand.build()?;
        let rec = self.recurrence.recurrence()?;
        Ok(self.holds && verify_certificate(&f, &rec, &self.certificate()?)?)
    }

    pub fn certificate(&self) -> CliResult<TermwiseCertificate> {
        Ok(TermwiseCertificate {
            holds: self.holds,
            window: self.window,
            multiplier: poly_from_doc(&self.multiplier, &self.gens)?,
            telescopers: self
                .telescopers
                .iter()
                .map(|t| terms_from_doc(t, &self.gens))
                .collect::<CliResult<_>>()?,
        })
    }
}

/// Output of `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReportDoc {
    pub kind: String,
    #[serde(flatten)]
    pub report: GridReport,
}

impl GridReportDoc {
    pub fn new(report: GridReport) -> Self {
        GridReportDoc {
            kind: KIND_GRID_REPORT.into(),
            report,
        }
    }
}

/// Reads the `schema_version` and `kind` of a document and checks them.
pub fn check_header(value: &serde_json::Value, kind: &str) -> CliResult<()> {
    let version = value.get("schema_version").and_then(|v| v.as_u64());
    if version != Some(SCHEMA_VERSION as u64) {
        return Err(CliError::Input(format!("unsupported or missing schema_version {version:?}")));
    }
    let found = value.get("kind").and_then(|v| v.as_str());
    if found != Some(kind) {
        return Err(CliError::Input(format!("expected a {kind} document, found {found:?}")));
    }
    Ok(())
}

/// Parses a document of the given kind.
pub fn read_doc<T: serde::de::DeserializeOwned>(text: &str, kind: &str) -> CliResult<T> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    check_header(&value, kind)?;
    Ok(serde_json::from_value(value)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
