//! The subcommands as library functions over documents; file handling lives
//! in [`crate::run`].

use qrec_core::celine::{check_kfree, find_recurrences};
use qrec_core::structset::{parse_structure_set, rectangular, verbaeten_complete, CompletionLimits, StructureSet};
use qrec_core::sumrec::{backward_shifts, check_termwise, forward_shifts, sum_over, verify_certificate};
use qrec_oracle::{verify_grid, GridSpec, Identity};

use crate::docs::{
    kfree_to_doc, CertificateDoc, GridReportDoc, InputHash, RecurrencesDoc, SumRecurrenceDoc, SummandSpec,
    KIND_RECURRENCES, SCHEMA_VERSION,
};
use crate::error::{CliError, CliResult};

/// Where the structure set comes from.
#[derive(Clone, Debug)]
pub enum StructSource {
    /// A structure-set document.
    Set(StructureSet),
    /// A box `I,J` or `I1,..,Ir/J1,..,Js`, optionally completed.
    Rect { spec: String, complete: bool },
}

impl StructSource {
    pub fn parse_set(text: &str) -> CliResult<Self> {
        Ok(StructSource::Set(parse_structure_set(text)?))
    }
}

/// Parses box bounds for `rec` recurrence and `sum` summation variables.
/// `I,J` gives every recurrence variable bound `I` and every summation
/// variable bound `J`; `I1,..,Ir/J1,..,Js` lists them, a single value on
/// either side standing for all of that side.
pub fn parse_rect(spec: &str, rec: usize, sum: usize) -> CliResult<(Vec<u32>, Vec<u32>)> {
    let bad = |why: &str| CliError::Input(format!("--rect {spec:?}: {why}"));
    let list = |s: &str| -> CliResult<Vec<u32>> {
        s.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| bad(&format!("{:?} is not a non-negative integer", x.trim()))))
            .collect()
    };
    let side = |v: Vec<u32>, n: usize, what: &str| -> CliResult<Vec<u32>> {
        match v.len() {
            1 => Ok(vec![v[0]; n]),
            m if m == n => Ok(v),
            m => Err(bad(&format!("{m} bounds for {n} {what} variables"))),
        }
    };
    let (i, j) = match spec.split_once('/') {
        Some((l, r)) => (list(l)?, list(r)?),
        None => {
            let v = list(spec)?;
            if v.len() != 2 {
                return Err(bad("expected I,J or I1,..,Ir/J1,..,Js"));
            }
            (vec![v[0]], vec![v[1]])
        }
    };
    Ok((side(i, rec, "recurrence")?, side(j, sum, "summation")?))
}

/// `find-rec`: all k-free recurrences of a summand over a structure set,
/// each re-checked exactly. Fails when there is none.
pub fn find_rec(spec: &SummandSpec, source: &StructSource, inputs: Vec<InputHash>) -> CliResult<RecurrencesDoc> {
    let f = spec.build()?;
    let structure = match source {
        StructSource::Set(s) => s.clone(),
        StructSource::Rect { spec, complete } => {
            let (i, j) = parse_rect(spec, f.table.rec_vars().len(), f.table.sum_vars().len())?;
            let s = rectangular(&i, &j);
            if *complete {
                verbaeten_complete(&f, &s, CompletionLimits::default())?
            } else {
                s
            }
        }
    };
    let recs = find_recurrences(&f, &structure)?;
    if recs.is_empty() {
        let n = structure.len();
        let plural = if n == 1 { "" } else { "s" };
        return Err(CliError::Math(format!("no recurrence over the structure set ({n} shift{plural})")));
    }
    let mut docs = Vec::with_capacity(recs.len());
    for r in &recs {
        let ok = check_kfree(&f, r)?;
        if !ok {
            return Err(CliError::Math(format!("recurrence failed the exact re-check: {}", r.render())));
        }
        docs.push(kfree_to_doc(r, ok));
    }
    Ok(RecurrencesDoc {
        schema_version: SCHEMA_VERSION,
        kind: KIND_RECURRENCES.into(),
        inputs,
        summand: spec.clone(),
        gens: f.table.gen_names().to_vec(),
        grounds: f.table.grounds(),
        rec_vars: f.table.rec_vars().to_vec(),
        sum_vars: f.table.sum_vars().to_vec(),
        structure_set: structure.tuples().to_vec(),
        recurrences: docs,
    })
}

/// `sum-rec`: sums the `index`-th recurrence over the summation variables
/// and re-indexes it to backward (default) or forward shifts.
pub fn sum_rec(doc: &RecurrencesDoc, index: usize, forward: bool, inputs: Vec<InputHash>) -> CliResult<SumRecurrenceDoc> {
    let rec = doc.recurrence(index)?;
    let summed = sum_over(&rec)?;
    let (shifted, name) = if forward {
        (forward_shifts(&summed)?, "forward")
    } else {
        (backward_shifts(&summed)?, "backward")
    };
    Ok(SumRecurrenceDoc::new(&shifted, name, inputs))
}

/// `check-rec`: searches a termwise certificate that the summand satisfies
/// the sum recurrence, and re-verifies it. The document reports `holds =
/// false` when there is none within the window.
pub fn check_rec(spec: &SummandSpec, rec: &SumRecurrenceDoc, window: u32, inputs: Vec<InputHash>) -> CliResult<CertificateDoc> {
    let f = spec.build()?;
    let r = rec.recurrence()?;
    let cert = check_termwise(&f, &r, window)?;
    let verified = cert.holds && verify_certificate(&f, &r, &cert)?;
    Ok(CertificateDoc::new(&cert, spec.clone(), f.table.gen_names(), rec.clone(), verified, inputs))
}

/// `verify`: compares both sides of an identity on its default grid with
/// the given ranges overriding the defaults.
pub fn verify(identity: Identity, overrides: Option<&GridSpec>) -> CliResult<GridReportDoc> {
    let grid = match overrides {
        Some(o) => identity.default_grid().with(o).map_err(CliError::Input)?,
        None => identity.default_grid(),
    };
    let report = verify_grid(identity, &grid).map_err(CliError::Input)?;
    Ok(GridReportDoc::new(report))
}
