#![allow(dead_code)]

use std::path::PathBuf;

use qrec_core::algebra::MultiPoly;
use qrec_core::qterm::{parse_summand, Summand};
use qrec_core::structset::{parse_structure_set, StructureSet};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures").join(name)
}

pub fn fixture(name: &str) -> Summand {
    let path = fixture_path(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_summand(&text).unwrap()
}

pub fn structset(name: &str) -> StructureSet {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_structure_set(&text).unwrap()
}

/// `q^c · Π g` for generator names of `f`.
pub fn qmono(f: &Summand, c: u32, names: &[&str]) -> MultiPoly {
    let mut p = MultiPoly::var(0).pow(c);
    for n in names {
        p = &p * &MultiPoly::var(f.table.gen(n).unwrap_or_else(|| panic!("no generator {n}")));
    }
    p
}
