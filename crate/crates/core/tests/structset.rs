mod common;

use common::fixture;
use qrec_core::qterm::LinForm;
use qrec_core::structset::{
    parse_structure_set, rectangular, verbaeten_complete, CompletionLimits, StructureSet,
};
use qrec_core::Error;

#[test]
fn rectangular_box() {
    let s = rectangular(&[1], &[0, 2]);
    assert_eq!(s.len(), 6);
    assert_eq!(s.width(), 3);
    assert!(s.contains(&[1, 0, 2]));
    assert!(!s.contains(&[2, 0, 0]));
    assert_eq!(rectangular(&[0, 0], &[0]).tuples(), &[vec![0, 0, 0]]);
}

#[test]
fn new_sorts_and_deduplicates() {
    let s = StructureSet::new(vec![vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(s.tuples(), &[vec![0, 1], vec![1, 0]]);
}

#[test]
fn invalid_sets_are_rejected() {
    assert!(matches!(StructureSet::new(vec![]), Err(Error::EmptyStructureSet)));
    assert!(matches!(StructureSet::new(vec![vec![0], vec![0, 1]]), Err(Error::RaggedStructureSet(_))));
}

#[test]
fn parse_bare_and_wrapped() {
    let bare = parse_structure_set("[[0,0],[1,2]]").unwrap();
    let wrapped = parse_structure_set(r#"{"schema_version": 1, "tuples": [[1,2],[0,0]]}"#).unwrap();
    assert_eq!(bare, wrapped);
    assert!(parse_structure_set(r#"{"schema_version": 9, "tuples": [[0]]}"#).is_err());
    assert!(parse_structure_set("[[0],[1,1]]").is_err());
    assert!(parse_structure_set("[]").is_err());
    assert!(parse_structure_set("{").is_err());
}

#[test]
fn serde_round_trip() {
    let s = rectangular(&[1], &[1]);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, "[[0,0],[0,1],[1,0],[1,1]]");
    let back: StructureSet = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
}

#[test]
fn completion_of_boundary_start_set() {
    let g = fixture("gsum.json")
        .substitute("L2", &LinForm::parse("i + j - 1").unwrap())
        .unwrap()
        .with_rec(&["L1".into(), "M".into(), "i".into()])
        .unwrap();
    let start = rectangular(&[0, 0, 0], &[0, 0, 1]);
    let s = verbaeten_complete(&g, &start, CompletionLimits::default()).unwrap();
    assert!(s.is_superset(&start));
    for t in [[1, 0, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0]] {
        assert!(s.contains(&t), "{t:?} missing from {:?}", s.tuples());
    }
    assert!(s.tuples().iter().all(|t| t.iter().all(|&x| x >= 0)));
}

#[test]
fn completion_respects_limits() {
    let f = fixture("jacobi_rhs.json");
    let start = rectangular(&[2], &[0, 0, 0]);
    let none = CompletionLimits { max_sweeps: 0, max_size: 512 };
    assert_eq!(verbaeten_complete(&f, &start, none).unwrap(), start);
    let full = verbaeten_complete(&f, &start, CompletionLimits::default()).unwrap();
    assert_eq!(full.len(), 21);
    assert!(full.contains(&[4, 2, 2, 2]));
}

#[test]
fn completion_width_mismatch() {
    let f = fixture("jacobi_rhs.json");
    assert!(verbaeten_complete(&f, &rectangular(&[1], &[0]), CompletionLimits::default()).is_err());
}
