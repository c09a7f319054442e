mod common;

use common::{fixture, structset};
use qrec_core::algebra::MultiPoly;
use qrec_core::celine::{find_recurrences, KFreeRecurrence};
use qrec_core::qterm::{LinForm, Summand};
use qrec_core::structset::{rectangular, verbaeten_complete, CompletionLimits};
use qrec_core::sumrec::{
    backward_shifts, check_termwise, forward_shifts, sum_over, verify_certificate, SumRecurrence,
};
use qrec_core::Error;

const EQ_3_2: &str = "q^L2 SUM(-1 + L1, -2 + L2, -1 + M, -1 + i, -1 + j) + q^L2 SUM(-1 + L1, -1 + L2, -1 + M, i, -1 + j) + SUM(L1, -1 + L2, M, i, j) - SUM(L1, L2, M, i, j) = 0";
const OUT_8: &str = "q^L1 SUM(-1 + L1, -1 + M, -1 + i) + SUM(-1 + L1, M, i) - SUM(L1, M, i) = 0";
const OUT_12: &str = "-alpha q^(9 + 3 L) SUM(L) + q^(7 + 2 L) (1 - alpha + alpha^2 + alpha q^(2 + L)) SUM(1 + L) - q^(4 + L) (-1 + alpha - alpha^2 + q^(3 + L) - alpha q^(3 + L) + alpha^2 q^(3 + L)) SUM(2 + L) - (alpha + q^(4 + L) - alpha q^(4 + L) + alpha^2 q^(4 + L)) SUM(3 + L) + alpha SUM(4 + L) = 0";
const OUT_14: &str = "-q^(14 + 6 L) SUM(L) + q^(12 + 4 L) (1 + q^(4 + 2 L)) SUM(1 + L) - q^(6 + 2 L) (-1 + q^(6 + 2 L)) SUM(2 + L) - (1 + q^(8 + 2 L)) SUM(3 + L) + SUM(4 + L) = 0";

fn sub(f: &Summand, name: &str, value: &str) -> Summand {
    f.substitute(name, &LinForm::parse(value).unwrap()).unwrap()
}

fn with_rec(f: &Summand, names: &[&str]) -> Summand {
    f.with_rec(&names.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
}

fn eq_3_2() -> SumRecurrence {
    let recs = find_recurrences(&fixture("gsum.json"), &structset("structset_in5.json")).unwrap();
    backward_shifts(&sum_over(&recs[0]).unwrap()).unwrap()
}

fn gsum_l2_boundary() -> Summand {
    with_rec(&sub(&fixture("gsum.json"), "L2", "i + j - 1"), &["L1", "M", "i"])
}

fn psum_l2_boundary() -> Summand {
    with_rec(&sub(&fixture("psum.json"), "L2", "i + j - 1"), &["L1", "M", "i"])
}

fn out_8() -> SumRecurrence {
    let g = gsum_l2_boundary();
    let s = verbaeten_complete(&g, &rectangular(&[0, 0, 0], &[0, 0, 1]), CompletionLimits::default()).unwrap();
    let recs = find_recurrences(&g, &s).unwrap();
    backward_shifts(&sum_over(&recs[0]).unwrap()).unwrap()
}

#[test]
fn out5_sums_to_eq_3_2() {
    assert_eq!(eq_3_2().render(), EQ_3_2);
}

#[test]
fn backward_shifts_is_idempotent() {
    let r = eq_3_2();
    assert_eq!(backward_shifts(&r).unwrap(), r);
    let f = forward_shifts(&r).unwrap();
    assert_eq!(backward_shifts(&f).unwrap(), r);
    assert_eq!(forward_shifts(&f).unwrap(), f);
}

#[test]
fn backward_shifts_have_non_positive_offsets() {
    let r = eq_3_2();
    for (s, _) in &r.terms {
        assert!(s.iter().all(|&x| x >= 0), "{s:?}");
    }
    for l in 0..r.rec_names.len() {
        assert!(r.terms.iter().any(|(s, _)| s[l] == 0));
    }
}

#[test]
fn collapsing_recurrence_is_an_error() {
    let f = fixture("psum.json");
    let zero = vec![0; 6];
    let mut one = zero.clone();
    one[5] = 1;
    let rec = KFreeRecurrence::from_terms(&f, vec![(zero, MultiPoly::one()), (one, -&MultiPoly::one())]).unwrap();
    assert!(matches!(sum_over(&rec), Err(Error::Collapse)));
}

#[test]
fn psum_satisfies_eq_3_2_termwise() {
    let p = fixture("psum.json");
    let r = eq_3_2();
    let cert = check_termwise(&p, &r, 2).unwrap();
    assert!(cert.holds);
    assert!(cert.window <= 2);
    assert!(verify_certificate(&p, &r, &cert).unwrap());
}

#[test]
fn tampered_certificate_is_rejected() {
    let p = fixture("psum.json");
    let r = eq_3_2();
    let mut cert = check_termwise(&p, &r, 2).unwrap();
    cert.multiplier = &cert.multiplier * &MultiPoly::from_int(2);
    assert!(!verify_certificate(&p, &r, &cert).unwrap());
    let mut cert = check_termwise(&p, &r, 2).unwrap();
    cert.telescopers.iter_mut().for_each(|g| g.clear());
    assert!(!verify_certificate(&p, &r, &cert).unwrap());
}

#[test]
fn wrong_recurrence_is_not_certified() {
    let p = fixture("psum.json");
    let r = eq_3_2();
    let terms: Vec<(Vec<i64>, MultiPoly)> = r
        .terms
        .iter()
        .enumerate()
        .map(|(k, (s, c))| (s.clone(), if k == 0 { c * &MultiPoly::var(0) } else { c.clone() }))
        .collect();
    let wrong = SumRecurrence::new(terms, r.gens.clone(), r.grounds.clone(), r.rec_names.clone()).unwrap();
    let cert = check_termwise(&p, &wrong, 1).unwrap();
    assert!(!cert.holds);
}

#[test]
fn completed_boundary_set_yields_out8() {
    assert_eq!(out_8().render(), OUT_8);
}

#[test]
fn psum_boundary_satisfies_out8_termwise() {
    let p = psum_l2_boundary();
    let r = out_8();
    let cert = check_termwise(&p, &r, 2).unwrap();
    assert!(cert.holds);
    assert!(verify_certificate(&p, &r, &cert).unwrap());
}

#[test]
fn jacobi_and_euler_order_four() {
    for (name, expected) in [("jacobi_rhs.json", OUT_12), ("euler_rhs.json", OUT_14)] {
        let f = fixture(name);
        let s = verbaeten_complete(&f, &rectangular(&[2], &[0, 0, 0]), CompletionLimits::default()).unwrap();
        let recs = find_recurrences(&f, &s).unwrap();
        assert_eq!(recs.len(), 1, "{name}");
        assert_eq!(forward_shifts(&sum_over(&recs[0]).unwrap()).unwrap().render(), expected, "{name}");
    }
}

#[test]
fn recurrence_variables_must_match() {
    let p = psum_l2_boundary();
    assert!(check_termwise(&p, &eq_3_2(), 0).is_err());
}
