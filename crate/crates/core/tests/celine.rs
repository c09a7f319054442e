mod common;

use std::time::Instant;

use common::{fixture, qmono, structset};
use qrec_core::algebra::{rat, MultiPoly};
use qrec_core::celine::{check_kfree, find_recurrences, normalize, KFreeRecurrence};
use qrec_core::qterm::Summand;
use qrec_core::structset::rectangular;
use qrec_core::sumrec::{backward_shifts, sum_over};

fn out5(g: &Summand) -> KFreeRecurrence {
    let kl2 = qmono(g, 0, &["k", "L2"]);
    let k = qmono(g, 0, &["k"]);
    KFreeRecurrence::from_terms(
        g,
        vec![
            (vec![1, 2, 1, 1, 1, 1, 0, 0], kl2.clone()),
            (vec![1, 1, 1, 0, 1, 0, 0, 0], kl2),
            (vec![0, 1, 0, 0, 0, 0, 0, 0], k.clone()),
            (vec![0; 8], -&k),
        ],
    )
    .unwrap()
}

#[test]
fn gsum_in5_reproduces_out5() {
    let g = fixture("gsum.json");
    let start = Instant::now();
    let recs = find_recurrences(&g, &structset("structset_in5.json")).unwrap();
    eprintln!("find_recurrences(gsum, In[5]) took {:?}", start.elapsed());
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0], normalize(&out5(&g)).unwrap());
    assert!(check_kfree(&g, &recs[0]).unwrap());
}

#[test]
fn transcribed_out5_checks() {
    let g = fixture("gsum.json");
    let rec = out5(&g);
    assert!(check_kfree(&g, &rec).unwrap());
    let mut bad = rec.clone();
    bad.terms[0].1 = &bad.terms[0].1 + &MultiPoly::one();
    assert!(!check_kfree(&g, &bad).unwrap());
}

#[test]
fn normalization_rules() {
    let g = fixture("gsum.json");
    let rec = normalize(&out5(&g)).unwrap();
    let one_minus_q = &MultiPoly::one() - &MultiPoly::var(0);
    let mut scaled = rec.clone();
    for t in &mut scaled.terms {
        t.1 = &t.1 * &one_minus_q;
    }
    assert_eq!(normalize(&scaled).unwrap(), rec);
    let mut negated = rec.clone();
    for t in &mut negated.terms {
        t.1 = t.1.scale(&rat(-1));
    }
    assert_eq!(normalize(&negated).unwrap(), rec);
    assert_eq!(normalize(&rec).unwrap(), rec);
}

#[test]
fn origin_only_has_no_recurrence() {
    let p = fixture("psum.json");
    assert!(find_recurrences(&p, &rectangular(&[0; 5], &[0])).unwrap().is_empty());
}

#[test]
fn width_mismatch_is_an_error() {
    let g = fixture("gsum.json");
    assert!(find_recurrences(&g, &rectangular(&[0], &[0])).is_err());
}

fn gsum_in10() -> Summand {
    use qrec_core::qterm::LinForm;
    let g = fixture("gsum.json");
    let g = g.substitute("L1", &LinForm::parse("i + j - 1").unwrap()).unwrap();
    let g = g.substitute("L2", &LinForm::parse("i + j - 1").unwrap()).unwrap();
    let g = g.substitute("M", &LinForm::parse("Delta + i + j").unwrap()).unwrap();
    g.with_rec(&["Delta".into(), "i".into(), "j".into(), "k".into()]).unwrap()
}

const OUT_10: &str = "q^(-1 + 2 Delta + 2 i + 2 j) SUM(-1 + Delta, -1 + i, -1 + j, -2 + k) + q^(-3 + Delta + 3 i + 3 j) SUM(-1 + Delta, -1 + i, -1 + j, -1 + k) - q^(Delta + i + j) (-1 + q^(-1 + i + j)) SUM(-1 + Delta, -1 + i, j, -1 + k) - q^(Delta + i + j) (-1 + q^(-1 + i + j)) SUM(-1 + Delta, i, -1 + j, -1 + k) + q^(Delta + i + j) SUM(-1 + Delta, i, j, -1 + k) + SUM(-1 + Delta, i, j, k) - q^(-1 + Delta + 2 i + 2 j) SUM(Delta, -1 + i, -1 + j, -1 + k) - SUM(Delta, i, j, k) = 0";

#[test]
fn gsum_in10_sums_to_out10() {
    let g = gsum_in10();
    let start = Instant::now();
    let recs = find_recurrences(&g, &structset("structset_in10.json")).unwrap();
    eprintln!("find_recurrences(gsum, In[10]) took {:?}", start.elapsed());
    assert_eq!(recs.len(), 1);
    assert!(check_kfree(&g, &recs[0]).unwrap());
    let sum = backward_shifts(&sum_over(&recs[0]).unwrap()).unwrap();
    assert_eq!(sum.render(), OUT_10);
}
