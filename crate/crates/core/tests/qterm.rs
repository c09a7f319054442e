use std::path::PathBuf;

use qrec_core::algebra::{rat, LaurentPoly, MultiPoly, RatFunc, Rational};
use qrec_core::qterm::{parse_summand, Summand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn fixture(name: &str) -> Summand {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_summand(&text).unwrap()
}

fn q_poly(names: &[&str], f: &Summand) -> MultiPoly {
    let mut p = MultiPoly::one();
    for n in names {
        p = &p * &MultiPoly::var(f.table.gen(n).unwrap());
    }
    p
}

/// Point with `q = 3` and every generator `q^{v}` set to `3^{v}`.
fn point(f: &Summand, values: &dyn Fn(&str) -> Option<i64>) -> Vec<Rational> {
    let three = rat(3);
    let mut pt = vec![rat(1); 16];
    pt[0] = three.clone();
    for (g, name) in f.table.gen_names().iter().enumerate().skip(1) {
        pt[g] = match values(name) {
            Some(v) => qrec_core::algebra::factored::rational_pow(&three, v as i32),
            None => rat(5), // ground symbol
        };
    }
    pt
}

#[test]
fn parses_paper_summands() {
    let g = fixture("gsum.json");
    assert_eq!(g.count_factors("qpow"), 1);
    assert_eq!(g.count_factors("qbinom"), 6);
    assert_eq!(g.tail.q_power_leaves(), 4);
    assert_eq!(g.table.rec_vars(), ["L1", "L2", "M", "i", "j"]);
    assert_eq!(g.table.sum_vars(), ["ab", "ac", "bc"]);
    let p = fixture("psum.json");
    assert_eq!(p.count_factors("qbinom"), 4);
    assert!(p.tail.is_constant());
    for name in ["jacobi_rhs.json", "euler_rhs.json"] {
        let f = fixture(name);
        assert_eq!(f.count_factors("qbinom"), 3);
        assert_eq!(f.table.shift_len(), 4);
    }
}

#[test]
fn zero_shift_is_one() {
    let g = fixture("gsum.json");
    assert!(g.shift_quotient(&[0; 8]).unwrap().is_one());
    let p = fixture("psum.json");
    assert!(p.shift_quotient(&[0; 6]).unwrap().is_one());
}

#[test]
fn shift_length_is_checked() {
    let g = fixture("gsum.json");
    assert!(g.shift_quotient(&[1, 0]).is_err());
}

#[test]
fn known_relation_annihilates_gsum() {
    // q^{k+L2} F(v-s1) + q^{k+L2} F(v-s2) + q^k F(v-s3) - q^k F(v) = 0
    let g = fixture("gsum.json");
    let shifts: [[i64; 8]; 4] = [
        [1, 2, 1, 1, 1, 1, 0, 0],
        [1, 1, 1, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0],
        [0; 8],
    ];
    let kl2 = q_poly(&["k", "L2"], &g);
    let k = q_poly(&["k"], &g);
    let coeffs = [kl2.clone(), kl2, k.clone(), -&k];
    let mut total = RatFunc::zero();
    for (s, c) in shifts.iter().zip(coeffs) {
        total = total.add(&g.shift_quotient(s).unwrap().mul(&RatFunc::from_poly(c)));
    }
    assert!(total.is_zero(), "residual {}", total.display_with(g.table.gen_names()));
}

#[test]
fn cocycle_examples() {
    let p = fixture("psum.json");
    let mut si = vec![0; 6];
    si[3] = 1;
    let mut sj = vec![0; 6];
    sj[4] = 1;
    assert!(p.cocycle_check(&si, &sj).unwrap());
    assert!(p.cocycle_check(&[0; 6], &[0; 6]).unwrap());
    let g = fixture("gsum.json");
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let s: Vec<i64> = (0..8).map(|_| rng.gen_range(-1..=1)).collect();
        let t: Vec<i64> = (0..8).map(|_| rng.gen_range(-1..=1)).collect();
        assert!(g.cocycle_check(&s, &t).unwrap(), "s={s:?} t={t:?}");
    }
}

#[test]
fn evaluation_examples() {
    let g = fixture("gsum.json");
    for (l1, l2, m) in [(0, 0, 0), (3, 1, 4), (5, 5, 5)] {
        let v = g
            .eval_with(&[("L1", l1), ("L2", l2), ("M", m), ("i", 0), ("j", 0), ("k", 0), ("ab", 0), ("ac", 0), ("bc", 0)])
            .unwrap();
        assert_eq!(v, LaurentPoly::from_poly(MultiPoly::one()));
    }
    let v = g
        .eval_with(&[("L1", 2), ("L2", 5), ("M", 5), ("i", 1), ("j", 0), ("k", 0), ("ab", 0), ("ac", 0), ("bc", 0)])
        .unwrap();
    let q = MultiPoly::var(0);
    assert_eq!(v, LaurentPoly::from_poly(&q + &(&q * &q)));
    let p = fixture("psum.json");
    let v = p
        .eval_with(&[("L1", 3), ("L2", 2), ("M", 4), ("i", 0), ("j", 0), ("k", 0), ("s", 0)])
        .unwrap();
    assert_eq!(v, LaurentPoly::from_poly(MultiPoly::one()));
}

#[test]
fn negative_bottom_evaluates_to_zero() {
    let p = fixture("psum.json");
    let v = p
        .eval_with(&[("L1", 3), ("L2", 2), ("M", 4), ("i", 0), ("j", 0), ("k", 0), ("s", 1)])
        .unwrap();
    assert!(v.is_zero());
}

/// evalSummand(v - s) = evalSummand(v) · R_s(v) wherever both sides are defined.
fn check_quotient_numerically(f: &Summand, radius: i64, trials: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let names: Vec<String> = f.table.declared().iter().map(|(n, _)| n.clone()).filter(|n| f.table.is_integer_symbol(n)).collect();
    let idx: Vec<Option<usize>> = names.iter().map(|n| f.table.shift_index(n)).collect();
    let n = f.table.shift_len();
    let mut checked = 0;
    for _ in 0..trials {
        let v: Vec<i64> = names.iter().map(|_| rng.gen_range(0..=6)).collect();
        let s: Vec<i64> = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
        let vs: Vec<i64> = v.iter().zip(&idx).map(|(x, i)| x - i.map_or(0, |i| s[i])).collect();
        let at = |vals: &[i64]| {
            let vals = vals.to_vec();
            let names = names.clone();
            move |name: &str| names.iter().position(|m| m == name).map(|p| vals[p])
        };
        let (Ok(fv), Ok(fvs)) = (f.eval_at(&at(&v)), f.eval_at(&at(&vs))) else {
            continue;
        };
        let r = f.shift_quotient_factored(&s).unwrap();
        let pt = point(f, &at(&v));
        let Some(rv) = r.eval(&pt) else {
            continue;
        };
        assert_eq!(fvs.eval(&pt), fv.eval(&pt) * rv, "v={v:?} s={s:?}");
        checked += 1;
    }
    assert!(checked > trials / 4, "only {checked} points checked");
}

#[test]
fn quotient_matches_evaluation_psum() {
    check_quotient_numerically(&fixture("psum.json"), 2, 300, 1);
}

#[test]
fn quotient_matches_evaluation_gsum() {
    check_quotient_numerically(&fixture("gsum.json"), 1, 300, 2);
}

#[test]
fn quotient_matches_evaluation_jacobi_euler() {
    check_quotient_numerically(&fixture("jacobi_rhs.json"), 2, 300, 3);
    check_quotient_numerically(&fixture("euler_rhs.json"), 2, 300, 4);
}
