//! Summing the symbolic summands' exact point values reproduces the
//! independent oracle polynomials.

mod common;

use common::fixture;
use qrec_core::algebra::LaurentPoly;
use qrec_core::qterm::Summand;
use qrec_oracle::{g_poly, jacobi_sides, p_poly, BiLaurent, QPoly};

/// Converts a value in `q` and at most one ground generator `g` to the
/// oracle's representation.
fn to_bilaurent(v: &LaurentPoly, ground: Option<usize>) -> BiLaurent {
    v.terms()
        .into_iter()
        .map(|(m, c)| {
            assert!(c.is_integer(), "non-integral coefficient {c}");
            for (g, &e) in m.0.iter().enumerate() {
                assert!(e == 0 || g == 0 || Some(g) == ground, "unexpected generator {g}");
            }
            let a = ground.map_or(0, |g| m.0[g] as i64);
            BiLaurent::monomial(c.to_integer(), m.0[0] as i64, a)
        })
        .sum()
}

fn to_q(v: &LaurentPoly) -> QPoly {
    let b = to_bilaurent(v, None);
    b.terms().map(|(&(e, _), c)| QPoly::monomial(c.clone(), e)).sum()
}

fn sum_over(f: &Summand, fixed: &[(&str, i64)], sum_vars: &[&str], bound: i64) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    let mut idx = vec![0i64; sum_vars.len()];
    loop {
        let mut assignment: Vec<(&str, i64)> = fixed.to_vec();
        assignment.extend(sum_vars.iter().copied().zip(idx.iter().copied()));
        total = total.add(&f.eval_with(&assignment).unwrap());
        let mut p = 0;
        loop {
            if p == idx.len() {
                return total;
            }
            idx[p] += 1;
            if idx[p] <= bound {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

#[test]
fn gsum_matches_g_poly() {
    let g = fixture("gsum.json");
    for (i, j, k) in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 0), (2, 2, 1), (1, 2, 3)] {
        for (l1, l2, m) in [(0, 0, 0), (2, 5, 5), (3, 2, 4), (-1, 2, 3), (4, -2, 1), (5, 5, -1)] {
            let v = sum_over(&g, &[("i", i), ("j", j), ("k", k), ("L1", l1), ("L2", l2), ("M", m)], &["ab", "ac", "bc"], 3);
            assert_eq!(to_q(&v), g_poly(i, j, k, l1, l2, m), "({i},{j},{k},{l1},{l2},{m})");
        }
    }
}

#[test]
fn psum_matches_p_poly() {
    let p = fixture("psum.json");
    for (i, j, k) in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 2, 1), (3, 2, 3)] {
        for (l1, l2, m) in [(0, 0, 0), (2, 5, 5), (3, 2, 4), (-1, 2, 3), (4, -2, 1), (6, 6, -2)] {
            let v = sum_over(&p, &[("i", i), ("j", j), ("k", k), ("L1", l1), ("L2", l2), ("M", m)], &["s"], 4);
            assert_eq!(to_q(&v), p_poly(i, j, k, l1, l2, m), "({i},{j},{k},{l1},{l2},{m})");
        }
    }
}

#[test]
fn jacobi_summand_matches_right_side() {
    let f = fixture("jacobi_rhs.json");
    let alpha = f.table.gen(&f.table.grounds()[0]).unwrap();
    for l in 0..=4 {
        let v = sum_over(&f, &[("L", l)], &["i", "j", "k"], l);
        assert_eq!(to_bilaurent(&v, Some(alpha)), jacobi_sides(l).1, "L = {l}");
    }
}

#[test]
fn euler_summand_matches_right_side() {
    let f = fixture("euler_rhs.json");
    for l in 0..=4 {
        let v = sum_over(&f, &[("L", l)], &["i", "j", "k"], l);
        assert_eq!(to_q(&v), qrec_oracle::euler_sides(l).1, "L = {l}");
    }
}
