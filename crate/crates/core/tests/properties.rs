mod common;

use common::fixture;
use proptest::prelude::*;
use qrec_core::algebra::modular::{rank, ModPoint};
use qrec_core::algebra::{nullspace, rat, MultiPoly, PolyMatrix};
use qrec_core::qterm::Summand;

const FIXTURES: [&str; 4] = ["psum.json", "gsum.json", "jacobi_rhs.json", "euler_rhs.json"];

thread_local! {
    static SUMMANDS: Vec<Summand> = FIXTURES.iter().map(|n| fixture(n)).collect();
}

fn shift(width: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, width)
}

/// A fixture index with two shifts of matching width.
fn cocycle_case() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (0..FIXTURES.len()).prop_flat_map(|f| {
        let width = SUMMANDS.with(|s| s[f].table.shift_len());
        (Just(f), shift(width), shift(width))
    })
}

/// Small polynomials in `q` and one further generator.
fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-2i64..=2, 0u32..=2, 0u32..=1), 0..=3).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, a, b)| {
            let m = &MultiPoly::var(0).pow(a) * &MultiPoly::var(1).pow(b);
            &acc + &m.scale(&rat(c))
        })
    })
}

fn small_matrix() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(small_poly(), c), r)
            .prop_map(|rows| PolyMatrix::from_rows(rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cocycle((f, s, t) in cocycle_case()) {
        let ok = SUMMANDS.with(|all| all[f].cocycle_check(&s, &t).unwrap());
        prop_assert!(ok, "{} s={:?} t={:?}", FIXTURES[f], s, t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nullspace_soundness(m in small_matrix()) {
        let basis = nullspace(&m);
        for v in &basis {
            prop_assert_eq!(v.len(), m.cols());
            prop_assert!(v.iter().any(|e| !e.is_zero()));
            prop_assert!(m.mul_vec(v).iter().all(MultiPoly::is_zero));
        }
        // Generic rank at a random point equals the rank over the fraction field.
        let point = ModPoint::random(0xbeef);
        let rows: Vec<Vec<u64>> = (0..m.rows()).map(|r| m.row(r).iter().map(|e| point.poly(e)).collect()).collect();
        prop_assert_eq!(basis.len(), m.cols() - rank(rows));
        let vectors: Vec<Vec<u64>> = basis.iter().map(|v| v.iter().map(|e| point.poly(e)).collect()).collect();
        prop_assert_eq!(rank(vectors), basis.len());
    }
}
