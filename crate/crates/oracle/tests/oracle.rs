use num_bigint::BigInt;
use qrec_oracle::*;

fn poly(low: i64, c: &[i64]) -> QPoly {
    QPoly::from_coeffs(low, c.iter().map(|&x| BigInt::from(x)).collect())
}

fn binomial(n: i64, b: i64) -> BigInt {
    (0..b).fold(BigInt::from(1), |acc, l| acc * (n - l) / (l + 1))
}

#[test]
fn q_bin_examples() {
    assert_eq!(q_bin(4, 2, 1), poly(0, &[1, 1, 2, 1, 1]));
    for n in 0..6 {
        assert_eq!(q_bin(n, 0, 3), QPoly::one());
    }
    assert!(q_bin(3, -1, 1).is_zero());
    assert!(q_bin(2, 3, 1).is_zero());
    assert_eq!(q_bin(2, 1, 2), poly(0, &[1, 0, 1]));
}

#[test]
fn q_bin_negative_top_is_laurent() {
    // [-1, 1] = (1 - q^{-1}) / (1 - q) = -q^{-1}
    assert_eq!(q_bin(-1, 1, 1), QPoly::monomial(-1, -1));
    // [-2, 2] = (1 - q^{-3})(1 - q^{-2}) / ((1 - q)(1 - q^2)) = q^{-5} [3, 2]
    assert_eq!(q_bin(-2, 2, 1), &QPoly::monomial(1, -5) * &q_bin(3, 2, 1));
    assert_eq!(q_bin(-3, 0, 1), QPoly::one());
}

#[test]
fn q_bin_pascal_symmetry_and_q_one() {
    let q = |e| QPoly::monomial(1, e);
    for n in 0..=12 {
        for b in 0..=n {
            if n > 0 {
                let rhs = &q_bin(n - 1, b, 1) + &(&q(n - b) * &q_bin(n - 1, b - 1, 1));
                assert_eq!(q_bin(n, b, 1), rhs, "Pascal at ({n}, {b})");
            }
            for d in 1..=3 {
                assert_eq!(q_bin(n, b, d), q_bin(n, n - b, d), "symmetry at ({n}, {b}, {d})");
                assert_eq!(q_bin(n, b, d).at_one(), binomial(n, b), "q = 1 at ({n}, {b}, {d})");
            }
        }
    }
}

#[test]
fn q_multinomial_examples() {
    for l in 0..6 {
        for a in -1..7 {
            assert_eq!(q_multinomial(l, &[a], 1), q_bin(l, a, 1));
        }
    }
    assert_eq!(q_multinomial(2, &[1, 1], 1), poly(0, &[1, 1]));
    assert!(q_multinomial(5, &[2, -1, 1], 1).is_zero());
}

#[test]
fn g_and_p_examples() {
    for (l1, l2, m) in [(0, 0, 0), (3, 1, 4), (2, 5, 0)] {
        assert_eq!(g_poly(0, 0, 0, l1, l2, m), QPoly::one());
        assert_eq!(p_poly(0, 0, 0, l1, l2, m), QPoly::one());
    }
    assert_eq!(g_poly(1, 0, 0, 2, 5, 5), poly(1, &[1, 1]));
    assert_eq!(p_poly(1, 0, 0, 2, 5, 5), poly(1, &[1, 1]));
    for (i, j, k) in [(-1, 0, 0), (0, -1, 2), (1, 1, -1)] {
        assert!(g_poly(i, j, k, 3, 3, 3).is_zero());
        assert!(p_poly(i, j, k, 3, 3, 3).is_zero());
    }
}

#[test]
fn p_on_the_double_boundary() {
    for i in 0..=3 {
        for j in 0..=3 {
            for k in 0..=3 {
                for m in -2..=7 {
                    let b = i + j - 1;
                    assert_eq!(p_poly(i, j, k, b, b, m), boundary_closed_form(i, j, k, m), "({i},{j},{k},{m})");
                }
            }
        }
    }
}

#[test]
fn rhs_examples() {
    for l in 0..5 {
        assert_eq!(rhs_single(0, 0, 0, l), QPoly::one());
    }
    assert_eq!(rhs_single(1, 1, 0, 2), poly(2, &[1, 1]));
    for (i, j, k, l, m) in [(1, 2, 1, 4, 3), (2, 2, 2, 5, 6), (3, 0, 1, -1, 2)] {
        assert_eq!(rhs_double(i, j, k, l, m), p_poly(i, j, k, l, l, m));
    }
}

#[test]
fn jacobi_and_euler_examples() {
    let (l, r) = jacobi_sides(0);
    assert_eq!((l.clone(), r), (BiLaurent::one(), BiLaurent::one()));
    let expected = [(0, 0, 1), (1, -1, 1), (1, 0, -1), (1, 1, 1)]
        .into_iter()
        .map(|(e, g, c)| BiLaurent::monomial(c, e, g))
        .sum::<BiLaurent>();
    assert_eq!(jacobi_left(1), expected);
    assert_eq!(jacobi_left(1).to_string(), "1 + a^(-1) q - q + a q");
    assert_eq!(euler_sides(0), (QPoly::one(), QPoly::one()));
    for l in 0..=8 {
        let (a, b) = jacobi_sides(l);
        assert_eq!(a, b, "Jacobi at L = {l}");
        let (a, b) = euler_sides(l);
        assert_eq!(a, b, "Euler at L = {l}");
    }
}

#[test]
fn display() {
    assert_eq!(poly(-1, &[-1, 0, 2, 1]).to_string(), "-q^(-1) + 2 q + q^2");
    assert_eq!(QPoly::zero().to_string(), "0");
    assert_eq!(QPoly::one().to_string(), "1");
}

#[test]
fn division_by_one_minus() {
    let p = &poly(0, &[1, 2, 3]) * &poly(0, &[1, 0, -1]);
    assert_eq!(p.div_one_minus(2), Some(poly(0, &[1, 2, 3])));
    assert_eq!(poly(0, &[1, 1]).div_one_minus(1), None);
}

#[test]
fn stabilization() {
    assert!(stabilization_check(0, 0, 0, 7));
    let geometric = (0..=10).map(|e| BigInt::from((e >= 1) as u8)).collect::<Vec<_>>();
    assert_eq!(key_identity_truncation(1, 0, 0, 10), geometric);
    assert!(stabilization_check(1, 0, 0, 10));
    assert!(stabilization_check(2, 1, 1, 12));
}

#[test]
fn grid_spec_parsing() {
    let g: GridSpec = "i=0..3, L1=-2..7,k=2".parse().unwrap();
    assert_eq!(g.ranges, vec![("i".into(), 0, 3), ("L1".into(), -2, 7), ("k".into(), 2, 2)]);
    assert_eq!(g.size(), 40);
    assert_eq!(g.to_string(), "i=0..3,L1=-2..7,k=2..2");
    for bad in ["", "i", "i=3..0", "i=a..2", "i=0..1,i=2..3"] {
        assert!(bad.parse::<GridSpec>().is_err(), "{bad:?}");
    }
    assert!("eq9.9".parse::<Identity>().is_err());
    assert_eq!("eq1.15".parse::<Identity>(), Ok(Identity::Eq1_15));
}

#[test]
fn small_grids_pass() {
    let small: GridSpec = "i=0..2,j=0..2,k=0..2".parse().unwrap();
    for id in Identity::ALL {
        let grid = if matches!(id, Identity::FiniteJac | Identity::FiniteEuler) {
            "L=0..5".parse().unwrap()
        } else {
            id.default_grid().with(&small).unwrap()
        };
        let report = verify_grid(id, &grid).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.points, grid.size());
    }
}

#[test]
fn printed_eq52_exponent_fails() {
    // The printed exponent T_{j-1} differs from T_{j-i} away from i = 1.
    let (i, j, k, l2, m) = (2, 2, 2, 4, 5);
    let printed = eq52_closed_form(i, j, k, l2, m).shift(qrec_oracle::tri(j - 1) - qrec_oracle::tri(j - i));
    assert!(!g_poly(i, j, k, i - 1, l2, m).is_zero());
    assert_ne!(g_poly(i, j, k, i - 1, l2, m), printed);
    assert_eq!(g_poly(i, j, k, i - 1, l2, m), eq52_closed_form(i, j, k, l2, m));
}

#[test]
fn mismatch_is_reported() {
    let grid: GridSpec = "i=0..1,j=0..1,k=0..1,L1=0..1,L2=0..1,M=0..1".parse().unwrap();
    assert!(verify_grid(Identity::Eq1_15, &grid).unwrap().passed());
    let wrong: GridSpec = "i=0..1,j=0..1,k=0..1,L=0..1".parse().unwrap();
    assert!(verify_grid(Identity::Eq1_15, &wrong).is_err());
    assert!(verify_grid(Identity::FiniteJac, &"L=-1..2".parse().unwrap()).is_err());
}

#[test]
fn report_json_shape() {
    let report = verify_grid(Identity::FiniteEuler, &"L=0..3".parse().unwrap()).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["identity"], "finiteEuler");
    assert_eq!(v["status"], "pass");
    assert!(v.get("counterexample").is_none());
}
