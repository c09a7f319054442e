mod rational {
    use qrec_core::algebra::rational::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat2(-3, 2));
        assert_eq!(format_rational(&rat2(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn content_of_rationals() {
        let v = [rat2(2, 3), rat2(4, 5)];
        assert_eq!(rational_content(&v), rat2(2, 15));
    }
}

mod monomial {
    use qrec_core::algebra::monomial::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(0, 1);
        let y2 = Monomial::var(1, 2);
        let x2 = Monomial::var(0, 2);
        assert!(y2 > x);
        assert!(x2 > y2);
        assert!(x.mul(&Monomial::var(1, 1)) < x2);
    }

    #[test]
    fn division_and_gcd() {
        let a = Monomial::from_exps(&[2, 1, 0]);
        let b = Monomial::from_exps(&[1, 1, 0]);
        assert_eq!(a.div(&b), Some(Monomial::var(0, 1)));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.gcd(&Monomial::from_exps(&[0, 3, 1])), Monomial::var(1, 1));
    }

    #[test]
    fn laurent_split() {
        let mut l = LaurentMono::one();
        l.0[0] = -2;
        l.0[3] = 1;
        let (p, n) = l.split_signs();
        assert_eq!(p, Monomial::var(3, 1));
        assert_eq!(n, Monomial::var(0, 2));
    }
}

mod poly {
    use qrec_core::algebra::poly::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::{rat, rat2};

    fn q() -> MultiPoly {
        MultiPoly::var(0)
    }

    #[test]
    fn difference_of_squares() {
        let one = MultiPoly::one();
        let p = &(&q() + &one) * &(&q() - &one);
        assert_eq!(p, &(&q() * &q()) - &one);
    }

    #[test]
    fn additive_identity() {
        let p = &q() + &MultiPoly::from_int(3);
        assert_eq!(&p + &MultiPoly::zero(), p);
    }

    #[test]
    fn schoolbook_product() {
        let one = MultiPoly::one();
        let q2 = q().pow(2);
        let a = &(&one + &q()) + &q2;
        let b = &one + &q();
        let expected = MultiPoly::from_terms(vec![
            (Monomial::ONE, rat(1)),
            (Monomial::var(0, 1), rat(2)),
            (Monomial::var(0, 2), rat(2)),
            (Monomial::var(0, 3), rat(1)),
        ]);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn exact_division() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let a = &(&x + &y) * &(&x - &(&y * &y));
        assert_eq!(a.div_exact(&(&x + &y)), Some(&x - &(&y * &y)));
        assert_eq!(a.div_exact(&(&x + &MultiPoly::one())), None);
        assert_eq!(MultiPoly::zero().div_exact(&x), Some(MultiPoly::zero()));
    }

    #[test]
    fn primitive_part_sign_and_content() {
        let p = MultiPoly::from_terms(vec![
            (Monomial::var(0, 1), rat2(-2, 3)),
            (Monomial::ONE, rat2(4, 9)),
        ]);
        let (c, pp) = p.primitive_part();
        assert_eq!(c, rat2(-2, 9));
        assert_eq!(pp.leading_coeff(), rat(3));
        assert_eq!(pp.constant_term(), rat(-2));
    }

    #[test]
    fn substitution_examples() {
        let one = MultiPoly::one();
        let p = &(&one + &q()) + &q().pow(2);
        assert_eq!(p.eval_var(0, &rat(1)), MultiPoly::from_int(3));
        // Q -> q^3 in 1 - qQ
        let big_q = MultiPoly::var(1);
        let f = &one - &(&q() * &big_q);
        let g = f.substitute(1, &q().pow(3));
        assert_eq!(g, &one - &q().pow(4));
        let ident = f.substitute_all(&[None, Some(big_q.clone())]);
        assert_eq!(ident, f);
    }

    #[test]
    fn coeffs_round_trip() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let p = &(&(&x * &y) + &y.pow(3)) + &MultiPoly::from_int(2);
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(MultiPoly::from_coeffs_in(1, &cs), p);
    }
}

mod gcd {
    use qrec_core::algebra::gcd::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::rat;

    fn q() -> MultiPoly {
        MultiPoly::var(0)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    #[test]
    fn common_factor() {
        let a = &q().pow(2) - &one();
        let b = &q() - &one();
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let p = MultiPoly::from_terms(vec![
            (qrec_core::algebra::monomial::Monomial::var(0, 1), rat(-4)),
            (qrec_core::algebra::monomial::Monomial::ONE, rat(6)),
        ]);
        let g = poly_gcd(&p, &MultiPoly::zero());
        assert_eq!(g, &(&q() * &MultiPoly::from_int(2)) - &MultiPoly::from_int(3));
    }

    #[test]
    fn two_variable_binomials() {
        // gcd((1 - q^3 Q)(1 - q Q), 1 - q Q) = 1 - q Q, up to normalization
        let big_q = MultiPoly::var(1);
        let f1 = &one() - &(&q().pow(3) * &big_q);
        let f2 = &one() - &(&q() * &big_q);
        let g = poly_gcd(&(&f1 * &f2), &f2);
        assert_eq!(g, (-&f2).primitive_part().1);
        assert!((&f1 * &f2).div_exact(&g).is_some());
        assert!(f2.div_exact(&g).is_some());
    }

    #[test]
    fn nontrivial_prs() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let z = MultiPoly::var(2);
        let common = &(&(&x * &y) + &z) - &one();
        let a = &common * &(&x.pow(2) + &(&y * &z));
        let b = &common * &(&(&x * &z) - &y.pow(3));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, common.primitive_part().1);
        assert!(coprime(&(&x + &y), &(&x - &y)));
        assert!(!coprime(&a, &b));
    }

    #[test]
    fn monomial_content_kept() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let a = &x.pow(2) * &(&y + &one());
        let b = &x * &y;
        assert_eq!(poly_gcd(&a, &b), x);
    }

    #[test]
    fn same_direction_binomials() {
        let x = MultiPoly::var(0);
        let y = MultiPoly::var(1);
        let xy = &x * &y;
        let a = &one() - &xy.pow(2);
        let b = &one() - &xy;
        assert_eq!(poly_gcd(&a, &b), (-&b).primitive_part().1);
    }
}

mod ratfunc {
    use qrec_core::algebra::ratfunc::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::rat;

    fn q() -> MultiPoly {
        MultiPoly::var(0)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    #[test]
    fn cancels_common_factor() {
        let r = rat_reduce(&q().pow(2) - &one(), &q() - &one()).unwrap();
        assert_eq!(r.num(), &(&q() + &one()));
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_over_anything() {
        let r = rat_reduce(MultiPoly::zero(), &q().pow(3) + &MultiPoly::from_int(2)).unwrap();
        assert_eq!(r, RatFunc::zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(rat_reduce(one(), MultiPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn two_variable_reduction() {
        let big_q = MultiPoly::var(1);
        let a = &one() - &big_q;
        let b = &one() - &(&q() * &big_q);
        let c = &one() - &(&q().pow(2) * &big_q);
        let r = rat_reduce(&a * &b, &a * &c).unwrap();
        // cross-multiplication check against the expected reduced form
        assert_eq!(r.num() * &c, r.den() * &b);
        assert_eq!(r.den().len(), 2);
        assert!(r.den().leading_coeff() > Rational::from_integer(0.into()));
    }

    #[test]
    fn reduce_is_idempotent() {
        let a = &q() + &MultiPoly::from_int(2);
        let b = &q().pow(2) - &MultiPoly::from_int(3);
        let r = rat_reduce(a.scale(&rat(6)), b.scale(&rat(-4))).unwrap();
        let again = rat_reduce(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(one(), &q() - &one()).unwrap();
        let b = RatFunc::new(one(), &q() + &one()).unwrap();
        let s = a.add(&b);
        assert_eq!(s.num(), &q().scale(&rat(2)));
        assert_eq!(s.den(), &(&q().pow(2) - &one()));
        assert!(s.sub(&a).sub(&b).is_zero());
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }
}

mod laurent {
    use qrec_core::algebra::laurent::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::rat;

    #[test]
    fn canonical_form() {
        let q = MultiPoly::var(0);
        let a = LaurentPoly::new(LaurentMono::var(0, -2), &q * &(&q + &MultiPoly::one()));
        let b = LaurentPoly::from_terms(vec![(LaurentMono::var(0, -1), rat(1)), (LaurentMono::one(), rat(1))]);
        assert_eq!(a, b);
        let sum = a.add(&LaurentPoly::from_terms(vec![(LaurentMono::var(0, -1), rat(-1))]));
        assert_eq!(sum, LaurentPoly::from_poly(MultiPoly::one()));
    }
}

mod factored {
    use qrec_core::algebra::factored::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::rat;

    fn q() -> MultiPoly {
        MultiPoly::var(0)
    }

    #[test]
    fn one_minus_laurent() {
        // 1 - q^{-1} = (q - 1)/q
        let mut f = FactoredRat::one();
        f.mul_one_minus(&rat(1), &LaurentMono::var(0, -1), 1);
        let r = f.to_ratfunc();
        assert_eq!(r.num(), &(&q() - &MultiPoly::one()));
        assert_eq!(r.den(), &q());
    }

    #[test]
    fn basis_splits_common_factors() {
        let one = MultiPoly::one();
        let a = &one - &q().pow(2);
        let b = &one - &q();
        let mut basis = FactorBasis::new();
        basis.insert(&a);
        basis.insert(&b);
        assert_eq!(basis.leaves().len(), 2);
        let (_, parts) = basis.decompose(&a.canonical_factor().2);
        assert_eq!(parts.len(), 2);
        let mut f = FactoredRat::one();
        f.mul_poly_pow(&a, 1);
        f.mul_poly_pow(&b, -1);
        let g = f.refine(&basis);
        assert_eq!(g.factors.len(), 1);
        assert_eq!(g.to_ratfunc(), f.to_ratfunc());
    }

    #[test]
    fn cancellation_removes_entries() {
        let p = &q() + &MultiPoly::one();
        let mut f = FactoredRat::one();
        f.mul_poly_pow(&p, 2);
        f.mul_poly_pow(&p.scale(&rat(3)), -2);
        assert!(f.factors.is_empty());
        assert_eq!(f.scalar, qrec_core::algebra::rational::rat2(1, 9));
    }
}

mod matrix {
    use qrec_core::algebra::matrix::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::rat;

    fn q() -> MultiPoly {
        MultiPoly::var(0)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::from_int(n)
    }

    #[test]
    fn single_relation() {
        let x = MultiPoly::var(1);
        let m = PolyMatrix::from_rows(vec![vec![x.clone(), c(-1)]]).unwrap();
        assert_eq!(nullspace(&m), vec![vec![c(1), x]]);
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let rows = (0..3)
            .map(|i| (0..3).map(|j| c((i == j) as i64)).collect())
            .collect();
        assert!(nullspace(&PolyMatrix::from_rows(rows).unwrap()).is_empty());
    }

    #[test]
    fn two_by_three() {
        let m = PolyMatrix::from_rows(vec![
            vec![c(1), q(), c(0)],
            vec![c(0), q(), q().pow(2)],
        ])
        .unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![q().pow(2), -&q(), c(1)]]);
    }

    #[test]
    fn rank_deficient_rows() {
        // Second row is q times the first; nullity 2.
        let r1 = vec![c(1), q(), &q() + &c(1)];
        let r2: Vec<MultiPoly> = r1.iter().map(|e| e * &q()).collect();
        let m = PolyMatrix::from_rows(vec![r1, r2]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn zero_matrix_gives_unit_vectors() {
        let m = PolyMatrix::zeros(2, 2);
        assert_eq!(nullspace(&m), vec![vec![c(1), c(0)], vec![c(0), c(1)]]);
    }

    #[test]
    fn normalization_removes_content() {
        let v = vec![q().scale(&rat(-4)), (&q() * &q()).scale(&rat(6))];
        assert_eq!(normalize_vector(v), vec![c(2), q().scale(&rat(-3))]);
    }
}
