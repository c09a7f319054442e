mod vars {
    use qrec_core::qterm::vars::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};

    fn table() -> VarTable {
        VarTable::new(
            vec![
                ("L".into(), SymbolClass::Rec),
                ("i".into(), SymbolClass::Sum),
                ("alpha".into(), SymbolClass::Ground),
                ("k".into(), SymbolClass::Param),
                ("M".into(), SymbolClass::Rec),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn generator_layout() {
        let t = table();
        assert_eq!(t.gen_names(), &["q", "L", "M", "k", "alpha", "i"]);
        assert_eq!(t.elim_gens(), 5..6);
        assert_eq!(t.shift_index("M"), Some(1));
        assert_eq!(t.shift_index("i"), Some(2));
        assert_eq!(t.shift_index("k"), None);
        assert_eq!(t.shift_symbol(2), "i");
    }

    #[test]
    fn rec_order_override() {
        let t = VarTable::new(
            vec![("L".into(), SymbolClass::Rec), ("M".into(), SymbolClass::Rec)],
            Some(&["M".to_string(), "L".to_string()]),
        )
        .unwrap();
        assert_eq!(t.rec_vars(), &["M", "L"]);
        assert!(VarTable::new(vec![("L".into(), SymbolClass::Rec)], Some(&["X".to_string()])).is_err());
    }

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert!(VarTable::new(vec![("q".into(), SymbolClass::Rec)], None).is_err());
        assert!(VarTable::new(
            vec![("x".into(), SymbolClass::Rec), ("x".into(), SymbolClass::Sum)],
            None
        )
        .is_err());
    }
}

mod linform {
    use qrec_core::qterm::linform::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};
    use qrec_core::algebra::rational::rat2;

    #[test]
    fn parse_forms() {
        let f = LinForm::parse("L1 - t + a").unwrap();
        assert_eq!(f.coeff("L1"), rat(1));
        assert_eq!(f.coeff("t"), rat(-1));
        assert_eq!(f.coeff("a"), rat(1));
        let g = LinForm::parse("2*i + 3 - j").unwrap();
        assert_eq!(g.coeff("i"), rat(2));
        assert_eq!(*g.constant_part(), rat(3));
        let h = LinForm::parse("-1/2 x").unwrap();
        assert_eq!(h.coeff("x"), rat2(-1, 2));
        assert_eq!(LinForm::parse("i+j-1").unwrap().to_string(), "i + j - 1");
        assert_eq!(LinForm::parse("Delta + i + j").unwrap().coeff("Delta"), rat(1));
        assert!(LinForm::parse("").is_err());
        assert!(LinForm::parse("i j").is_err());
        assert!(LinForm::parse("* i").is_err());
    }

    #[test]
    fn substitution_and_cancellation() {
        let t = LinForm::parse("a + b + ab").unwrap();
        let a = LinForm::parse("i - ab - ac").unwrap();
        let r = t.substitute("a", &a);
        assert_eq!(r, LinForm::parse("i + b - ac").unwrap());
        assert_eq!(LinForm::parse("x - x").unwrap(), LinForm::zero());
        assert_eq!(LinForm::zero().to_string(), "0");
    }
}

mod parse {
    use qrec_core::qterm::parse::*;
    #[allow(unused_imports)]
    use qrec_core::{algebra::*, qterm::*, Error};

    #[test]
    fn constant_summand() {
        let s = parse_summand(r#"{"variables": [{"name": "n", "class": "rec"}]}"#).unwrap();
        assert!(s.factors.is_empty());
        assert!(s.tail.is_constant());
    }

    #[test]
    fn unknown_symbol_rejected() {
        let doc = r#"{"variables": [{"name": "n", "class": "rec"}],
                      "factors": [{"kind": "qbinom", "top": "n", "bottom": "m"}]}"#;
        assert!(matches!(parse_summand(doc), Err(Error::UnknownSymbol(s)) if s == "m"));
    }

    #[test]
    fn non_integer_shift_rejected() {
        let doc = r#"{"variables": [{"name": "n", "class": "rec"}],
                      "factors": [{"kind": "qbinom", "top": "1/2 n", "bottom": "0"}]}"#;
        assert!(matches!(parse_summand(doc), Err(Error::NonInteger(_))));
        let doc = r#"{"variables": [{"name": "n", "class": "rec"}],
                      "factors": [{"kind": "qpow", "exponent": [{"prod": ["n", "n"], "coef": "1/2"}]}]}"#;
        assert!(matches!(parse_summand(doc), Err(Error::NonInteger(_))));
    }

    #[test]
    fn malformed_tail_rejected() {
        let doc = r#"{"variables": [{"name": "n", "class": "rec"}],
                      "tail": {"op": "div", "args": ["1"]}}"#;
        assert!(matches!(parse_summand(doc), Err(Error::MalformedTail(_))));
        let doc = r#"{"variables": [{"name": "n", "class": "rec"}],
                      "tail": {"op": "pow", "args": ["1", "2"]}}"#;
        assert!(matches!(parse_summand(doc), Err(Error::MalformedTail(_))));
    }

    #[test]
    fn object_linforms_and_substitutions() {
        let doc = r#"{"variables": [{"name": "n", "class": "rec"}, {"name": "k", "class": "sum"}],
                      "substitutions": [{"name": "m", "linform": {"coeffs": {"n": "1", "k": "-1"}, "const": "0"}},
                                        {"name": "p", "linform": "m + 1"}],
                      "factors": [{"kind": "qbinom", "top": "p", "bottom": "k"}]}"#;
        let s = parse_summand(doc).unwrap();
        match &s.factors[0] {
            Factor::QBinom { top, .. } => assert_eq!(*top, LinForm::parse("n - k + 1").unwrap()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn substitution_flag() {
        let (n, l) = parse_substitution("L2=i+j-1").unwrap();
        assert_eq!(n, "L2");
        assert_eq!(l, LinForm::parse("i + j - 1").unwrap());
        assert!(parse_substitution("L2").is_err());
        assert!(parse_substitution("=i").is_err());
    }
}
