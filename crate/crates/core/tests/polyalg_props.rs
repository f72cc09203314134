mod common;

use common::{any_poly, expand, factored, homogeneous, proportional, small_form};
use orbipencil::polyalg::{gcd, kth_power_root, parse_poly, parse_poly_in, squarefree_decomposition, Poly, QSqrt3};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(f in any_poly()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn gcd_divides_both(f in homogeneous(2, 4), g in homogeneous(2, 4), h in homogeneous(1, 3)) {
        let (a, b) = (&f * &h, &g * &h);
        let d = gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&d).is_some());
        prop_assert!(b.div_exact(&d).is_some());
        // the common factor survives
        prop_assert!(d.div_exact(&h).is_some());
    }

    #[test]
    fn squarefree_reconstruction((fs, unit) in factored()) {
        let input = expand(&fs, &unit);
        let sq = squarefree_decomposition(&input).unwrap();
        prop_assert_eq!(sq.expand(), input);
        for w in sq.factors.windows(2) {
            prop_assert!(w[0].1 < w[1].1);
            prop_assert!(gcd(&w[0].0, &w[1].0).unwrap().is_constant());
        }
    }

    #[test]
    fn kth_root_recovers(f in small_form(), k in prop::sample::select(vec![2u32, 3, 5])) {
        let fk = f.pow(k);
        let h = kth_power_root(&fk, k).unwrap().expect("a k-th power has a root");
        prop_assert!(proportional(&h.pow(k), &fk));
    }

    #[test]
    fn homogeneous_arithmetic(f in homogeneous(2, 4), g in homogeneous(2, 4), h in homogeneous(3, 4)) {
        let s = &f + &g;
        prop_assert!(s.is_zero() || (s.is_homogeneous() && s.degree() == Some(2)));
        let p = &f * &h;
        prop_assert!(p.is_homogeneous());
        prop_assert_eq!(p.degree(), Some(5));
        prop_assert_eq!(h.pow(2).degree(), Some(6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_round_trip(ts in proptest::collection::vec(((0u32..3, 0u32..3), -5i64..=5, -5i64..=5), 1..5)) {
        let text = ts
            .iter()
            .map(|((i, j), a, b)| format!("({a} + {b}*u)*x^{i}*y^{j}"))
            .collect::<Vec<_>>()
            .join(" + ");
        let f: Poly<QSqrt3> = parse_poly_in(&text).unwrap();
        prop_assert_eq!(parse_poly_in::<QSqrt3>(&f.to_string()).unwrap(), f);
    }
}
