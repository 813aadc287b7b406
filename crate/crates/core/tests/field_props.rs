use proptest::prelude::*;
use yangian_core::field::{rat, Monomial, Polynomial, RationalFunction, Var};

const VARS: [Var; 4] = [Var::U, Var::V, Var::W, Var::H];

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::array::uniform4(0u16..3), -4i64..5, 1i64..4),
        0..4,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(ex, n, d)| {
            let mut m = Monomial::one();
            for (v, e) in VARS.iter().zip(ex) {
                m = m.mul(&Monomial::var_pow(*v, e));
            }
            (m, rat(n, d))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b), Some(a));
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), f in nonzero_poly()) {
        let (x, y) = (&a * &f, &b * &f);
        let g = yangian_core::field::gcd(&x, &y);
        prop_assert!(x.div_exact(&g).is_some());
        prop_assert!(y.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&f.monic()).is_some());
    }

    #[test]
    fn canonical_equality_matches_cross_multiplication(
        a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()
    ) {
        let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let y = RationalFunction::new(c.clone(), d.clone()).unwrap();
        let cross = (&(&a * &d) - &(&c * &b)).is_zero();
        prop_assert_eq!(x == y, cross);
    }

    #[test]
    fn scaled_representatives_coincide(a in poly(), b in nonzero_poly(), s in nonzero_poly()) {
        let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let y = RationalFunction::new(&a * &s, &b * &s).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn power_denominators_reduce_like_general_ones(
        a in poly(), f in nonzero_poly(), base in nonzero_poly(), e in 1u32..4
    ) {
        let num = &a * &f;
        let den = &base.pow(e) * &f;
        let via_base = RationalFunction::over_power_of(num.clone(), den.clone(), &(&base * &f)).unwrap();
        prop_assert_eq!(via_base, RationalFunction::new(num, den).unwrap());
    }

    #[test]
    fn field_axioms(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }

    #[test]
    fn shift_round_trip(x in ratfunc(), s in poly()) {
        let s = s.substitute_poly(Var::U, &Polynomial::zero());
        let s = RationalFunction::from(s);
        let there = x.shift(Var::U, &s).unwrap();
        let back = there.shift(Var::U, &(-&s)).unwrap();
        prop_assert_eq!(back, x);
    }
}
