use proptest::prelude::*;
use yangian_core::dist::{
    delta_coefficient, delta_pairing, expand_at_infinity, expand_at_zero, series_mul,
    TruncatedSeries,
};
use yangian_core::field::{RationalFunction, Var};

fn x(v: Var) -> RationalFunction {
    RationalFunction::var(v)
}

fn k(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

/// `u - a·w - b·ħ`, never vanishing at `u = 0`.
fn linear() -> impl Strategy<Value = RationalFunction> {
    (-2i64..3, -2i64..3)
        .prop_filter("depends on w or hbar", |&(a, b)| a != 0 || b != 0)
        .prop_map(|(a, b)| &(&x(Var::U) - &(&k(a) * &x(Var::W))) - &(&k(b) * &x(Var::H)))
}

/// `p(u) / Π(linear factors)` with a small numerator.
fn rational() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(-2i64..3, 1..3),
        prop::collection::vec(linear(), 0..3),
    )
        .prop_map(|(num, dens)| {
            let mut p = k(0);
            for (e, c) in num.iter().enumerate() {
                p = &p + &(&k(*c) * &x(Var::U).pow(e as i32).unwrap());
            }
            dens.iter().fold(p, |acc, d| &acc / d)
        })
}

#[test]
fn two_regions_differ_by_delta_on_the_standard_window() {
    let w = x(Var::W);
    let f = k(1) / (&x(Var::U) - &w);
    let d = expand_at_infinity(&f, Var::U, 8)
        .unwrap()
        .sub(&expand_at_zero(&f, Var::U, 7).unwrap());
    for m in -8..=7 {
        let want = w.pow(-(m as i32) - 1).unwrap();
        assert_eq!(d.coeff(m), Some(Some(&want)), "mode {m}");
    }
    assert_eq!(d.coeff(8), None);
    assert_eq!(d.coeff(-9), None);
}

#[test]
fn delta_pairing_follows_the_antidiagonal() {
    let one = TruncatedSeries::laurent(Var::U, [(0, k(1))].into_iter().collect());
    let t = delta_pairing(&one, 4);
    for m in -4..=4 {
        for p in -4..=4 {
            let got = t.get(m, p).unwrap().cloned().unwrap_or_else(|| k(0));
            assert_eq!(got, k(delta_coefficient(m, p)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shifted_pole_gives_shifted_delta(a in -3i64..4, b in -3i64..4) {
        let point = &(&k(a) * &x(Var::H)) + &(&k(b) * &x(Var::W));
        prop_assume!(!point.is_zero());
        let f = k(1) / (&x(Var::U) - &point);
        let d = expand_at_infinity(&f, Var::U, 4)
            .unwrap()
            .sub(&expand_at_zero(&f, Var::U, 3).unwrap());
        for m in -4..=3 {
            prop_assert_eq!(d.coeff(m), Some(Some(&point.pow(-(m as i32) - 1).unwrap())));
        }
    }

    #[test]
    fn product_of_expansions_is_expansion_of_product(f in rational(), g in rational(), n in 1i64..5) {
        for (s, t, fg) in [
            (
                expand_at_infinity(&f, Var::U, n).unwrap(),
                expand_at_infinity(&g, Var::U, n).unwrap(),
                expand_at_infinity(&(&f * &g), Var::U, 3 * n + 6).unwrap(),
            ),
            (
                expand_at_zero(&f, Var::U, n).unwrap(),
                expand_at_zero(&g, Var::U, n).unwrap(),
                expand_at_zero(&(&f * &g), Var::U, 2 * n + 2).unwrap(),
            ),
        ] {
            let p = series_mul(&s, &t).unwrap();
            let mut known = 0;
            for m in -3 * n - 6..=2 * n + 2 {
                if let Some(c) = p.coeff(m) {
                    known += 1;
                    prop_assert_eq!(c, fg.coeff(m).unwrap(), "mode {}", m);
                }
            }
            prop_assert!(known > 0);
        }
    }

    #[test]
    fn longer_expansions_extend_shorter_ones(f in rational(), n in 0i64..4, extra in 1i64..4) {
        let short = expand_at_infinity(&f, Var::U, n).unwrap();
        let long = expand_at_infinity(&f, Var::U, n + extra).unwrap();
        let short_z = expand_at_zero(&f, Var::U, n).unwrap();
        let long_z = expand_at_zero(&f, Var::U, n + extra).unwrap();
        for m in -n - extra - 4..=n + extra + 4 {
            if let Some(c) = short.coeff(m) {
                prop_assert_eq!(Some(c), long.coeff(m));
            }
            if let Some(c) = short_z.coeff(m) {
                prop_assert_eq!(Some(c), long_z.coeff(m));
            }
        }
        prop_assert!(long.coeff(-n - extra).is_some() && short.coeff(-n - extra).is_none());
    }

    #[test]
    fn laurent_polynomials_expand_identically(cs in prop::collection::vec(-3i64..4, 1..4)) {
        let mut f = k(0);
        for (e, c) in cs.iter().enumerate() {
            f = &f + &(&k(*c) * &x(Var::U).pow(e as i32).unwrap());
        }
        let d = expand_at_infinity(&f, Var::U, 6)
            .unwrap()
            .sub(&expand_at_zero(&f, Var::U, 6).unwrap());
        prop_assert_eq!(d.terms().count(), 0);
    }
}
