use proptest::prelude::*;
use yangian_core::field::{RationalFunction, Var};
use yangian_core::grade::GradedMatrix;
use yangian_core::modealg::{
    extract_all_components, extract_mode_relations, ideal_membership, ideal_suite,
    parse_free_element, relation_elements, specialize_to_rep, standard_candidates,
    tampered_relation, verify_certificate, Family, FreeElement, FreeWord, Membership,
    ModeGenerator, ModeOperators, DEFAULT_CAP,
};

fn plus_plus() -> Vec<FreeElement> {
    relation_elements(&extract_mode_relations(Family::PlusPlus, 2))
}

#[test]
fn lowest_diagonal_component_is_trivial() {
    let all = extract_all_components(Family::PlusPlus, 1);
    let lowest = all
        .iter()
        .filter(|r| r.component == ((1, 1), (1, 1)))
        .min_by_key(|r| (-r.exponents.0, -r.exponents.1))
        .unwrap();
    assert!(lowest.element.is_zero());
}

#[test]
fn extracted_relations_vanish_on_the_evaluation_module() {
    let ops = ModeOperators::evaluation(Var::W, 3).unwrap();
    for family in Family::ALL {
        for n in 1..=3 {
            for r in extract_mode_relations(family, n) {
                let m = specialize_to_rep(&r.element, &ops).unwrap();
                assert!(m.is_zero(), "{}", r.label());
            }
        }
    }
}

#[test]
fn zero_element_specializes_to_zero() {
    let ops = ModeOperators::evaluation(Var::W, 1).unwrap();
    assert!(specialize_to_rep(&FreeElement::zero(), &ops).unwrap().is_zero());
}

#[test]
fn out_of_window_generator_is_reported() {
    let ops = ModeOperators::evaluation(Var::W, 1).unwrap();
    let e = parse_free_element("l11^5").unwrap();
    assert_eq!(specialize_to_rep(&e, &ops).unwrap_err(), ModeGenerator::new(1, 1, 5));
}

#[test]
fn relations_are_parity_homogeneous() {
    for family in Family::ALL {
        for r in extract_mode_relations(family, 2) {
            assert_eq!(r.element.parities().len(), 1, "{}", r.label());
        }
    }
}

#[test]
fn mixed_relations_carry_central_corrections() {
    let rels = extract_mode_relations(Family::PlusMinus, 2);
    assert!(rels
        .iter()
        .any(|r| r.element.terms.values().any(|c| c.contains(Var::C))));
}

#[test]
fn commutators_of_l11_modes_are_members() {
    let rels = plus_plus();
    for (m, p) in [(0, 1), (0, 2), (1, 2)] {
        let cand = parse_free_element(&format!("[l11^{m}, l11^{p}]")).unwrap();
        match ideal_membership(&cand, &rels, 2, DEFAULT_CAP) {
            Membership::Member(cert) => assert!(verify_certificate(&cert, &rels, &cand)),
            other => panic!("[{m},{p}] {other:?}"),
        }
    }
}

#[test]
fn odd_squares_are_members() {
    let rels = plus_plus();
    for text in ["l12^0*l12^0", "l21^0*l21^0", "1/2*{l12^0, l12^0}"] {
        let cand = parse_free_element(text).unwrap();
        assert!(matches!(ideal_membership(&cand, &rels, 2, DEFAULT_CAP), Membership::Member(_)), "{text}");
    }
}

#[test]
fn degree_one_generator_is_not_a_member() {
    let rels = plus_plus();
    let cand = parse_free_element("l11^0").unwrap();
    match ideal_membership(&cand, &rels, 2, DEFAULT_CAP) {
        Membership::NotMember(res) => assert_eq!(res, cand),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cap_refuses_large_bases() {
    let rels = plus_plus();
    let cand = parse_free_element("l11^0*l11^1*l11^2").unwrap();
    assert!(matches!(
        ideal_membership(&cand, &rels, 4, 100),
        Membership::Refused { cap: 100, .. }
    ));
}

#[test]
fn standard_suites_pass() {
    for family in Family::ALL {
        for r in ideal_suite(family, 2, 2, DEFAULT_CAP) {
            assert!(r.passed(), "{:?}", r);
        }
    }
    assert_eq!(
        standard_candidates(Family::PlusPlus, 2).iter().filter(|c| c.2).count(),
        5
    );
}

#[test]
fn bumped_coefficient_is_detected() {
    let (t, m) = tampered_relation(Family::PlusPlus, 2).unwrap();
    assert!(!m.is_zero());
    let ops = ModeOperators::evaluation(Var::W, 2).unwrap();
    assert_eq!(specialize_to_rep(&t.element, &ops).unwrap(), m);
    assert_ne!(m, GradedMatrix::zero_square(m.rows()));
}

#[test]
fn word_order_is_length_then_lexicographic() {
    let w = |gs: &[(u8, u8, i64)]| FreeWord(gs.iter().map(|&(i, j, k)| ModeGenerator::new(i, j, k)).collect());
    assert!(w(&[(2, 2, 5)]) < w(&[(1, 1, 0), (1, 1, 0)]));
    assert!(w(&[(1, 1, 1)]) < w(&[(1, 2, 0)]));
    assert!(w(&[(1, 1, 0), (2, 1, 0)]) < w(&[(1, 2, 0), (1, 1, 0)]));
}

fn generator() -> impl Strategy<Value = ModeGenerator> {
    (1u8..3, 1u8..3, 0i64..3).prop_map(|(i, j, k)| ModeGenerator::new(i, j, k))
}

fn element() -> impl Strategy<Value = FreeElement> {
    prop::collection::vec((prop::collection::vec(generator(), 0..3), -3i64..4), 0..4).prop_map(|terms| {
        let mut e = FreeElement::zero();
        for (w, c) in terms {
            e.add_term(FreeWord(w), RationalFunction::from_int(c));
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_reexpand_to_the_candidate(
        picks in prop::collection::vec((0usize..90, -2i64..3), 1..4)
    ) {
        let rels = plus_plus();
        let mut cand = FreeElement::zero();
        for (i, c) in picks {
            cand = cand.plus(&rels[i % rels.len()].scaled(&RationalFunction::from_int(c)));
        }
        match ideal_membership(&cand, &rels, 2, DEFAULT_CAP) {
            Membership::Member(cert) => prop_assert!(verify_certificate(&cert, &rels, &cand)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn rendering_round_trips(e in element()) {
        let text = e.to_string();
        let back = parse_free_element(&text).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn free_multiplication_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
    }
}
