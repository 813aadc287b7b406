use yangian_core::field::RationalFunction;
use yangian_core::grade::{eta_twist, graded_kron, super_permutation, GradedMatrix, GradedSpace};

fn units() -> Vec<GradedMatrix> {
    let v = GradedSpace::gl11();
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            out.push(GradedMatrix::unit(&v, i, j));
        }
    }
    out
}

#[test]
fn mixed_product_law_on_all_unit_quadruples() {
    let us = units();
    for a in &us {
        for b in &us {
            for c in &us {
                for d in &us {
                    let lhs = &graded_kron(a, b) * &graded_kron(c, d);
                    let rhs = graded_kron(&(a * c), &(b * d));
                    let sign = b.parity().unwrap() * c.parity().unwrap();
                    let rhs = if sign == 1 { -&rhs } else { rhs };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn kron_is_associative() {
    let us = units();
    for a in &us {
        for b in &us {
            for c in &us {
                let left = graded_kron(&graded_kron(a, b), c);
                let right = graded_kron(a, &graded_kron(b, c));
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn involutions() {
    let v = GradedSpace::gl11();
    let p = super_permutation(&v);
    let eta = eta_twist(&v);
    assert!((&p * &p).is_identity());
    assert!((&eta * &eta).is_identity());
}

#[test]
fn super_transpose_twice_is_identity_on_units() {
    for u in units() {
        let m = u.scale(&RationalFunction::from_int(3));
        assert_eq!(m.super_transpose().super_transpose(), m);
    }
}
