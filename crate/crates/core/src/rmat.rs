//! The rational R-matrix of gl(1|1) and its structural checks.

use crate::field::{RationalFunction, Var};
use crate::grade::{eta_twist, super_permutation, GradedMatrix, GradedSpace};
use crate::report::{timed, CheckReport, Witness};

/// An R-matrix on `V⊗V` as a function of one spectral variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub var: Var,
    pub matrix: GradedMatrix,
}

/// `R(x) = (x I + ħ P) / (x + ħ)` for an arbitrary argument `x`.
pub fn r_matrix_at(x: &RationalFunction) -> GradedMatrix {
    let v = GradedSpace::gl11();
    let h = RationalFunction::var(Var::H);
    let d = x + &h;
    let a = x / &d;
    let b = &h / &d;
    let c = &(x - &h) / &d;
    let one = RationalFunction::one();
    let z = RationalFunction::zero();
    GradedMatrix::from_rows(
        &v.tensor(&v),
        vec![
            vec![one, z.clone(), z.clone(), z.clone()],
            vec![z.clone(), a.clone(), b.clone(), z.clone()],
            vec![z.clone(), b, a, z.clone()],
            vec![z.clone(), z.clone(), z, c],
        ],
    )
}

pub fn build_r(var: Var) -> RMatrix {
    RMatrix {
        var,
        matrix: r_matrix_at(&RationalFunction::var(var)),
    }
}

impl RMatrix {
    /// The matrix with its spectral variable replaced by `x`.
    pub fn at(&self, x: &RationalFunction) -> GradedMatrix {
        self.matrix
            .substitute(&[(self.var, x.clone())])
            .expect("R-matrix entries stay finite under the substitution")
    }
}

/// Basis label of `V⊗...⊗V` index `idx` with `legs` factors, e.g. `(12)`.
pub fn basis_label(idx: usize, legs: u32) -> String {
    let mut s = String::from("(");
    for k in (0..legs).rev() {
        let bit = (idx >> k) & 1;
        s.push(if bit == 0 { '1' } else { '2' });
    }
    s.push(')');
    s
}

/// Embeds a `V⊗V` operator on legs `a < b` of `V⊗V⊗V`, without signs.
pub fn embed_legs(m: &GradedMatrix, a: usize, b: usize) -> GradedMatrix {
    let v = GradedSpace::gl11();
    let vvv = v.tensor(&v).tensor(&v);
    let c = 3 - a - b;
    let mut out = GradedMatrix::zero_square(&vvv);
    for (row, col, x) in m.entries() {
        let (ra, rb) = (row >> 1, row & 1);
        let (ca, cb) = (col >> 1, col & 1);
        for z in 0..2 {
            let mut r = 0;
            let mut s = 0;
            for (leg, (rv, cv)) in [(a, (ra, ca)), (b, (rb, cb)), (c, (z, z))] {
                r |= rv << (2 - leg);
                s |= cv << (2 - leg);
            }
            out.set(r, s, x.clone());
        }
    }
    out
}

fn first_mismatch(lhs: &GradedMatrix, rhs: &GradedMatrix, legs: u32) -> Option<Witness> {
    lhs.first_difference(rhs).map(|(i, j)| {
        Witness::new(
            format!("{},{}", basis_label(i, legs), basis_label(j, legs)),
            lhs.get(i, j),
            rhs.get(i, j),
        )
    })
}

/// Both sides of the graded Yang-Baxter equation on `V⊗V⊗V`.
pub fn sybe_sides(r: &RMatrix) -> (GradedMatrix, GradedMatrix) {
    let u = RationalFunction::var(Var::U);
    let v = RationalFunction::var(Var::V);
    let eta = eta_twist(&GradedSpace::gl11());
    let factor = |x: &RationalFunction, a: usize, b: usize| {
        &embed_legs(&eta, a, b) * &embed_legs(&r.at(x), a, b)
    };
    let r12 = factor(&u, 0, 1);
    let r13 = factor(&(&u + &v), 0, 2);
    let r23 = factor(&v, 1, 2);
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    (lhs, rhs)
}

pub fn check_sybe(r: &RMatrix) -> CheckReport {
    timed(|| {
        let (lhs, rhs) = sybe_sides(r);
        CheckReport::from_witness("ybe", first_mismatch(&lhs, &rhs, 3))
    })
}

/// `R_21 = P R P` with the super permutation.
pub fn r21(m: &GradedMatrix) -> GradedMatrix {
    let p = super_permutation(&GradedSpace::gl11());
    &(&p * m) * &p
}

pub fn check_unitarity(r: &RMatrix) -> CheckReport {
    timed(|| {
        let u = RationalFunction::var(r.var);
        let prod = &r.at(&u) * &r21(&r.at(&-&u));
        let id = GradedMatrix::identity(prod.rows());
        CheckReport::from_witness("unitarity", first_mismatch(&prod, &id, 2))
    })
}

pub fn check_weight_conservation(r: &RMatrix) -> CheckReport {
    timed(|| {
        let offending = r.matrix.entries().find(|(row, col, _)| {
            let (i, j) = (row >> 1, row & 1);
            let (k, l) = (col >> 1, col & 1);
            i + j != k + l
        });
        let witness = offending.map(|(row, col, x)| {
            Witness::new(
                format!("{},{}", basis_label(row, 2), basis_label(col, 2)),
                x,
                "0",
            )
        });
        CheckReport::from_witness("weight", witness)
    })
}

/// The R-matrix with the sign of its `(22),(22)` entry flipped.
pub fn tampered_r(var: Var) -> RMatrix {
    let mut r = build_r(var);
    let x = r.matrix.get(3, 3);
    r.matrix.set(3, 3, -&x);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> RationalFunction {
        RationalFunction::var(Var::H)
    }

    #[test]
    fn corner_entry() {
        let r = build_r(Var::U);
        assert_eq!(r.matrix.get(3, 3).to_string(), "(u - h)/(u + h)");
    }

    #[test]
    fn zero_argument_gives_permutation() {
        let r = build_r(Var::U);
        let p = r.at(&RationalFunction::zero());
        assert_eq!(p, super_permutation(&GradedSpace::gl11()));
    }

    #[test]
    fn r_minus_identity_vanishes_at_infinity() {
        let r = build_r(Var::U);
        let d = &r.matrix - &GradedMatrix::identity(r.matrix.rows());
        for (_, _, x) in d.entries() {
            assert!(x.numerator().degree_in(Var::U) < x.denominator().degree_in(Var::U));
        }
    }

    #[test]
    fn ybe_holds() {
        assert!(check_sybe(&build_r(Var::U)).passed());
    }

    #[test]
    fn tampered_corner_breaks_ybe() {
        let mut r = build_r(Var::U);
        r.matrix.set(3, 3, RationalFunction::one());
        let rep = check_sybe(&r);
        assert!(!rep.passed());
        assert!(rep.witness.is_some());
    }

    #[test]
    fn classical_limit_solves_ybe() {
        let r = build_r(Var::U);
        let m = r.matrix.substitute(&[(Var::H, RationalFunction::zero())]).unwrap();
        assert!(m.is_identity());
        assert!(check_sybe(&RMatrix { var: Var::U, matrix: m }).passed());
    }

    #[test]
    fn unitarity_holds_and_scaling_breaks_it() {
        let r = build_r(Var::U);
        assert!(check_unitarity(&r).passed());
        let u = RationalFunction::var(Var::U);
        let s = &u / &(&u + &h());
        let scaled = RMatrix {
            var: Var::U,
            matrix: r.matrix.scale(&s),
        };
        let rep = check_unitarity(&scaled);
        assert!(!rep.passed());
        assert_eq!(rep.witness.unwrap().location, "(11),(11)");
    }

    #[test]
    fn weight_conservation() {
        assert!(check_weight_conservation(&build_r(Var::U)).passed());
        let v = GradedSpace::gl11();
        let vv = v.tensor(&v);
        let zero = RMatrix {
            var: Var::U,
            matrix: GradedMatrix::zero_square(&vv),
        };
        assert!(check_weight_conservation(&zero).passed());
        let mut bad = zero.clone();
        bad.matrix.set(0, 1, RationalFunction::one());
        let rep = check_weight_conservation(&bad);
        assert_eq!(rep.witness.unwrap().location, "(11),(12)");
    }
}
