//! Evaluation representations of the L-operators at level zero, their Gauss
//! decomposition into currents, and the two-site coproduct.

use crate::field::{FieldError, RationalFunction, Var};
use crate::grade::{eta_twist, graded_kron, kron, GradeError, GradedMatrix, GradedSpace};
use crate::report::{timed, CheckReport, Witness};
use crate::rmat::r_matrix_at;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Grade(#[from] GradeError),
}

/// Which generating series an operator stands for. At level zero both share
/// one rational matrix and differ only in how they are expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A 2×2 auxiliary matrix whose entries act on a quantum space, as functions
/// of the spectral variable `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LOperator {
    pub entries: [[GradedMatrix; 2]; 2],
    pub quantum: GradedSpace,
    pub sign: Sign,
}

impl LOperator {
    pub fn entry(&self, i: usize, j: usize) -> &GradedMatrix {
        &self.entries[i][j]
    }

    pub fn identity_operator(&self) -> GradedMatrix {
        GradedMatrix::identity(&self.quantum)
    }

    fn map<F>(&self, mut f: F) -> Result<LOperator, EvalError>
    where
        F: FnMut(&GradedMatrix) -> Result<GradedMatrix, EvalError>,
    {
        let e = &self.entries;
        Ok(LOperator {
            entries: [
                [f(&e[0][0])?, f(&e[0][1])?],
                [f(&e[1][0])?, f(&e[1][1])?],
            ],
            quantum: self.quantum.clone(),
            sign: self.sign,
        })
    }

    /// The operator with `u` replaced by `x`.
    pub fn at(&self, x: &RationalFunction) -> Result<LOperator, EvalError> {
        let b = [(Var::U, x.clone())];
        self.map(|m| Ok(m.substitute(&b)?))
    }

    /// The operator as one matrix on `V⊗W`, `(L)_{(ia),(jb)} = (l_ij)_ab`.
    pub fn as_matrix(&self) -> GradedMatrix {
        let d = self.quantum.dim();
        let vw = GradedSpace::gl11().tensor(&self.quantum);
        let mut out = GradedMatrix::zero_square(&vw);
        for i in 0..2 {
            for j in 0..2 {
                for (a, b, x) in self.entries[i][j].entries() {
                    out.set(i * d + a, j * d + b, x.clone());
                }
            }
        }
        out
    }

    pub fn from_matrix(m: &GradedMatrix, quantum: GradedSpace, sign: Sign) -> LOperator {
        let d = quantum.dim();
        let block = |i: usize, j: usize| {
            let mut b = GradedMatrix::zero_square(&quantum);
            for a in 0..d {
                for c in 0..d {
                    b.set(a, c, m.get(i * d + a, j * d + c));
                }
            }
            b
        };
        LOperator {
            entries: [[block(0, 0), block(0, 1)], [block(1, 0), block(1, 1)]],
            quantum: quantum.clone(),
            sign,
        }
    }

    /// Copy with one entry negated, for perturbation tests.
    pub fn with_negated_entry(&self, i: usize, j: usize) -> LOperator {
        let mut out = self.clone();
        out.entries[i][j] = -&out.entries[i][j];
        out
    }

    /// `(st L)_ij = (-1)^{i+j} l_ji`.
    pub fn super_transpose(&self) -> LOperator {
        let e = &self.entries;
        LOperator {
            entries: [[e[0][0].clone(), -&e[1][0]], [-&e[0][1], e[1][1].clone()]],
            quantum: self.quantum.clone(),
            sign: self.sign,
        }
    }

    pub fn mul(&self, rhs: &LOperator) -> LOperator {
        let (a, b) = (&self.entries, &rhs.entries);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        LOperator {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            quantum: self.quantum.clone(),
            sign: self.sign,
        }
    }

    pub fn is_identity(&self) -> bool {
        let e = &self.entries;
        e[0][0].is_identity() && e[1][1].is_identity() && e[0][1].is_zero() && e[1][0].is_zero()
    }

    /// First auxiliary entry where two operators differ.
    pub fn first_difference(&self, other: &LOperator) -> Option<Witness> {
        for i in 0..2 {
            for j in 0..2 {
                let (a, b) = (&self.entries[i][j], &other.entries[i][j]);
                if let Some((r, c)) = a.first_difference(b) {
                    return Some(Witness::new(
                        format!("l{}{}[{},{}]", i + 1, j + 1, r, c),
                        a.get(r, c),
                        b.get(r, c),
                    ));
                }
            }
        }
        None
    }
}

/// The evaluation module at point `w`: `(l_ij(u))_ab = R_{(ia),(jb)}(u - w)`.
pub fn build_eval_l(w: Var) -> LOperator {
    let x = &RationalFunction::var(Var::U) - &RationalFunction::var(w);
    let r = r_matrix_at(&x);
    LOperator::from_matrix(&r, GradedSpace::gl11(), Sign::Plus)
}

/// The one-dimensional representation `l_ij = δ_ij`, i.e. the counit.
pub fn trivial_l() -> LOperator {
    let t = GradedSpace::trivial();
    let one = GradedMatrix::identity(&t);
    let zero = GradedMatrix::zero_square(&t);
    LOperator {
        entries: [[one.clone(), zero.clone()], [zero, one]],
        quantum: t,
        sign: Sign::Plus,
    }
}

/// `Δ(l_ij) = Σ_k (-1)^{(k+i)(k+j)} l_kj ⊗ l_ik`, first factor from `a`.
pub fn coproduct(a: &LOperator, b: &LOperator) -> LOperator {
    let quantum = a.quantum.tensor(&b.quantum);
    let entry = |i: usize, j: usize| {
        let mut acc = GradedMatrix::zero_square(&quantum);
        for k in 0..2 {
            let t = graded_kron(&a.entries[k][j], &b.entries[i][k]);
            acc = if ((k + i) * (k + j)) % 2 == 1 { &acc - &t } else { &acc + &t };
        }
        acc
    };
    LOperator {
        entries: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        quantum: quantum.clone(),
        sign: a.sign,
    }
}

/// The two-site operator built from evaluation modules at `w1` and `w2`.
pub fn two_site_l(w1: Var, w2: Var) -> LOperator {
    coproduct(&build_eval_l(w1), &build_eval_l(w2))
}

/// `L_1` and `L_2` on `V⊗V⊗W`, placed without signs.
pub fn leg_operators(l: &LOperator) -> (GradedMatrix, GradedMatrix) {
    let d = l.quantum.dim();
    let v = GradedSpace::gl11();
    let space = v.tensor(&v).tensor(&l.quantum);
    let mut l1 = GradedMatrix::zero_square(&space);
    let mut l2 = GradedMatrix::zero_square(&space);
    let idx = |i: usize, k: usize, a: usize| (i * 2 + k) * d + a;
    for i in 0..2 {
        for j in 0..2 {
            for (a, b, x) in l.entries[i][j].entries() {
                for k in 0..2 {
                    l1.set(idx(i, k, a), idx(j, k, b), x.clone());
                    l2.set(idx(k, i, a), idx(k, j, b), x.clone());
                }
            }
        }
    }
    (l1, l2)
}

/// Both sides of `R(u-v) L_1(u) η L_2(v) η = η L_2(v) η L_1(u) R(u-v)`.
pub fn rll_sides(l: &LOperator) -> Result<(GradedMatrix, GradedMatrix), EvalError> {
    let u = RationalFunction::var(Var::U);
    let v = RationalFunction::var(Var::V);
    let id = l.identity_operator();
    let r = kron(&r_matrix_at(&(&u - &v)), &id);
    let eta = kron(&eta_twist(&GradedSpace::gl11()), &id);
    let (l1, _) = leg_operators(l);
    let (_, l2) = leg_operators(&l.at(&v)?);
    let lhs = &(&(&(&r * &l1) * &eta) * &l2) * &eta;
    let rhs = &(&(&(&eta * &l2) * &eta) * &l1) * &r;
    Ok((lhs, rhs))
}

pub fn check_rll(id: &str, l: &LOperator) -> CheckReport {
    timed(|| match rll_sides(l) {
        Err(e) => CheckReport::error(id, e),
        Ok((lhs, rhs)) => {
            let w = lhs
                .first_difference(&rhs)
                .map(|(i, j)| Witness::new(format!("[{},{}]", i, j), lhs.get(i, j), rhs.get(i, j)));
            CheckReport::from_witness(id, w)
        }
    })
}

/// Gauss factors of an L-operator, as functions of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentSet {
    pub k1: GradedMatrix,
    pub k2: GradedMatrix,
    pub e: GradedMatrix,
    pub f: GradedMatrix,
}

/// The shifted combinations. `e` and `f` here are the common rational
/// functions of `E±(u) = e±(u+ħ/2)` and `F±(u) = f±(u+ħ/2)`; the bilateral
/// currents `E = E⁺ - E⁻` and `F = F⁺ - F⁻` only exist as series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformedCurrents {
    pub k: GradedMatrix,
    pub h: GradedMatrix,
    pub e: GradedMatrix,
    pub f: GradedMatrix,
}

pub fn gauss_decompose(l: &LOperator) -> Result<CurrentSet, EvalError> {
    let k1 = l.entries[0][0].clone();
    let k1_inv = k1
        .inverse()
        .map_err(|_| EvalError::Degenerate("k1 is not invertible".into()))?;
    let e = &k1_inv * &l.entries[0][1];
    let f = &l.entries[1][0] * &k1_inv;
    let k2 = &l.entries[1][1] - &(&(&f * &k1) * &e);
    Ok(CurrentSet { k1, k2, e, f })
}

impl CurrentSet {
    pub fn at(&self, x: &RationalFunction) -> Result<CurrentSet, EvalError> {
        let b = [(Var::U, x.clone())];
        Ok(CurrentSet {
            k1: self.k1.substitute(&b)?,
            k2: self.k2.substitute(&b)?,
            e: self.e.substitute(&b)?,
            f: self.f.substitute(&b)?,
        })
    }

    /// The lower-unipotent · diagonal · upper-unipotent product.
    pub fn recompose(&self, quantum: &GradedSpace, sign: Sign) -> LOperator {
        let k1e = &self.k1 * &self.e;
        LOperator {
            entries: [
                [self.k1.clone(), k1e.clone()],
                [&self.f * &self.k1, &self.k2 + &(&self.f * &k1e)],
            ],
            quantum: quantum.clone(),
            sign,
        }
    }
}

/// The inverse assembled from the currents.
pub fn invert_l(l: &LOperator, c: &CurrentSet) -> Result<LOperator, EvalError> {
    let k1_inv = c.k1.inverse()?;
    let k2_inv = c
        .k2
        .inverse()
        .map_err(|_| EvalError::Degenerate("k2 is not invertible".into()))?;
    let ek2 = &c.e * &k2_inv;
    Ok(LOperator {
        entries: [
            [&k1_inv + &(&ek2 * &c.f), -&ek2],
            [-&(&k2_inv * &c.f), k2_inv],
        ],
        quantum: l.quantum.clone(),
        sign: l.sign,
    })
}

pub fn transform_currents(c: &CurrentSet) -> Result<TransformedCurrents, EvalError> {
    let u = RationalFunction::var(Var::U);
    let half = RationalFunction::var(Var::H).scale(&crate::field::rat(1, 2));
    let up = c.at(&(&u + &half))?;
    let dn = c.at(&(&u - &half))?;
    Ok(TransformedCurrents {
        k: &up.k1.inverse()? * &up.k2,
        h: &dn.k1 * &up.k2,
        e: up.e,
        f: up.f,
    })
}

pub fn check_recomposition(id: &str, l: &LOperator) -> CheckReport {
    timed(|| match gauss_decompose(l) {
        Err(e) => CheckReport::error(id, e),
        Ok(c) => CheckReport::from_witness(id, c.recompose(&l.quantum, l.sign).first_difference(l)),
    })
}

/// Compares the current-built inverse with direct inversion on `V⊗W` and
/// checks both one-sided products.
pub fn check_inverse(id: &str, l: &LOperator) -> CheckReport {
    timed(|| {
        let run = || -> Result<Option<Witness>, EvalError> {
            let c = gauss_decompose(l)?;
            let inv = invert_l(l, &c)?;
            let direct = LOperator::from_matrix(&l.as_matrix().inverse()?, l.quantum.clone(), l.sign);
            if let Some(w) = inv.first_difference(&direct) {
                return Ok(Some(w));
            }
            for (name, p) in [("L*Linv", l.mul(&inv)), ("Linv*L", inv.mul(l))] {
                if !p.is_identity() {
                    let id = trivial_like(l);
                    let mut w = p.first_difference(&id).expect("non-identity differs");
                    w.location = format!("{} {}", name, w.location);
                    return Ok(Some(w));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(w) => CheckReport::from_witness(id, w),
            Err(e) => CheckReport::error(id, e),
        }
    })
}

/// The identity L-operator on the quantum space of `l`.
pub fn trivial_like(l: &LOperator) -> LOperator {
    let one = l.identity_operator();
    let zero = GradedMatrix::zero_square(&l.quantum);
    LOperator {
        entries: [[one.clone(), zero.clone()], [zero, one]],
        quantum: l.quantum.clone(),
        sign: l.sign,
    }
}

/// Canonical text for the currents of the evaluation module at `w`.
pub fn render_currents(w: Var) -> Result<Vec<(String, GradedMatrix)>, EvalError> {
    let c = gauss_decompose(&build_eval_l(w))?;
    let t = transform_currents(&c)?;
    Ok(vec![
        ("k1(u)".into(), c.k1),
        ("k2(u)".into(), c.k2),
        ("e(u)".into(), c.e),
        ("f(u)".into(), c.f),
        ("K(u)".into(), t.k),
        ("H(u)".into(), t.h),
        ("E(u)".into(), t.e),
        ("F(u)".into(), t.f),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn rf(s: &str) -> String {
        s.to_string()
    }

    #[test]
    fn read_off_entries() {
        let l = build_eval_l(Var::W);
        let l11 = l.entry(0, 0);
        assert_eq!(l11.get(0, 0), RationalFunction::one());
        assert_eq!(l11.get(1, 1).to_string(), rf("(u - w)/(u - w + h)"));
        let l12 = l.entry(0, 1);
        assert_eq!(l12.nnz(), 1);
        assert_eq!(l12.get(1, 0).to_string(), rf("h/(u - w + h)"));
        assert_eq!(l12.parity(), Some(1));
        let l22 = l.entry(1, 1);
        assert_eq!(l22.get(0, 0).to_string(), rf("(u - w)/(u - w + h)"));
        assert_eq!(l22.get(1, 1).to_string(), rf("(u - w - h)/(u - w + h)"));
    }

    #[test]
    fn rll_holds_for_evaluation_and_trivial() {
        assert!(check_rll("rll", &build_eval_l(Var::W)).passed());
        assert!(check_rll("rll", &trivial_l()).passed());
    }

    #[test]
    fn rll_detects_flipped_entry() {
        let l = build_eval_l(Var::W).with_negated_entry(0, 1);
        assert!(!check_rll("rll", &l).passed());
    }

    #[test]
    fn currents_of_evaluation_module() {
        let c = gauss_decompose(&build_eval_l(Var::W)).unwrap();
        assert_eq!(c.e.nnz(), 1);
        assert_eq!(c.e.get(1, 0).to_string(), "h/(u - w)");
        assert_eq!(c.f.get(0, 1).to_string(), "h/(u - w)");
        assert_eq!(c.k2.get(0, 0).to_string(), "(u - w - h)/(u - w)");
        assert_eq!(c.k2.get(1, 1).to_string(), "(u - w - h)/(u - w + h)");
        assert!(c.k1.parity() == Some(0) && c.e.parity() == Some(1));
    }

    #[test]
    fn trivial_currents() {
        let c = gauss_decompose(&trivial_l()).unwrap();
        assert!(c.k1.is_identity() && c.k2.is_identity());
        assert!(c.e.is_zero() && c.f.is_zero());
        let t = transform_currents(&c).unwrap();
        assert!(t.k.is_identity() && t.h.is_identity() && t.e.is_zero() && t.f.is_zero());
    }

    #[test]
    fn transformed_k_is_scalar() {
        let c = gauss_decompose(&build_eval_l(Var::W)).unwrap();
        let t = transform_currents(&c).unwrap();
        let x = &RationalFunction::var(Var::U) - &RationalFunction::var(Var::W);
        let hh = RationalFunction::var(Var::H).scale(&rat(1, 2));
        let want = &(&x - &hh) / &(&x + &hh);
        assert_eq!(t.k, GradedMatrix::scalar(&GradedSpace::gl11(), want));
    }

    #[test]
    fn inverse_formula() {
        let l = build_eval_l(Var::W);
        assert!(check_inverse("inv", &l).passed());
        assert!(check_recomposition("rec", &l).passed());
        let c = gauss_decompose(&trivial_l()).unwrap();
        assert!(invert_l(&trivial_l(), &c).unwrap().is_identity());
    }

    #[test]
    fn degenerate_point_is_rejected() {
        let l = build_eval_l(Var::W);
        let w = RationalFunction::var(Var::W);
        let err = l.at(&(&w - &RationalFunction::var(Var::H))).unwrap_err();
        assert_eq!(err, EvalError::Field(FieldError::VanishingDenominator));
        let c = gauss_decompose(&l).unwrap();
        assert!(c.at(&w).is_err());
    }

    #[test]
    fn two_site_rll_and_counit() {
        let l = two_site_l(Var::W1, Var::W2);
        assert!(check_rll("rll2", &l).passed());
        let single = build_eval_l(Var::W);
        assert_eq!(coproduct(&trivial_l(), &single), single);
        assert_eq!(coproduct(&single, &trivial_l()), single);
    }
}
