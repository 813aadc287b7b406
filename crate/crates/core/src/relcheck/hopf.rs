//! Coproduct, counit and antipode checks on L-operators.

use crate::evalrep::{
    build_eval_l, check_rll, coproduct, gauss_decompose, trivial_l, trivial_like, two_site_l,
    CurrentSet, EvalError, LOperator,
};
use crate::field::Var;
use crate::grade::graded_kron;
use crate::report::{timed, CheckReport, Witness};

/// RLL for the two-site operator built from evaluation modules at `w1`, `w2`.
pub fn check_coproduct_homomorphism(w1: Var, w2: Var) -> CheckReport {
    check_rll("hopf.two-site-rll", &two_site_l(w1, w2))
}

/// `Δ(l_11) = l_11⊗l_11 - l_21⊗l_12` on two evaluation modules.
pub fn check_coproduct_sign(w1: Var, w2: Var) -> CheckReport {
    timed(|| {
        let (a, b) = (build_eval_l(w1), build_eval_l(w2));
        let d = coproduct(&a, &b);
        let expected = &graded_kron(a.entry(0, 0), b.entry(0, 0))
            - &graded_kron(a.entry(1, 0), b.entry(0, 1));
        let got = d.entry(0, 0);
        CheckReport::from_witness(
            "hopf.coproduct-sign",
            got.first_difference(&expected).map(|(r, c)| {
                Witness::new(format!("l11[{r},{c}]"), got.get(r, c), expected.get(r, c))
            }),
        )
    })
}

fn same_entries(a: &LOperator, b: &LOperator) -> Option<Witness> {
    let reshaped = LOperator {
        quantum: b.quantum.clone(),
        ..a.clone()
    };
    reshaped.first_difference(b)
}

/// `(ε⊗id)Δ = id` and `(id⊗ε)Δ = id` on the L entries.
pub fn check_counit(w: Var) -> Vec<CheckReport> {
    let l = build_eval_l(w);
    let e = trivial_l();
    vec![
        timed(|| CheckReport::from_witness("hopf.counit-left", same_entries(&coproduct(&e, &l), &l))),
        timed(|| CheckReport::from_witness("hopf.counit-right", same_entries(&coproduct(&l, &e), &l))),
    ]
}

fn current_difference(a: &CurrentSet, b: &CurrentSet) -> Option<Witness> {
    let pairs = [("k1", &a.k1, &b.k1), ("k2", &a.k2, &b.k2), ("e", &a.e, &b.e), ("f", &a.f, &b.f)];
    pairs.into_iter().find_map(|(name, x, y)| {
        x.first_difference(y)
            .map(|(r, c)| Witness::new(format!("{name}[{r},{c}]"), x.get(r, c), y.get(r, c)))
    })
}

/// The counit applied to either slot of the two-site currents.
pub fn check_current_counit(w: Var) -> Vec<CheckReport> {
    let l = build_eval_l(w);
    let e = trivial_l();
    let run = |id: &str, two: LOperator| {
        timed(|| {
            let res = (|| -> Result<Option<Witness>, EvalError> {
                let a = gauss_decompose(&two)?;
                let b = gauss_decompose(&l)?;
                Ok(current_difference(&a, &b))
            })();
            match res {
                Ok(w) => CheckReport::from_witness(id, w),
                Err(err) => CheckReport::error(id, err),
            }
        })
    };
    vec![
        run("hopf.current-counit-left", coproduct(&e, &l)),
        run("hopf.current-counit-right", coproduct(&l, &e)),
    ]
}

/// `S(stL) = (stL)^{-1}`: both one-sided products are the identity, and
/// `(stL)_12 = -l_21`.
pub fn check_antipode_matrix(id: &str, l: &LOperator) -> CheckReport {
    timed(|| {
        let st = l.super_transpose();
        let neg = -l.entry(1, 0);
        if let Some((r, c)) = st.entry(0, 1).first_difference(&neg) {
            return CheckReport::fail(
                id,
                Witness::new(format!("st12[{r},{c}]"), st.entry(0, 1).get(r, c), neg.get(r, c)),
            );
        }
        let inv = match st.as_matrix().inverse() {
            Ok(m) => LOperator::from_matrix(&m, l.quantum.clone(), l.sign),
            Err(e) => return CheckReport::error(id, format!("singular stL: {e}")),
        };
        let one = trivial_like(l);
        for (name, p) in [("stL*S", st.mul(&inv)), ("S*stL", inv.mul(&st))] {
            if let Some(mut w) = p.first_difference(&one) {
                w.location = format!("{name} {}", w.location);
                return CheckReport::fail(id, w);
            }
        }
        let image: Vec<String> = inv
            .as_matrix()
            .render_grid()
            .into_iter()
            .map(|row| format!("[{}]", row.join(", ")))
            .collect();
        CheckReport::pass(id).with_note(format!("S(stL) = [{}]", image.join(", ")))
    })
}

/// Structural Hopf checks that do not go through the relation language.
pub fn hopf_structural(w1: Var, w2: Var) -> Vec<CheckReport> {
    let mut out = vec![
        check_coproduct_homomorphism(w1, w2),
        check_coproduct_sign(w1, w2),
    ];
    out.extend(check_counit(w1));
    out.extend(check_current_counit(w1));
    out.push(check_antipode_matrix("hopf.antipode-eval", &build_eval_l(w1)));
    out.push(check_antipode_matrix("hopf.antipode-trivial", &trivial_l()));
    out
}
