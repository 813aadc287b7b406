//! The built-in relation catalogue, written in the relation language.

use crate::dsl::{parse_relation, Expr, Relation};

use super::{classify, ContextKind, SuiteName, SuiteRelation};

// `{s}` is the sign of the template instance and `{t}` its opposite.
const SUMMARY: &[(&str, &str)] = &[
    ("k1k1", "[k1{s}(u), k1{s}(v)] = 0"),
    ("k1k1-mixed", "[k1+(u), k1-(v)] = 0"),
    ("k1k2", "[k1{s}(u), k2{s}(v)] = 0"),
    ("k2k2", "[k2{s}(u), k2{s}(v)] = 0"),
    (
        "k1k2-mixed",
        "(u{s} - v{t})/(u{s} - v{t} + hbar)*k1{s}(u)*inv(k2{t}(v)) = (u{t} - v{s})/(u{t} - v{s} + hbar)*inv(k2{t}(v))*k1{s}(u)",
    ),
    (
        "k2k2-mixed",
        "(u- - v+ - hbar)/(u- - v+ + hbar)*inv(k2+(u))*inv(k2-(v)) = (u+ - v- - hbar)/(u+ - v- + hbar)*inv(k2-(v))*inv(k2+(u))",
    ),
    ("k1-xp", "inv(k1{s}(u))*X+(v)*k1{s}(u) = (u{s} - v + hbar)/(u{s} - v)*X+(v)"),
    ("k2-xp", "inv(k2{s}(u))*X+(v)*k2{s}(u) = (u{s} - v + hbar)/(u{s} - v)*X+(v)"),
    ("k1-xm", "k1{s}(u)*X-(v)*inv(k1{s}(u)) = (u{t} - v + hbar)/(u{t} - v)*X-(v)"),
    ("k2-xm", "k2{s}(u)*X-(v)*inv(k2{s}(u)) = (u{t} - v + hbar)/(u{t} - v)*X-(v)"),
    ("xpxp", "{X+(u), X+(v)} = 0"),
    ("xmxm", "{X-(u), X-(v)} = 0"),
    (
        "xpxm",
        "{X+(u), X-(v)} = hbar*(delta(u-, v+)*inv(k1+(u-))*k2+(u-) - delta(u+, v-)*inv(k1-(v-))*k2-(v-))",
    ),
];

const KHEF: &[(&str, &str)] = &[
    ("kk", "[K{s}(u), K{s}(v)] = 0"),
    ("kk-mixed", "[K+(u), K-(v)] = 0"),
    ("hh", "[H{s}(u), H{s}(v)] = 0"),
    ("kh", "[K{s}(u), H{s}(v)] = 0"),
    (
        "hk-mixed",
        "(u{t} - v{s} - hbar)/(u{t} - v{s} + hbar)*H{s}(u)*K{t}(v) = K{t}(v)*H{s}(u)*(u{s} - v{t} - hbar)/(u{s} - v{t} + hbar)",
    ),
    (
        "hh-mixed",
        "((u{t} - v{s} - hbar)/(u{t} - v{s} + hbar))^2*H{s}(u)*H{t}(v) = H{t}(v)*H{s}(u)*((u{s} - v{t} - hbar)/(u{s} - v{t} + hbar))^2",
    ),
    ("ke", "[K{s}(u), E(v)] = 0"),
    ("kf", "[K{s}(u), F(v)] = 0"),
    ("eh", "E(v)*H{s}(u) = (u{s} - v + hbar)/(u{s} - v - hbar)*H{s}(u)*E(v)"),
    ("hf", "H{s}(u)*F(v) = (u{t} - v + hbar)/(u{t} - v - hbar)*F(v)*H{s}(u)"),
    ("ef", "{E(u), F(v)} = hbar*(delta(u-, v+)*K+(u-) - delta(u+, v-)*K-(v-))"),
];

const DERIVATION: &[(&str, &str)] = &[
    (
        "k1e",
        "k1{s}(u)*k1{s}(v)*e{s}(v) - (u - v)/(u - v + hbar)*k1{s}(v)*e{s}(v)*k1{s}(u) - hbar/(u - v + hbar)*k1{s}(v)*k1{s}(u)*e{s}(u) = 0",
    ),
    (
        "k1e-mixed",
        "k1{s}(u)*k1{t}(v)*e{t}(v) - (u{s} - v{t})/(u{s} - v{t} + hbar)*k1{t}(v)*e{t}(v)*k1{s}(u) - hbar/(u{s} - v{t} + hbar)*k1{t}(v)*k1{s}(u)*e{s}(u) = 0",
    ),
    (
        "fk1",
        "f{s}(v)*k1{s}(v)*k1{s}(u) - (u - v)/(u - v + hbar)*k1{s}(u)*f{s}(v)*k1{s}(v) - hbar/(u - v + hbar)*f{s}(u)*k1{s}(u)*k1{s}(v) = 0",
    ),
    (
        "fk1-mixed",
        "f{t}(v)*k1{t}(v)*k1{s}(u) - (u{t} - v{s})/(u{t} - v{s} + hbar)*k1{s}(u)*f{t}(v)*k1{t}(v) - hbar/(u{t} - v{s} + hbar)*f{s}(u)*k1{s}(u)*k1{t}(v) = 0",
    ),
    (
        "k1-conj-e",
        "(u{s} - v + hbar)*e{s}(v{t}) - (u{s} - v)*inv(k1{s}(u))*e{s}(v{t})*k1{s}(u) - hbar*e{s}(u) = 0",
    ),
    (
        "k1-conj-e-mixed",
        "(u{s} - v + hbar)*e{t}(v{s}) - (u{s} - v)*inv(k1{s}(u))*e{t}(v{s})*k1{s}(u) - hbar*e{s}(u) = 0",
    ),
    (
        "k1-conj-f",
        "(u{t} - v + hbar)*f{s}(v{s}) - (u{t} - v)*k1{s}(u)*f{s}(v{s})*inv(k1{s}(u)) - hbar*f{s}(u) = 0",
    ),
    (
        "k1-conj-f-mixed",
        "(u{t} - v + hbar)*f{t}(v{t}) - (u{t} - v)*k1{s}(u)*f{t}(v{t})*inv(k1{s}(u)) - hbar*f{s}(u) = 0",
    ),
    (
        "ek2",
        "(u - v - hbar)/(u - v + hbar)*e{s}(u)*inv(k2{s}(u))*inv(k2{s}(v)) - (u - v)/(u - v + hbar)*inv(k2{s}(v))*e{s}(u)*inv(k2{s}(u)) + hbar/(u - v + hbar)*e{s}(v)*inv(k2{s}(v))*inv(k2{s}(u)) = 0",
    ),
    (
        "ek2-mixed",
        "(u{t} - v{s} - hbar)/(u{t} - v{s} + hbar)*e{s}(u)*inv(k2{s}(u))*inv(k2{t}(v)) - (u{s} - v{t})/(u{s} - v{t} + hbar)*inv(k2{t}(v))*e{s}(u)*inv(k2{s}(u)) + hbar/(u{s} - v{t} + hbar)*e{t}(v)*inv(k2{t}(v))*inv(k2{s}(u)) = 0",
    ),
    (
        "k2f",
        "(u - v - hbar)/(u - v + hbar)*inv(k2{s}(v))*inv(k2{s}(u))*f{s}(u) - (u - v)/(u - v + hbar)*inv(k2{s}(u))*f{s}(u)*inv(k2{s}(v)) + hbar/(u - v + hbar)*inv(k2{s}(u))*inv(k2{s}(v))*f{s}(v) = 0",
    ),
    (
        "k2f-mixed",
        "(u{s} - v{t} - hbar)/(u{s} - v{t} + hbar)*inv(k2{t}(v))*inv(k2{s}(u))*f{s}(u) - (u{t} - v{s})/(u{t} - v{s} + hbar)*inv(k2{s}(u))*f{s}(u)*inv(k2{t}(v)) + hbar/(u{t} - v{s} + hbar)*inv(k2{s}(u))*inv(k2{t}(v))*f{t}(v) = 0",
    ),
    (
        "k2-conj-e",
        "(u{t} - v - hbar)*e{s}(u{t}) - (u{t} - v)*inv(k2{s}(v))*e{s}(u{t})*k2{s}(v) + hbar*e{s}(v) = 0",
    ),
    (
        "k2-conj-e-mixed",
        "(u - v{t} - hbar)*e{s}(u{t}) - (u - v{t})*inv(k2{t}(v))*e{s}(u{t})*k2{t}(v) + hbar*e{t}(v) = 0",
    ),
    (
        "k2-conj-f",
        "(u{s} - v - hbar)*f{s}(u{s}) - (u{s} - v)*k2{s}(v)*f{s}(u{s})*inv(k2{s}(v)) + hbar*f{s}(v) = 0",
    ),
    (
        "k2-conj-f-mixed",
        "(u - v{s} - hbar)*f{s}(u{s}) - (u - v{s})*k2{t}(v)*f{s}(u{s})*inv(k2{t}(v)) + hbar*f{t}(v) = 0",
    ),
    (
        "ee",
        "k1{s}(u)*e{s}(u)*k1{s}(v)*e{s}(v) + (u - v - hbar)/(u - v + hbar)*k1{s}(v)*e{s}(v)*k1{s}(u)*e{s}(u) = 0",
    ),
    (
        "ee-mixed",
        "k1{s}(u)*e{s}(u)*k1{t}(v)*e{t}(v) + (u{s} - v{t} - hbar)/(u{s} - v{t} + hbar)*k1{t}(v)*e{t}(v)*k1{s}(u)*e{s}(u) = 0",
    ),
    (
        "ff",
        "(u - v - hbar)/(u - v + hbar)*f{s}(u)*k1{s}(u)*f{s}(v)*k1{s}(v) + f{s}(v)*k1{s}(v)*f{s}(u)*k1{s}(u) = 0",
    ),
    (
        "ff-mixed",
        "(u{t} - v{s} - hbar)/(u{t} - v{s} + hbar)*f{s}(u)*k1{s}(u)*f{t}(v)*k1{t}(v) + f{t}(v)*k1{t}(v)*f{s}(u)*k1{s}(u) = 0",
    ),
    (
        "efk",
        "(u - v)/(u - v + hbar)*k1{s}(u)*e{s}(u)*f{s}(v)*k1{s}(v) + (u - v)/(u - v + hbar)*f{s}(v)*k1{s}(v)*k1{s}(u)*e{s}(u) - hbar/(u - v + hbar)*(k2{s}(u) + f{s}(u)*k1{s}(u)*e{s}(u))*k1{s}(v) - hbar/(u - v + hbar)*(k2{s}(v) + f{s}(v)*k1{s}(v)*e{s}(v))*k1{s}(u) = 0",
    ),
    (
        "efk-mixed",
        "(u{t} - v{s})/(u{t} - v{s} + hbar)*k1{s}(u)*e{s}(u)*f{t}(v)*k1{t}(v) + (u{s} - v{t})/(u{s} - v{t} + hbar)*f{t}(v)*k1{t}(v)*k1{s}(u)*e{s}(u) - hbar/(u{t} - v{s} + hbar)*(k2{s}(u) + f{s}(u)*k1{s}(u)*e{s}(u))*k1{t}(v) - hbar/(u{s} - v{t} + hbar)*(k2{t}(v) + f{t}(v)*k1{t}(v)*e{t}(v))*k1{s}(u) = 0",
    ),
    (
        "k1ek1",
        "k1{s}(u)*e{s}(u)*k1{s}(v) - (u - v)/(u - v + hbar)*k1{s}(v)*k1{s}(u)*e{s}(u) - hbar/(u - v + hbar)*k1{s}(v)*e{s}(v)*k1{s}(u) = 0",
    ),
    (
        "k1ek1-mixed",
        "k1{s}(u)*e{s}(u)*k1{t}(v) - (u{s} - v{t})/(u{s} - v{t} + hbar)*k1{t}(v)*k1{s}(u)*e{s}(u) - hbar/(u{s} - v{t} + hbar)*k1{t}(v)*e{t}(v)*k1{s}(u) = 0",
    ),
    (
        "ef",
        "e{s}(u)*f{s}(v) + f{s}(v)*e{s}(u) = hbar/(u - v)*inv(k1{s}(u))*k2{s}(u) - hbar/(u - v)*inv(k1{s}(v))*k2{s}(v)",
    ),
    (
        "ef-mixed",
        "e{s}(u)*f{t}(v) + f{t}(v)*e{s}(u) = hbar/(u{t} - v{s})*inv(k1{s}(u))*k2{s}(u) - hbar/(u{s} - v{t})*inv(k1{t}(v))*k2{t}(v)",
    ),
];

/// Current coproducts at zero central charge, read on a two-site module.
/// Rows marked `true` are checked mode by mode as well.
const HOPF: &[(&str, &str, bool)] = &[
    ("delta-k", "K{s}(u) = tensor(K{s}(u), K{s}(u))", false),
    ("delta-e", "E{s}(u) = tensor(E{s}(u), 1) + tensor(H{s}(u), E{s}(u))", true),
    ("delta-f", "F{s}(u) = tensor(1, F{s}(u)) + tensor(F{s}(u), H{s}(u))", true),
    (
        "delta-h",
        "H{s}(u) = tensor(H{s}(u), H{s}(u)) - 2*tensor(F{s}(u - hbar)*H{s}(u), H{s}(u)*E{s}(u - hbar))",
        true,
    ),
    ("delta-e-alt-k", "E{s}(u) = tensor(E{s}(u), 1) + tensor(K{s}(u), E{s}(u))", true),
    ("delta-f-alt-k", "F{s}(u) = tensor(1, F{s}(u)) + tensor(F{s}(u), K{s}(u))", true),
];

const HOPF_WINDOW: i64 = 6;

fn instances(template: &str) -> Vec<(Option<char>, String)> {
    if !template.contains("{s}") && !template.contains("{t}") {
        return vec![(None, template.to_string())];
    }
    [('+', '-'), ('-', '+')]
        .into_iter()
        .map(|(s, t)| {
            let text = template
                .replace("{s}", &s.to_string())
                .replace("{t}", &t.to_string());
            (Some(s), text)
        })
        .collect()
}

fn expand(
    prefix: &str,
    suite: SuiteName,
    context: ContextKind,
    rows: impl IntoIterator<Item = (&'static str, &'static str, Option<i64>)>,
) -> Vec<SuiteRelation> {
    let mut out = Vec::new();
    for (name, template, window) in rows {
        for (sign, text) in instances(template) {
            let id = match sign {
                Some(s) => format!("{prefix}.{name}[{s}]"),
                None => format!("{prefix}.{name}"),
            };
            let relation = parse_relation(&text)
                .unwrap_or_else(|e| panic!("built-in relation {id} does not parse: {e}"));
            let kind = classify(&relation);
            out.push(SuiteRelation {
                id,
                suite,
                context,
                kind,
                window,
                relation,
            });
        }
    }
    out
}

/// The summary block and the transformed-current block.
pub fn summary_suite() -> Vec<SuiteRelation> {
    let mut out = expand(
        "summary",
        SuiteName::Summary,
        ContextKind::Evaluation,
        SUMMARY.iter().map(|&(n, t)| (n, t, None)),
    );
    out.extend(expand(
        "khef",
        SuiteName::Summary,
        ContextKind::Evaluation,
        KHEF.iter().map(|&(n, t)| (n, t, None)),
    ));
    out
}

/// Intermediate relations between the defining relations and the summary.
pub fn derivation_suite() -> Vec<SuiteRelation> {
    expand(
        "derivation",
        SuiteName::Derivation,
        ContextKind::Evaluation,
        DERIVATION.iter().map(|&(n, t)| (n, t, None)),
    )
}

/// Current coproduct identities.
pub fn hopf_relations() -> Vec<SuiteRelation> {
    expand(
        "hopf",
        SuiteName::Hopf,
        ContextKind::TwoSite,
        HOPF.iter()
            .map(|&(n, t, modes)| (n, t, modes.then_some(HOPF_WINDOW))),
    )
}

/// The summary block, transformed currents and derivation steps.
pub fn builtin_suite() -> Vec<SuiteRelation> {
    let mut out = summary_suite();
    out.extend(derivation_suite());
    out
}

/// A relation supplied by the user. Relations with a tensor product are read
/// in the two-site module, the rest in the evaluation module.
pub fn user_relation(id: impl Into<String>, relation: Relation) -> SuiteRelation {
    let mut tensor = false;
    for side in [&relation.lhs, &relation.rhs] {
        side.visit(&mut |e| tensor |= matches!(e, Expr::Tensor(..)));
    }
    SuiteRelation {
        id: id.into(),
        suite: SuiteName::File,
        context: if tensor { ContextKind::TwoSite } else { ContextKind::Evaluation },
        kind: classify(&relation),
        window: None,
        relation,
    }
}
