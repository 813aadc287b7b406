//! One pass/fail line per acceptance criterion.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rayon::prelude::*;
use yangian_core::dist::{expand_at_infinity, expand_at_zero};
use yangian_core::dsl::{parse_relation, render_relation};
use yangian_core::evalrep::{build_eval_l, check_inverse, check_recomposition, check_rll};
use yangian_core::field::{RationalFunction, Var};
use yangian_core::modealg::{
    extract_mode_relations, ideal_membership, relation_elements, specialize_to_rep,
    standard_candidates, tampered_relation, verify_certificate, Family, Membership, ModeOperators,
    DEFAULT_CAP,
};
use yangian_core::relcheck::hopf::hopf_structural;
use yangian_core::relcheck::suite::{builtin_suite, derivation_suite, hopf_relations, summary_suite};
use yangian_core::relcheck::{check_entry, Contexts};
use yangian_core::report::CheckReport;
use yangian_core::rmat::{build_r, check_sybe, check_unitarity, check_weight_conservation, tampered_r};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn failing(reports: &[CheckReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.passed()).map(|r| r.id.clone()).collect()
}

fn all_pass(reports: &[CheckReport]) -> Outcome {
    let bad = failing(reports);
    if bad.is_empty() {
        outcome(true, format!("{} checks", reports.len()))
    } else {
        outcome(false, format!("failing: {}", bad.join(", ")))
    }
}

fn ybe() -> Outcome {
    let start = Instant::now();
    let r = check_sybe(&build_r(Var::U));
    let ms = start.elapsed().as_millis();
    outcome(r.passed() && ms < 5000, format!("residual zero: {}, {ms} ms", r.passed()))
}

fn unitarity_and_weight() -> Outcome {
    let r = build_r(Var::U);
    all_pass(&[check_unitarity(&r), check_weight_conservation(&r)])
}

fn evaluation_module() -> Outcome {
    let l = build_eval_l(Var::W);
    all_pass(&[
        check_rll("eval.rll", &l),
        check_recomposition("eval.gauss", &l),
        check_inverse("eval.inverse", &l),
    ])
}

fn summary_blocks() -> Outcome {
    let ctx = Contexts::standard().unwrap();
    let start = Instant::now();
    let summary: Vec<CheckReport> = summary_suite().par_iter().map(|e| check_entry(e, &ctx, 8)).collect();
    let derivation: Vec<CheckReport> =
        derivation_suite().par_iter().map(|e| check_entry(e, &ctx, 8)).collect();
    let secs = start.elapsed().as_secs_f64();
    let bad = failing(&summary);
    let side = failing(&derivation);
    let ok = bad.is_empty() && secs < 60.0;
    let mut detail = format!("{} summary/K-H-E-F relations at N=8, full suite {secs:.1} s", summary.len());
    if !bad.is_empty() {
        detail.push_str(&format!("; failing: {}", bad.join(", ")));
    }
    if !side.is_empty() {
        detail.push_str(&format!("; derivation steps failing: {}", side.join(", ")));
    }
    outcome(ok, detail)
}

fn delta_regions() -> Outcome {
    let w = RationalFunction::var(Var::W);
    let f = RationalFunction::one() / (&RationalFunction::var(Var::U) - &w);
    let d = expand_at_infinity(&f, Var::U, 8)
        .unwrap()
        .sub(&expand_at_zero(&f, Var::U, 7).unwrap());
    let bad: Vec<i64> = (-8..=7)
        .filter(|&m| d.coeff(m) != Some(Some(&w.pow(-(m as i32) - 1).unwrap())))
        .collect();
    outcome(bad.is_empty(), format!("modes [-8,7], mismatches {bad:?}"))
}

fn hopf() -> Outcome {
    let ctx = Contexts::standard().unwrap();
    let mut reports = hopf_structural(Var::W1, Var::W2);
    let rows: Vec<CheckReport> = hopf_relations().par_iter().map(|e| check_entry(e, &ctx, 6)).collect();
    let reading: Vec<String> = rows
        .iter()
        .filter(|r| r.id.starts_with("hopf.delta-h"))
        .map(|r| format!("{} {}", r.id, r.verdict.as_str()))
        .collect();
    reports.extend(rows.into_iter().filter(|r| !r.id.starts_with("hopf.delta-h")));
    let mut o = all_pass(&reports);
    o.detail.push_str(&format!("; Delta(H) reading: {}", reading.join(", ")));
    o
}

fn mode_algebra() -> Outcome {
    let rels = relation_elements(&extract_mode_relations(Family::PlusPlus, 2));
    let mut bad = Vec::new();
    for (id, cand, member) in standard_candidates(Family::PlusPlus, 2) {
        let ok = match ideal_membership(&cand, &rels, 2, DEFAULT_CAP) {
            Membership::Member(c) => member && verify_certificate(&c, &rels, &cand),
            Membership::NotMember(_) => !member,
            Membership::Refused { .. } => false,
        };
        if !ok {
            bad.push(id);
        }
    }
    let ops = ModeOperators::evaluation(Var::W, 2).unwrap();
    let mut count = 0;
    for fam in Family::ALL {
        for r in extract_mode_relations(fam, 2) {
            count += 1;
            if !specialize_to_rep(&r.element, &ops).is_ok_and(|m| m.is_zero()) {
                bad.push(r.label());
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} relations specialize to zero; failing {bad:?}"))
}

fn perturbations() -> Outcome {
    let ctx = Contexts::standard().unwrap();
    let flipped = Contexts {
        evaluation: ctx.evaluation.clone().with_flipped_e(),
        two_site: ctx.two_site.clone().with_flipped_e(),
    };
    let e_caught = builtin_suite()
        .iter()
        .map(|e| (check_entry(e, &ctx, 3), check_entry(e, &flipped, 3)))
        .any(|(a, b)| a.passed() && !b.passed() && b.witness.is_some());
    let ybe = check_sybe(&tampered_r(Var::U));
    let r_caught = !ybe.passed() && ybe.witness.is_some();
    let rel_caught = tampered_relation(Family::PlusPlus, 2).is_some_and(|(_, m)| !m.is_zero());
    outcome(
        e_caught && r_caught && rel_caught,
        format!("flipped e: {e_caught}, R(22,22): {r_caught}, relation coefficient: {rel_caught}"),
    )
}

const ERRORS: &[(&str, usize, usize)] = &[
    ("k1+(u", 5, 5),
    ("k1+(u) = ", 9, 9),
    ("k1+(u) = k3+(v)", 9, 11),
    ("k1+(u) = 0 0", 11, 12),
    ("k1+(u) @ 0", 7, 8),
    ("{k1+(u), k2+(v)} = 0", 0, 16),
    ("e(u) = 0", 1, 2),
    ("k1+(u + 2 hbar) = 0", 10, 14),
    ("delta(u, v", 10, 10),
    ("hbar^x = 0", 5, 6),
    ("k1+(u + hbar/0) = 0", 13, 14),
    ("[k1+(u), k2+(v) = 0", 16, 17),
];

fn dsl() -> Outcome {
    let entries: Vec<_> = builtin_suite().into_iter().chain(hopf_relations()).collect();
    let trips = entries
        .iter()
        .filter(|e| parse_relation(&render_relation(&e.relation)).ok().as_ref() == Some(&e.relation))
        .count();
    let spans = ERRORS
        .iter()
        .filter(|(s, a, b)| parse_relation(s).is_err_and(|e| (e.span.start, e.span.end) == (*a, *b)))
        .count();
    outcome(
        trips == entries.len() && spans == ERRORS.len() && ERRORS.len() >= 10,
        format!("round trip {trips}/{}, error spans {spans}/{}", entries.len(), ERRORS.len()),
    )
}

fn cli() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_ydcheck"))
            .args(args)
            .current_dir(&dir)
            .output()
            .unwrap();
        (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
    };
    let det = ["--format", "json", "--deterministic"];
    let mut ok = true;
    for (golden, args, code) in [
        ("ybe.json", &["check", "ybe"][..], 0),
        ("bad-file.json", &["check", "file", "bad.rel", "--window", "4"], 1),
    ] {
        let full = [args, &det[..]].concat();
        let (a, ca) = run(&full);
        let (b, _) = run(&full);
        let want = std::fs::read_to_string(dir.join(golden)).unwrap();
        ok &= ca == code && a == b && a == want;
    }
    let (_, usage) = run(&["check", "ybe", "--window", "1"]);
    ok &= usage == 2;
    outcome(ok, "exit 0/1/2 and golden JSON")
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("YBE residual zero in under 5 s", ybe),
        ("unitarity and weight conservation", unitarity_and_weight),
        ("evaluation module: RLL, Gauss recomposition, inverse", evaluation_module),
        ("summary and K/H/E/F blocks", summary_blocks),
        ("two expansions of 1/(u-w) differ by delta", delta_regions),
        ("Hopf suite", hopf),
        ("mode algebra at N=2, D=2", mode_algebra),
        ("perturbations are detected", perturbations),
        ("relation language", dsl),
        ("command-line contract", cli),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!(
            "criterion {:>2}: {} {name} ({})",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
