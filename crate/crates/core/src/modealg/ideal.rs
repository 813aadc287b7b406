//! Bounded-degree membership in the two-sided ideal spanned by relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::field::RationalFunction;
use crate::report::{timed, CheckReport, Witness};

use super::{FreeElement, FreeWord, ModeGenerator};

pub const DEFAULT_CAP: usize = 20_000;

/// `candidate = Σ coeff · left · relations[index] · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<(FreeWord, usize, FreeWord, RationalFunction)>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, i, b, c)| format!("({a}, r{i}, {b}, {c})"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub enum Membership {
    Member(Certificate),
    NotMember(FreeElement),
    Refused { cap: usize, needed: usize },
}

fn words_up_to(alphabet: &[ModeGenerator], len: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::empty()];
    let mut layer = vec![FreeWord::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in alphabet {
                let mut v = w.0.clone();
                v.push(*g);
                next.push(FreeWord(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A reduced row with the combination of spanning elements it came from.
struct Row {
    vector: FreeElement,
    combo: BTreeMap<usize, RationalFunction>,
}

fn add_combo(
    acc: &mut BTreeMap<usize, RationalFunction>,
    other: &BTreeMap<usize, RationalFunction>,
    scale: &RationalFunction,
) {
    for (&k, c) in other {
        let v = match acc.remove(&k) {
            Some(x) => &x + &(c * scale),
            None => c * scale,
        };
        if !v.is_zero() {
            acc.insert(k, v);
        }
    }
}

/// Reduces `v` by the rows; returns the remainder and the multiples used.
fn reduce(
    rows: &BTreeMap<FreeWord, Row>,
    mut v: FreeElement,
    mut combo: BTreeMap<usize, RationalFunction>,
) -> (FreeElement, BTreeMap<usize, RationalFunction>) {
    let mut done = FreeElement::zero();
    while let Some((w, c)) = v.leading().map(|(w, c)| (w.clone(), c.clone())) {
        match rows.get(&w) {
            Some(row) => {
                let m = -&c;
                v = v.plus(&row.vector.scaled(&m));
                add_combo(&mut combo, &row.combo, &m);
            }
            None => {
                v.terms.remove(&w);
                done.add_term(w, c);
            }
        }
    }
    (done, combo)
}

/// Decides whether `candidate` lies in the span of `a·r·b` with
/// `deg(a) + deg(r) + deg(b) ≤ degree`, where `a`, `b` range over words in
/// the generators of the relations and the candidate.
pub fn ideal_membership(
    candidate: &FreeElement,
    relations: &[FreeElement],
    degree: usize,
    cap: usize,
) -> Membership {
    let mut alphabet: BTreeSet<ModeGenerator> = candidate.generators().into_iter().collect();
    for r in relations {
        alphabet.extend(r.generators());
    }
    let alphabet: Vec<ModeGenerator> = alphabet.into_iter().collect();
    let mut spanning: Vec<(FreeWord, usize, FreeWord)> = Vec::new();
    for (idx, r) in relations.iter().enumerate() {
        let d = r.degree();
        if d > degree {
            continue;
        }
        let spare = degree - d;
        let words = words_up_to(&alphabet, spare);
        if words.len().saturating_mul(words.len()) > cap {
            return Membership::Refused {
                cap,
                needed: words.len().saturating_mul(words.len()),
            };
        }
        for a in &words {
            for b in &words {
                if a.len() + b.len() <= spare {
                    spanning.push((a.clone(), idx, b.clone()));
                }
            }
        }
        if spanning.len() > cap {
            return Membership::Refused {
                cap,
                needed: spanning.len(),
            };
        }
    }
    let mut rows: BTreeMap<FreeWord, Row> = BTreeMap::new();
    for (s, (a, idx, b)) in spanning.iter().enumerate() {
        let v = relations[*idx].sandwich(a, b);
        let combo = BTreeMap::from([(s, RationalFunction::one())]);
        let (v, combo) = reduce(&rows, v, combo);
        if let Some((w, c)) = v.leading().map(|(w, c)| (w.clone(), c.clone())) {
            let inv = c.inv().expect("nonzero leading coefficient");
            let mut scaled = BTreeMap::new();
            add_combo(&mut scaled, &combo, &inv);
            rows.insert(
                w,
                Row {
                    vector: v.scaled(&inv),
                    combo: scaled,
                },
            );
        }
    }
    let (residual, combo) = reduce(&rows, candidate.clone(), BTreeMap::new());
    if !residual.is_zero() {
        return Membership::NotMember(residual);
    }
    // candidate - Σ combo_s · spanning_s = 0
    let terms = combo
        .into_iter()
        .map(|(s, c)| {
            let (a, idx, b) = &spanning[s];
            (a.clone(), *idx, b.clone(), -&c)
        })
        .collect();
    Membership::Member(Certificate { terms })
}

/// Re-expands a certificate and compares it with the candidate.
pub fn verify_certificate(
    cert: &Certificate,
    relations: &[FreeElement],
    candidate: &FreeElement,
) -> bool {
    let mut sum = FreeElement::zero();
    for (a, idx, b, c) in &cert.terms {
        match relations.get(*idx) {
            Some(r) => sum = sum.plus(&r.sandwich(a, b).scaled(c)),
            None => return false,
        }
    }
    sum == *candidate
}

/// Membership as a report. `expect_member` selects whether membership or
/// non-membership is the passing outcome.
pub fn membership_report(
    id: &str,
    candidate: &FreeElement,
    relations: &[FreeElement],
    degree: usize,
    cap: usize,
    expect_member: bool,
) -> (CheckReport, Membership) {
    let mut result = None;
    let report = timed(|| {
        let m = ideal_membership(candidate, relations, degree, cap);
        let r = match (&m, expect_member) {
            (Membership::Member(cert), true) => {
                if verify_certificate(cert, relations, candidate) {
                    CheckReport::pass(id).with_note(format!("certificate {cert}"))
                } else {
                    CheckReport::fail(id, Witness::new("certificate", cert.to_string(), candidate.to_string()))
                }
            }
            (Membership::Member(cert), false) => CheckReport::fail(
                id,
                Witness::new("membership", format!("member via {cert}"), "not a member"),
            ),
            (Membership::NotMember(res), true) => {
                CheckReport::fail(id, Witness::new("residual", res.to_string(), "0"))
            }
            (Membership::NotMember(res), false) => {
                CheckReport::pass(id).with_note(format!("not a member, residual {res}"))
            }
            (Membership::Refused { cap, needed }, _) => CheckReport::error(
                id,
                format!("refused: basis of {needed} exceeds cap {cap}"),
            ),
        };
        result = Some(m);
        r
    });
    (report, result.expect("closure ran"))
}
