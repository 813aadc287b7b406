//! Checking relations in a representation.
//!
//! A relation without distributions is compared as an identity of rational
//! matrix functions. Relations with `δ`, bilateral currents or mixed
//! expansion regions are compared mode by mode on a finite window.

pub mod eval;
pub mod hopf;
pub mod suite;

use crate::dist::ModeTable;
use crate::dsl::{AtomName, Relation};
use crate::field::Var;
use crate::grade::GradedMatrix;
use crate::report::{timed, CheckReport, Witness};

pub use eval::{normalize, normalize_relation, NormalForm, RelError, RepContext};

const SIGN_NOTE: &str = "lhs equals -rhs on all valid modes";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// An identity of rational functions.
    Rational,
    /// Rational shadow plus a mode comparison.
    Both,
    /// Only meaningful mode by mode.
    Distributional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteName {
    Summary,
    Derivation,
    Hopf,
    File,
}

/// Which module a relation is read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContextKind {
    Evaluation,
    TwoSite,
}

#[derive(Clone, Debug)]
pub struct SuiteRelation {
    pub id: String,
    pub suite: SuiteName,
    pub context: ContextKind,
    pub kind: RelationKind,
    /// Forces a mode comparison at this window.
    pub window: Option<i64>,
    pub relation: Relation,
}

pub fn classify(rel: &Relation) -> RelationKind {
    if rel.has_delta() {
        return RelationKind::Distributional;
    }
    let atoms = rel.atoms();
    let bilateral = atoms.iter().any(|a| {
        a.name == AtomName::X || (matches!(a.name, AtomName::E | AtomName::F) && a.sign.is_none())
    });
    let mut signs = atoms.iter().filter_map(|a| a.sign);
    let mixed = match signs.next() {
        Some(first) => signs.any(|s| s != first),
        None => false,
    };
    if bilateral || mixed {
        RelationKind::Both
    } else {
        RelationKind::Rational
    }
}

fn entry_witness(location: &str, lhs: &GradedMatrix, rhs: &GradedMatrix) -> Option<Witness> {
    lhs.first_difference(rhs).map(|(r, c)| {
        Witness::new(
            format!("{location}({},{})", r + 1, c + 1),
            lhs.get(r, c),
            rhs.get(r, c),
        )
    })
}

/// Exact comparison of the rational shadows of both sides.
pub fn rational_check(
    id: &str,
    rel: &Relation,
    ctx: &RepContext,
) -> Result<CheckReport, RelError> {
    let (l, r) = normalize_relation(rel, ctx)?;
    let (a, b) = (eval::rational_value(&l)?, eval::rational_value(&r)?);
    let mut report = CheckReport::from_witness(id, entry_witness("", &a, &b));
    if !report.passed() && !a.is_zero() && a == -&b {
        report = report.with_note("lhs equals -rhs");
    }
    Ok(report)
}

fn opposite<C: PartialEq + crate::dist::Coefficient>(
    lhs: &ModeTable<C>,
    rhs: &ModeTable<C>,
) -> bool {
    let joint = lhs.joint_valid(rhs);
    let mut nonzero = false;
    for k in &joint {
        match (lhs.values.get(k), rhs.values.get(k)) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                if a.negated() != *b {
                    return false;
                }
                nonzero = true;
            }
            _ => return false,
        }
    }
    nonzero
}

/// Mode comparison on `[-n, n]²` after clearing scalar denominators.
pub fn mode_check(
    id: &str,
    rel: &Relation,
    ctx: &RepContext,
    n: i64,
) -> Result<CheckReport, RelError> {
    let (l, r) = normalize_relation(rel, ctx)?;
    let scale = eval::common_denominator(&[&l, &r]);
    let (a, b) = (eval::mode_table(&l, &scale, n)?, eval::mode_table(&r, &scale, n)?);
    if a.joint_valid(&b).is_empty() {
        return Ok(CheckReport::exhausted(id, n));
    }
    let report = match a.first_difference(&b) {
        None => CheckReport::pass(id),
        Some((m, p)) => {
            let zero = GradedMatrix::zero_square(ctx.space());
            let x = a.values.get(&(m, p)).unwrap_or(&zero);
            let y = b.values.get(&(m, p)).unwrap_or(&zero);
            let w = entry_witness(&format!("u^{m} v^{p} "), x, y)
                .expect("tables differ at this mode");
            let report = CheckReport::fail(id, w);
            if opposite(&a, &b) {
                report.with_note(SIGN_NOTE)
            } else {
                report
            }
        }
    };
    Ok(report.with_window(n))
}

/// The evaluation and two-site modules the suites are read in.
#[derive(Clone, Debug)]
pub struct Contexts {
    pub evaluation: RepContext,
    pub two_site: RepContext,
}

impl Contexts {
    pub fn standard() -> Result<Contexts, RelError> {
        Ok(Contexts {
            evaluation: RepContext::evaluation(Var::W)?,
            two_site: RepContext::two_site(Var::W1, Var::W2)?,
        })
    }

    pub fn get(&self, kind: ContextKind) -> &RepContext {
        match kind {
            ContextKind::Evaluation => &self.evaluation,
            ContextKind::TwoSite => &self.two_site,
        }
    }
}

fn check_in(entry: &SuiteRelation, ctx: &RepContext, n: i64) -> Result<CheckReport, RelError> {
    let rational = match entry.kind {
        RelationKind::Distributional => None,
        _ => Some(rational_check(&entry.id, &entry.relation, ctx)?),
    };
    if let (Some(r), None) = (&rational, entry.window) {
        if !r.passed() {
            return Ok(r.clone());
        }
    }
    let window = match (entry.kind, entry.window) {
        (_, Some(w)) => w,
        (RelationKind::Rational, None) => return Ok(rational.expect("rational kind")),
        (_, None) => n,
    };
    let modes = mode_check(&entry.id, &entry.relation, ctx, window)?;
    match rational {
        Some(r) if !r.passed() => {
            let note = format!("mode check at N={window}: {}", modes.verdict.as_str());
            let note = match &r.note {
                Some(n) => format!("{n}; {note}"),
                None => note,
            };
            Ok(r.with_window(window).with_note(note))
        }
        _ => Ok(modes),
    }
}

/// Checks one catalogue entry; `n` is the default mode window.
pub fn check_relation(entry: &SuiteRelation, ctx: &RepContext, n: i64) -> CheckReport {
    timed(|| check_in(entry, ctx, n).unwrap_or_else(|e| CheckReport::error(&entry.id, e)))
}

/// Checks one catalogue entry in its own module.
pub fn check_entry(entry: &SuiteRelation, contexts: &Contexts, n: i64) -> CheckReport {
    check_relation(entry, contexts.get(entry.context), n)
}
