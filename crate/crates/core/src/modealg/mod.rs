//! The abstract mode algebra on generators `l_ij^k`.
//!
//! Quadratic mode relations are read off the RLL equations after clearing
//! the R-matrix denominators; the generating series are
//! `l_ij^+(u) = δ_ij - ħ Σ_{k≥0} l_ij^k u^{-k-1}` and
//! `l_ij^-(u) = δ_ij + ħ Σ_{k<0} l_ij^k u^{-k-1}`.

pub mod ideal;
pub mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::dist::{expand_matrix, Region};
use crate::evalrep::build_eval_l;
use crate::field::{rat, Polynomial, RationalFunction, Var};
use crate::grade::{GradedMatrix, GradedSpace};
use crate::report::{timed, CheckReport, Witness};
use crate::rmat::r_matrix_at;

pub use ideal::{
    ideal_membership, membership_report, verify_certificate, Certificate, Membership, DEFAULT_CAP,
};
pub use parse::{parse_free_element, ParseElementError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeGenerator {
    pub i: u8,
    pub j: u8,
    pub k: i64,
}

impl ModeGenerator {
    pub fn new(i: u8, j: u8, k: i64) -> Self {
        ModeGenerator { i, j, k }
    }

    pub fn parity(&self) -> u8 {
        (u8::from(self.i == 2) + u8::from(self.j == 2)) % 2
    }
}

impl fmt::Display for ModeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}{}^{}", self.i, self.j, self.k)
    }
}

/// A word in the generators. Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(pub Vec<ModeGenerator>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self) -> u8 {
        self.0.iter().map(|g| g.parity()).sum::<u8>() % 2
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        FreeWord(v)
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite combination of words with coefficients in `(ħ, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    pub terms: BTreeMap<FreeWord, RationalFunction>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: RationalFunction) -> Self {
        Self::term(FreeWord::empty(), c)
    }

    pub fn term(w: FreeWord, c: RationalFunction) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn generator(g: ModeGenerator) -> Self {
        Self::term(FreeWord(vec![g]), RationalFunction::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: FreeWord, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(x) => &x + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(FreeWord::len).max().unwrap_or(0)
    }

    /// The largest word in the term order.
    pub fn leading(&self) -> Option<(&FreeWord, &RationalFunction)> {
        self.terms.iter().next_back()
    }

    pub fn parities(&self) -> Vec<u8> {
        let mut p: Vec<u8> = self.terms.keys().map(FreeWord::parity).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    pub fn plus(&self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, rhs: &FreeElement) -> FreeElement {
        self.plus(&rhs.scaled(&RationalFunction::from_int(-1)))
    }

    pub fn scaled(&self, c: &RationalFunction) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn times(&self, rhs: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// `a·self·b` for words `a`, `b`.
    pub fn sandwich(&self, a: &FreeWord, b: &FreeWord) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            out.add_term(a.concat(w).concat(b), c.clone());
        }
        out
    }

    pub fn map_coefficients<F>(&self, mut f: F) -> Result<FreeElement, crate::field::FieldError>
    where
        F: FnMut(&RationalFunction) -> Result<RationalFunction, crate::field::FieldError>,
    {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Generators that occur in some word.
    pub fn generators(&self) -> Vec<ModeGenerator> {
        let mut g: Vec<ModeGenerator> = self.terms.keys().flat_map(|w| w.0.iter().copied()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else if w.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    PlusPlus,
    MinusMinus,
    PlusMinus,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::PlusPlus, Family::MinusMinus, Family::PlusMinus];

    pub fn name(self) -> &'static str {
        match self {
            Family::PlusPlus => "plus-plus",
            Family::MinusMinus => "minus-minus",
            Family::PlusMinus => "plus-minus",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    fn signs(self) -> (bool, bool) {
        match self {
            Family::PlusPlus => (true, true),
            Family::MinusMinus => (false, false),
            Family::PlusMinus => (true, false),
        }
    }
}

/// Generators `l_ij^k` of one sign inside the mode window.
pub fn generators(plus: bool, n: i64) -> Vec<ModeGenerator> {
    let modes: Vec<i64> = if plus { (0..=n).collect() } else { (-n..=-1).collect() };
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for &k in &modes {
                out.push(ModeGenerator::new(i, j, k));
            }
        }
    }
    out
}

/// Truncated generating series of `l_ij^±` as exponent → coefficient.
fn entry_series(i: u8, j: u8, plus: bool, n: i64) -> BTreeMap<i64, FreeElement> {
    let h = RationalFunction::var(Var::H);
    let mut s = BTreeMap::new();
    if i == j {
        s.insert(0, FreeElement::scalar(RationalFunction::one()));
    }
    let (modes, c): (Vec<i64>, RationalFunction) = if plus {
        ((0..=n).collect(), -&h)
    } else {
        ((-n..=-1).collect(), h)
    };
    for k in modes {
        let g = FreeElement::generator(ModeGenerator::new(i, j, k)).scaled(&c);
        let e = s.entry(-k - 1).or_insert_with(FreeElement::zero);
        *e = e.plus(&g);
    }
    s
}

/// Whether the series coefficient at exponent `e` is exactly known.
fn known(plus: bool, n: i64, e: i64) -> bool {
    if plus {
        e >= -n - 1
    } else {
        e <= n - 1
    }
}

/// Polynomial in `u`, `v` as `(u power, v power) → coefficient in (ħ, c)`.
type Bivariate = BTreeMap<(i64, i64), RationalFunction>;

fn bivariate(p: &Polynomial) -> Bivariate {
    let mut out = BTreeMap::new();
    for (a, pa) in p.to_univariate(Var::U).into_iter().enumerate() {
        for (b, pb) in pa.to_univariate(Var::V).into_iter().enumerate() {
            if !pb.is_zero() {
                out.insert((a as i64, b as i64), RationalFunction::from_poly(pb));
            }
        }
    }
    out
}

/// The cleared R-matrices `(P_L, P_R)` of one family, entries polynomial in
/// `u, v, ħ, c`.
fn cleared_r(family: Family, central: &RationalFunction) -> (Vec<Vec<Bivariate>>, Vec<Vec<Bivariate>>) {
    let u = RationalFunction::var(Var::U);
    let v = RationalFunction::var(Var::V);
    let h = RationalFunction::var(Var::H);
    let x = &u - &v;
    let (xl, xr) = match family {
        Family::PlusMinus => {
            let s = &(&h * central).scale(&rat(1, 2));
            (&x - s, &x + s)
        }
        _ => (x.clone(), x),
    };
    let (dl, dr) = (&xl + &h, &xr + &h);
    let both = match family {
        Family::PlusMinus => &dl * &dr,
        _ => dl.clone(),
    };
    let grid = |m: GradedMatrix| -> Vec<Vec<Bivariate>> {
        (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| {
                        let e = m.get(a, b);
                        assert!(e.is_polynomial(), "cleared R entry is polynomial");
                        bivariate(e.numerator())
                    })
                    .collect()
            })
            .collect()
    };
    (grid(r_matrix_at(&xl).scale(&both)), grid(r_matrix_at(&xr).scale(&both)))
}

fn eta(a: usize, b: usize) -> RationalFunction {
    RationalFunction::from_int(if a == 1 && b == 1 { -1 } else { 1 })
}

/// Product series `l_{ab}(u) l_{cd}(v)` or `l_{cd}(v) l_{ab}(u)`, keyed by
/// `(u exponent, v exponent)`.
fn pair_series(
    u_entry: &BTreeMap<i64, FreeElement>,
    v_entry: &BTreeMap<i64, FreeElement>,
    u_first: bool,
) -> BTreeMap<(i64, i64), FreeElement> {
    let mut out = BTreeMap::new();
    for (&eu, x) in u_entry {
        for (&ev, y) in v_entry {
            let p = if u_first { x.times(y) } else { y.times(x) };
            if !p.is_zero() {
                out.insert((eu, ev), p);
            }
        }
    }
    out
}

/// One side of a component relation: a sum of `coeff · P(u,v) · pair`.
struct Side {
    pieces: Vec<(RationalFunction, Bivariate, BTreeMap<(i64, i64), FreeElement>)>,
}

impl Side {
    fn coefficient(&self, eu: i64, ev: i64, plus: (bool, bool), n: i64) -> Option<FreeElement> {
        let mut acc = FreeElement::zero();
        for (c, p, pair) in &self.pieces {
            for (&(pu, pv), pc) in p {
                let (su, sv) = (eu - pu, ev - pv);
                if !known(plus.0, n, su) || !known(plus.1, n, sv) {
                    return None;
                }
                if let Some(x) = pair.get(&(su, sv)) {
                    acc = acc.plus(&x.scaled(&(c * pc)));
                }
            }
        }
        Some(acc)
    }
}

/// A relation extracted from one RLL component at one mode pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractedRelation {
    pub family: Family,
    /// Auxiliary row and column on `V⊗V`, 1-based pairs.
    pub component: ((u8, u8), (u8, u8)),
    /// Exponents of `u` and `v` whose coefficient this is.
    pub exponents: (i64, i64),
    pub element: FreeElement,
}

impl ExtractedRelation {
    pub fn label(&self) -> String {
        let ((a, b), (c, d)) = self.component;
        format!(
            "{}[({a}{b}),({c}{d})] u^{} v^{}",
            self.family.name(),
            self.exponents.0,
            self.exponents.1
        )
    }
}

/// Coefficients of `u^a v^b` of the cleared RLL relations that are exact for
/// generators with `|k| ≤ n`. Zero coefficients are dropped.
pub fn extract_mode_relations(family: Family, n: i64) -> Vec<ExtractedRelation> {
    extract_components(family, n, false, &RationalFunction::var(Var::C))
}

/// Like [`extract_mode_relations`], keeping zero coefficients too.
pub fn extract_all_components(family: Family, n: i64) -> Vec<ExtractedRelation> {
    extract_components(family, n, true, &RationalFunction::var(Var::C))
}

fn extract_components(
    family: Family,
    n: i64,
    keep_zero: bool,
    central: &RationalFunction,
) -> Vec<ExtractedRelation> {
    let plus = family.signs();
    let (pl, pr) = cleared_r(family, central);
    let series = |sign: bool| -> Vec<Vec<BTreeMap<i64, FreeElement>>> {
        (1..=2u8)
            .map(|i| (1..=2u8).map(|j| entry_series(i, j, sign, n)).collect())
            .collect()
    };
    let (su, sv) = (series(plus.0), series(plus.1));
    let idx = |x: usize| (x / 2, x % 2);
    let range = |sign: bool, deg: i64| -> Vec<i64> {
        if sign {
            (-n - 1..=deg).collect()
        } else {
            (0..=n - 1 + deg).collect()
        }
    };
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let (a1, a2) = idx(a);
            let (b1, b2) = idx(b);
            let mut lhs = Side { pieces: Vec::new() };
            for c in 0..4 {
                if pl[a][c].is_empty() {
                    continue;
                }
                let (c1, c2) = idx(c);
                let coeff = &eta(b1, c2) * &eta(b1, b2);
                let pair = pair_series(&su[c1][b1], &sv[c2][b2], true);
                lhs.pieces.push((coeff, pl[a][c].clone(), pair));
            }
            let mut rhs = Side { pieces: Vec::new() };
            for c2 in 0..2 {
                for d1 in 0..2 {
                    let d = d1 * 2 + c2;
                    if pr[d][b].is_empty() {
                        continue;
                    }
                    let coeff = &eta(a1, a2) * &eta(a1, c2);
                    let pair = pair_series(&su[a1][d1], &sv[a2][c2], false);
                    rhs.pieces.push((coeff, pr[d][b].clone(), pair));
                }
            }
            let deg = |side: &Side, first: bool| {
                side.pieces
                    .iter()
                    .flat_map(|(_, p, _)| p.keys())
                    .map(|&(x, y)| if first { x } else { y })
                    .max()
                    .unwrap_or(0)
            };
            let du = deg(&lhs, true).max(deg(&rhs, true));
            let dv = deg(&lhs, false).max(deg(&rhs, false));
            for eu in range(plus.0, du) {
                for ev in range(plus.1, dv) {
                    let (Some(l), Some(r)) = (
                        lhs.coefficient(eu, ev, plus, n),
                        rhs.coefficient(eu, ev, plus, n),
                    ) else {
                        continue;
                    };
                    let element = l.minus(&r);
                    if element.is_zero() && !keep_zero {
                        continue;
                    }
                    out.push(ExtractedRelation {
                        family,
                        component: (
                            (a1 as u8 + 1, a2 as u8 + 1),
                            (b1 as u8 + 1, b2 as u8 + 1),
                        ),
                        exponents: (eu, ev),
                        element,
                    });
                }
            }
        }
    }
    out
}

/// Distinct nonzero relation elements, in extraction order.
pub fn relation_elements(rels: &[ExtractedRelation]) -> Vec<FreeElement> {
    let mut out: Vec<FreeElement> = Vec::new();
    for r in rels {
        if !r.element.is_zero() && !out.contains(&r.element) {
            out.push(r.element.clone());
        }
    }
    out
}

/// Mode operators of the evaluation module at `w` and zero central charge.
#[derive(Clone, Debug)]
pub struct ModeOperators {
    values: BTreeMap<ModeGenerator, GradedMatrix>,
    space: GradedSpace,
}

impl ModeOperators {
    /// Reads `l_ij^k` for `|k| ≤ n` off the expansions of the evaluation L.
    pub fn evaluation(w: Var, n: i64) -> Result<ModeOperators, crate::dist::DistError> {
        let l = build_eval_l(w);
        let h = RationalFunction::var(Var::H);
        let hinv = h.inv()?;
        let mut values = BTreeMap::new();
        for i in 0..2 {
            for j in 0..2 {
                let m = l.entry(i, j);
                let plus = expand_matrix(m, Var::U, Region::Infinity, n + 1)?;
                let minus = expand_matrix(m, Var::U, Region::Zero, n)?;
                let zero = GradedMatrix::zero_square(&l.quantum);
                for k in 0..=n {
                    let c = plus.coeff(-k - 1).flatten().unwrap_or(&zero);
                    values.insert(ModeGenerator::new(i as u8 + 1, j as u8 + 1, k), c.scale(&-&hinv));
                }
                for k in -n..=-1 {
                    let mut c = minus.coeff(-k - 1).flatten().unwrap_or(&zero).clone();
                    if k == -1 && i == j {
                        c = &c - &GradedMatrix::identity(&l.quantum);
                    }
                    values.insert(ModeGenerator::new(i as u8 + 1, j as u8 + 1, k), c.scale(&hinv));
                }
            }
        }
        Ok(ModeOperators {
            values,
            space: l.quantum,
        })
    }

    pub fn get(&self, g: &ModeGenerator) -> Option<&GradedMatrix> {
        self.values.get(g)
    }
}

/// Evaluates an element on the evaluation module at `c = 0`. Fails with the
/// first generator outside the window.
pub fn specialize_to_rep(
    elem: &FreeElement,
    ops: &ModeOperators,
) -> Result<GradedMatrix, ModeGenerator> {
    let mut sum = GradedMatrix::zero_square(&ops.space);
    let bind = [(Var::C, RationalFunction::zero())];
    for (w, c) in &elem.terms {
        let mut m = GradedMatrix::identity(&ops.space);
        for g in &w.0 {
            m = &m * ops.get(g).ok_or(*g)?;
        }
        let c = c.substitute(&bind).expect("polynomial coefficient");
        sum = &sum + &m.scale(&c);
    }
    Ok(sum)
}

/// Every extracted relation of `family` vanishes on the evaluation module.
pub fn check_soundness(family: Family, n: i64) -> CheckReport {
    let id = format!("ideal.soundness[{}]", family.name());
    timed(|| {
        let ops = match ModeOperators::evaluation(Var::W, n) {
            Ok(o) => o,
            Err(e) => return CheckReport::error(&id, e),
        };
        for r in extract_mode_relations(family, n) {
            match specialize_to_rep(&r.element, &ops) {
                Err(g) => return CheckReport::exhausted(&id, n).with_note(format!("{g} outside window")),
                Ok(m) => {
                    if let Some((i, j)) = m.first_difference(&GradedMatrix::zero_square(&ops.space)) {
                        return CheckReport::fail(
                            &id,
                            Witness::new(format!("{} [{i},{j}]", r.label()), m.get(i, j), "0"),
                        );
                    }
                }
            }
        }
        CheckReport::pass(&id).with_window(n)
    })
}

/// Every extracted relation is parity-homogeneous.
pub fn check_parity(family: Family, n: i64) -> CheckReport {
    let id = format!("ideal.parity[{}]", family.name());
    timed(|| {
        let bad = extract_mode_relations(family, n)
            .into_iter()
            .find(|r| r.element.parities().len() > 1);
        CheckReport::from_witness(
            &id,
            bad.map(|r| Witness::new(r.label(), r.element.to_string(), "homogeneous")),
        )
    })
}

/// Mixed relations at `c = 0` coincide with the relations of the unshifted
/// mixed RLL equation.
pub fn check_c_coherence(n: i64) -> CheckReport {
    let id = "ideal.c-coherence";
    timed(|| {
        let bind = [(Var::C, RationalFunction::zero())];
        let shifted = extract_all_components(Family::PlusMinus, n);
        let plain = extract_unshifted_mixed(n);
        if shifted.len() != plain.len() {
            return CheckReport::fail(
                id,
                Witness::new("relation count", shifted.len(), plain.len()),
            );
        }
        for (a, b) in shifted.iter().zip(&plain) {
            let at0 = a
                .element
                .map_coefficients(|c| c.substitute(&bind))
                .expect("polynomial coefficients");
            if at0 != b.element || a.exponents != b.exponents || a.component != b.component {
                return CheckReport::fail(
                    id,
                    Witness::new(a.label(), at0.to_string(), b.element.to_string()),
                );
            }
        }
        CheckReport::pass(id).with_window(n)
    })
}

/// The mixed RLL equation with `R(u-v)` on both sides, cleared by
/// `(u-v+ħ)²` like the shifted one.
fn extract_unshifted_mixed(n: i64) -> Vec<ExtractedRelation> {
    extract_components(Family::PlusMinus, n, true, &RationalFunction::zero())
}

/// The built-in quadratic candidates of a family: commutators of `l11`
/// modes, the lowest odd squares of the plus family, and the lowest `l11`
/// mode as a non-member.
pub fn standard_candidates(family: Family, n: i64) -> Vec<(String, FreeElement, bool)> {
    let g = |i, j, k| FreeElement::generator(ModeGenerator::new(i, j, k));
    let comm = |m, p| g(1, 1, m).times(&g(1, 1, p)).minus(&g(1, 1, p).times(&g(1, 1, m)));
    let plus: Vec<i64> = (0..=n).collect();
    let minus: Vec<i64> = (-n..=-1).rev().collect();
    let mut pairs = Vec::new();
    match family {
        Family::PlusPlus | Family::MinusMinus => {
            let modes = if family == Family::PlusPlus { &plus } else { &minus };
            for (a, &m) in modes.iter().enumerate() {
                for &p in &modes[a + 1..] {
                    pairs.push((m, p));
                }
            }
        }
        Family::PlusMinus => {
            for &m in &plus {
                for &p in &minus {
                    pairs.push((m, p));
                }
            }
        }
    }
    let mut out: Vec<(String, FreeElement, bool)> = pairs
        .into_iter()
        .map(|(m, p)| (format!("ideal.{}.comm-l11[{m},{p}]", family.name()), comm(m, p), true))
        .collect();
    if family == Family::PlusPlus {
        for (i, j) in [(1, 2), (2, 1)] {
            let sq = g(i, j, 0).times(&g(i, j, 0));
            out.push((format!("ideal.{}.square-l{i}{j}[0]", family.name()), sq, true));
        }
    }
    let lowest = if family == Family::MinusMinus { -1 } else { 0 };
    out.push((format!("ideal.{}.control-l11[{lowest}]", family.name()), g(1, 1, lowest), false));
    out
}

/// Soundness, parity and the standard candidates of one family.
pub fn ideal_suite(family: Family, n: i64, degree: usize, cap: usize) -> Vec<CheckReport> {
    let rels = relation_elements(&extract_mode_relations(family, n));
    let mut out = vec![check_soundness(family, n), check_parity(family, n)];
    for (id, cand, member) in standard_candidates(family, n) {
        out.push(membership_report(&id, &cand, &rels, degree, cap, member).0);
    }
    if family == Family::PlusMinus {
        out.push(check_c_coherence(n));
    }
    out
}

/// Adds 1 to one coefficient of the first extracted relation where that
/// changes its value on the evaluation module.
pub fn tampered_relation(family: Family, n: i64) -> Option<(ExtractedRelation, GradedMatrix)> {
    let ops = ModeOperators::evaluation(Var::W, n).ok()?;
    for r in extract_mode_relations(family, n) {
        for w in r.element.terms.keys() {
            let mut t = r.clone();
            t.element.add_term(w.clone(), RationalFunction::one());
            if let Ok(m) = specialize_to_rep(&t.element, &ops) {
                if !m.is_zero() {
                    return Some((t, m));
                }
            }
        }
    }
    None
}
