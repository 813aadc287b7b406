//! Evaluation of relation syntax trees in a representation.
//!
//! Expressions are first brought to a normal form: a sum of terms, each a
//! scalar coefficient, an optional `δ(u-v)`, and an ordered list of
//! operator factors that each depend on one spectral variable and carry an
//! expansion region. The rational shadow ignores regions; the mode check
//! expands every factor in its region.

use std::collections::BTreeMap;

use crate::dist::{evaluate_terms, expand_matrix, Factor, ModeTable, ProductTerm, Region};
use crate::dsl::{Arg, Atom, AtomName, Constant, Expr, Relation};
use crate::evalrep::{
    build_eval_l, gauss_decompose, two_site_l, CurrentSet, EvalError, LOperator, Sign,
};
use crate::field::{gcd, Polynomial, RationalFunction, Var};
use crate::grade::{graded_kron, GradedMatrix, GradedSpace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Dist(#[from] crate::dist::DistError),
}

impl From<crate::field::FieldError> for RelError {
    fn from(e: crate::field::FieldError) -> Self {
        RelError::Eval(EvalError::from(e))
    }
}

impl From<crate::grade::GradeError> for RelError {
    fn from(e: crate::grade::GradeError) -> Self {
        RelError::Eval(EvalError::from(e))
    }
}

/// Symbolic data of one module: its L-operator and Gauss currents, both as
/// functions of `u`.
#[derive(Clone, Debug)]
pub struct Site {
    pub l: LOperator,
    pub currents: CurrentSet,
}

impl Site {
    pub fn from_l(l: LOperator) -> Result<Site, EvalError> {
        let currents = gauss_decompose(&l)?;
        Ok(Site { l, currents })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.l.quantum
    }
}

/// Where atoms are evaluated: one module, or a two-site module whose tensor
/// slots refer to the individual sites.
#[derive(Clone, Debug)]
pub struct RepContext {
    pub main: Site,
    pub slots: Option<(Site, Site)>,
    pub central: RationalFunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Main,
    Left,
    Right,
}

impl RepContext {
    /// The evaluation module at `w`.
    pub fn evaluation(w: Var) -> Result<RepContext, EvalError> {
        Ok(RepContext {
            main: Site::from_l(build_eval_l(w))?,
            slots: None,
            central: RationalFunction::zero(),
        })
    }

    /// The tensor product of evaluation modules at `w1` and `w2`.
    pub fn two_site(w1: Var, w2: Var) -> Result<RepContext, EvalError> {
        Ok(RepContext {
            main: Site::from_l(two_site_l(w1, w2))?,
            slots: Some((Site::from_l(build_eval_l(w1))?, Site::from_l(build_eval_l(w2))?)),
            central: RationalFunction::zero(),
        })
    }

    /// The same module with the current `e` replaced by `-e`.
    pub fn with_flipped_e(mut self) -> RepContext {
        self.main.currents.e = -&self.main.currents.e;
        if let Some((a, b)) = &mut self.slots {
            a.currents.e = -&a.currents.e;
            b.currents.e = -&b.currents.e;
        }
        self
    }

    pub fn space(&self) -> &GradedSpace {
        self.main.space()
    }

    fn site(&self, slot: Slot) -> Result<&Site, RelError> {
        match (slot, &self.slots) {
            (Slot::Main, _) => Ok(&self.main),
            (Slot::Left, Some((a, _))) => Ok(a),
            (Slot::Right, Some((_, b))) => Ok(b),
            _ => Err(RelError::Unsupported(
                "tensor slots need a two-site module".into(),
            )),
        }
    }
}

#[derive(Clone, Debug)]
struct OpFactor {
    var: Var,
    region: Region,
    value: GradedMatrix,
}

#[derive(Clone, Debug)]
struct Term {
    coeff: RationalFunction,
    delta: bool,
    factors: Vec<OpFactor>,
}

impl Term {
    fn scalar(c: RationalFunction) -> Term {
        Term {
            coeff: c,
            delta: false,
            factors: Vec::new(),
        }
    }

    /// The common `(var, region)` of all factors, if they share one.
    fn block_key(&self) -> Option<Option<(Var, Region)>> {
        let mut key = None;
        for f in &self.factors {
            match key {
                None => key = Some((f.var, f.region)),
                Some(k) if k == (f.var, f.region) => {}
                Some(_) => return None,
            }
        }
        Some(key)
    }

    fn product_value(&self, space: &GradedSpace) -> GradedMatrix {
        let mut m = GradedMatrix::identity(space);
        for f in &self.factors {
            m = &m * &f.value;
        }
        m
    }
}

fn region_of(sign: Sign) -> Region {
    match sign {
        Sign::Plus => Region::Infinity,
        Sign::Minus => Region::Zero,
    }
}

fn arg_value(arg: &Arg, central: &RationalFunction) -> RationalFunction {
    let h = RationalFunction::var(Var::H);
    let quarter = RationalFunction::constant(crate::field::rat(i64::from(arg.central), 4));
    let shift = RationalFunction::constant(arg.shift.clone());
    let offset = &(&(&quarter * central) + &shift) * &h;
    &RationalFunction::var(arg.var) + &offset
}

fn shifted(arg: &Arg, central: i8, half: bool) -> Arg {
    let mut a = arg.clone();
    a.central += central;
    if half {
        a.shift += crate::field::rat(1, 2);
    }
    a
}

fn at(m: &GradedMatrix, x: &RationalFunction) -> Result<GradedMatrix, RelError> {
    Ok(m.substitute(&[(Var::U, x.clone())])?)
}

struct Normalizer<'a> {
    ctx: &'a RepContext,
}

impl Normalizer<'_> {
    fn factor(&self, var: Var, sign: Sign, value: GradedMatrix) -> Vec<Term> {
        vec![Term {
            coeff: RationalFunction::one(),
            delta: false,
            factors: vec![OpFactor {
                var,
                region: region_of(sign),
                value,
            }],
        }]
    }

    fn atom(&self, slot: Slot, a: &Atom) -> Result<Vec<Term>, RelError> {
        let site = self.ctx.site(slot)?;
        let c = &site.currents;
        let central = &self.ctx.central;
        let x = arg_value(&a.arg, central);
        let h = RationalFunction::var(Var::H);
        let half = &h * &RationalFunction::constant(crate::field::rat(1, 2));
        let var = a.arg.var;
        let bilateral = |this: &Self, cur: &GradedMatrix, plus: Arg, minus: Arg| -> Result<Vec<Term>, RelError> {
            let p = at(cur, &arg_value(&plus, central))?;
            let m = at(cur, &arg_value(&minus, central))?;
            let mut t = this.factor(var, Sign::Plus, p);
            let mut s = this.factor(var, Sign::Minus, m);
            s[0].coeff = RationalFunction::from_int(-1);
            t.append(&mut s);
            Ok(t)
        };
        match (a.name, a.sign) {
            (AtomName::K1, Some(s)) => Ok(self.factor(var, s, at(&c.k1, &x)?)),
            (AtomName::K2, Some(s)) => Ok(self.factor(var, s, at(&c.k2, &x)?)),
            (AtomName::SmallE, Some(s)) => Ok(self.factor(var, s, at(&c.e, &x)?)),
            (AtomName::SmallF, Some(s)) => Ok(self.factor(var, s, at(&c.f, &x)?)),
            (AtomName::K, Some(s)) => {
                let y = &x + &half;
                let v = &at(&c.k1, &y)?.inverse()? * &at(&c.k2, &y)?;
                Ok(self.factor(var, s, v))
            }
            (AtomName::H, Some(s)) => {
                let v = &at(&c.k1, &(&x - &half))? * &at(&c.k2, &(&x + &half))?;
                Ok(self.factor(var, s, v))
            }
            (AtomName::E, Some(s)) => Ok(self.factor(var, s, at(&c.e, &(&x + &half))?)),
            (AtomName::F, Some(s)) => Ok(self.factor(var, s, at(&c.f, &(&x + &half))?)),
            (AtomName::L(i, j), Some(s)) => {
                let m = at(site.l.entry(i as usize - 1, j as usize - 1), &x)?;
                Ok(self.factor(var, s, m))
            }
            (AtomName::X, Some(Sign::Plus)) => bilateral(
                self,
                &c.e,
                shifted(&a.arg, -1, false),
                shifted(&a.arg, 1, false),
            ),
            (AtomName::X, Some(Sign::Minus)) => bilateral(
                self,
                &c.f,
                shifted(&a.arg, 1, false),
                shifted(&a.arg, -1, false),
            ),
            (AtomName::E, None) => bilateral(
                self,
                &c.e,
                shifted(&a.arg, -1, true),
                shifted(&a.arg, 1, true),
            ),
            (AtomName::F, None) => bilateral(
                self,
                &c.f,
                shifted(&a.arg, 1, true),
                shifted(&a.arg, -1, true),
            ),
            (name, None) => Err(RelError::Unsupported(format!("atom {name} needs a sign"))),
        }
    }

    fn expr(&self, slot: Slot, e: &Expr) -> Result<Vec<Term>, RelError> {
        let central = &self.ctx.central;
        Ok(match e {
            Expr::Num(n) => vec![Term::scalar(RationalFunction::constant(
                num_rational::BigRational::from_integer(n.clone()),
            ))],
            Expr::Const(Constant::Hbar) => vec![Term::scalar(RationalFunction::var(Var::H))],
            Expr::Const(Constant::Central) => vec![Term::scalar(central.clone())],
            Expr::Spectral { var, central: k } => {
                let arg = Arg {
                    central: *k,
                    ..Arg::plain(*var)
                };
                vec![Term::scalar(arg_value(&arg, central))]
            }
            Expr::Atom(a) => self.atom(slot, a)?,
            Expr::Delta(a, b) => {
                let (x, y) = (arg_value(a, central), arg_value(b, central));
                let plain = &RationalFunction::var(a.var) - &RationalFunction::var(b.var);
                if a.var == b.var || &x - &y != plain {
                    return Err(RelError::Unsupported(
                        "delta arguments must be distinct variables with equal shifts".into(),
                    ));
                }
                vec![Term {
                    coeff: RationalFunction::one(),
                    delta: true,
                    factors: Vec::new(),
                }]
            }
            Expr::Add(a, b) => {
                let mut t = self.expr(slot, a)?;
                t.extend(self.expr(slot, b)?);
                t
            }
            Expr::Sub(a, b) => {
                let mut t = self.expr(slot, a)?;
                t.extend(negate(self.expr(slot, b)?));
                t
            }
            Expr::Neg(a) => negate(self.expr(slot, a)?),
            Expr::Mul(a, b) => multiply(&self.expr(slot, a)?, &self.expr(slot, b)?)?,
            Expr::Div(a, b) => {
                let d = scalar_value(&self.expr(slot, b)?)?;
                let inv = d.inv()?;
                self.expr(slot, a)?
                    .into_iter()
                    .map(|mut t| {
                        t.coeff = &t.coeff * &inv;
                        t
                    })
                    .collect()
            }
            Expr::Pow(a, n) => {
                let base = self.expr(slot, a)?;
                let mut acc = vec![Term::scalar(RationalFunction::one())];
                for _ in 0..*n {
                    acc = multiply(&acc, &base)?;
                }
                acc
            }
            Expr::Inv(a) => self.inverse(slot, &self.expr(slot, a)?)?,
            Expr::Comm(a, b) | Expr::Anti(a, b) => {
                let (x, y) = (self.expr(slot, a)?, self.expr(slot, b)?);
                let mut t = multiply(&x, &y)?;
                let yx = multiply(&y, &x)?;
                if matches!(e, Expr::Comm(..)) {
                    t.extend(negate(yx));
                } else {
                    t.extend(yx);
                }
                t
            }
            Expr::Tensor(a, b) => {
                if slot != Slot::Main {
                    return Err(RelError::Unsupported("nested tensor".into()));
                }
                let left = self.expr(Slot::Left, a)?;
                let right = self.expr(Slot::Right, b)?;
                self.tensor(&left, &right)?
            }
        })
    }

    /// Collapses a region-pure sum into one factor and inverts it.
    fn inverse(&self, slot: Slot, terms: &[Term]) -> Result<Vec<Term>, RelError> {
        if terms.iter().all(|t| t.factors.is_empty() && !t.delta) {
            return Ok(vec![Term::scalar(scalar_value(terms)?.inv()?)]);
        }
        let mut key = None;
        for t in terms {
            let k = t
                .block_key()
                .filter(|_| !t.delta)
                .ok_or_else(|| RelError::Unsupported("inverse of a mixed expression".into()))?;
            match (key, k) {
                (_, None) => {}
                (None, Some(k)) => key = Some(k),
                (Some(a), Some(b)) if a == b => {}
                _ => return Err(RelError::Unsupported("inverse of a mixed expression".into())),
            }
        }
        let (var, region) = key.expect("some factor present");
        let other = if var == Var::U { Var::V } else { Var::U };
        let space = self.ctx.site(slot)?.space().clone();
        let mut sum = GradedMatrix::zero_square(&space);
        for t in terms {
            if t.coeff.contains(other) {
                return Err(RelError::Unsupported("inverse of a mixed expression".into()));
            }
            sum = &sum + &t.product_value(&space).scale(&t.coeff);
        }
        Ok(vec![Term {
            coeff: RationalFunction::one(),
            delta: false,
            factors: vec![OpFactor {
                var,
                region,
                value: sum.inverse()?,
            }],
        }])
    }

    fn tensor(&self, left: &[Term], right: &[Term]) -> Result<Vec<Term>, RelError> {
        let (ls, rs) = match &self.ctx.slots {
            Some((a, b)) => (a.space().clone(), b.space().clone()),
            None => return Err(RelError::Unsupported("tensor slots need a two-site module".into())),
        };
        let mut out = Vec::new();
        for a in left {
            for b in right {
                if a.delta || b.delta {
                    return Err(RelError::Unsupported("delta inside a tensor slot".into()));
                }
                let (ka, kb) = match (a.block_key(), b.block_key()) {
                    (Some(x), Some(y)) => (x, y),
                    _ => return Err(RelError::Unsupported("mixed tensor slot".into())),
                };
                let key = match (ka, kb) {
                    (None, None) => None,
                    (Some(k), None) | (None, Some(k)) => Some(k),
                    (Some(x), Some(y)) if x == y => Some(x),
                    _ => return Err(RelError::Unsupported("tensor slots in different regions".into())),
                };
                let coeff = &a.coeff * &b.coeff;
                let factors = match key {
                    None => Vec::new(),
                    Some((var, region)) => vec![OpFactor {
                        var,
                        region,
                        value: graded_kron(&a.product_value(&ls), &b.product_value(&rs)),
                    }],
                };
                out.push(Term {
                    coeff,
                    delta: false,
                    factors,
                });
            }
        }
        Ok(out)
    }
}

fn negate(terms: Vec<Term>) -> Vec<Term> {
    terms
        .into_iter()
        .map(|mut t| {
            t.coeff = -&t.coeff;
            t
        })
        .collect()
}

fn multiply(a: &[Term], b: &[Term]) -> Result<Vec<Term>, RelError> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            if x.delta && y.delta {
                return Err(RelError::Unsupported("product of two deltas".into()));
            }
            let mut factors = x.factors.clone();
            factors.extend(y.factors.iter().cloned());
            out.push(Term {
                coeff: &x.coeff * &y.coeff,
                delta: x.delta || y.delta,
                factors,
            });
        }
    }
    Ok(out)
}

fn scalar_value(terms: &[Term]) -> Result<RationalFunction, RelError> {
    let mut s = RationalFunction::zero();
    for t in terms {
        if !t.factors.is_empty() || t.delta {
            return Err(RelError::Unsupported("expected a scalar".into()));
        }
        s = &s + &t.coeff;
    }
    Ok(s)
}

/// Multiplies neighbouring factors that share a variable and region.
fn merge_blocks(mut terms: Vec<Term>) -> Vec<Term> {
    for t in &mut terms {
        let mut merged: Vec<OpFactor> = Vec::with_capacity(t.factors.len());
        for f in t.factors.drain(..) {
            match merged.last_mut() {
                Some(last) if last.var == f.var && last.region == f.region => {
                    last.value = &last.value * &f.value;
                }
                _ => merged.push(f),
            }
        }
        t.factors = merged;
    }
    terms.retain(|t| !t.coeff.is_zero() && t.factors.iter().all(|f| !f.value.is_zero()));
    terms
}

/// A side of a relation in normal form.
#[derive(Clone, Debug)]
pub struct NormalForm {
    terms: Vec<Term>,
    space: GradedSpace,
}

impl NormalForm {
    pub fn has_delta(&self) -> bool {
        self.terms.iter().any(|t| t.delta)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn normalize(expr: &Expr, ctx: &RepContext) -> Result<NormalForm, RelError> {
    let terms = Normalizer { ctx }.expr(Slot::Main, expr)?;
    Ok(NormalForm {
        terms: merge_blocks(terms),
        space: ctx.space().clone(),
    })
}

/// The rational value of a delta-free normal form.
pub fn rational_value(nf: &NormalForm) -> Result<GradedMatrix, RelError> {
    let mut sum = GradedMatrix::zero_square(&nf.space);
    for t in &nf.terms {
        if t.delta {
            return Err(RelError::Unsupported("delta has no rational value".into()));
        }
        sum = &sum + &t.product_value(&nf.space).scale(&t.coeff);
    }
    Ok(sum)
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let g = gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Least common multiple of all coefficient denominators on both sides.
pub fn common_denominator(sides: &[&NormalForm]) -> Polynomial {
    let mut l = Polynomial::one();
    for nf in sides {
        for t in &nf.terms {
            l = lcm(&l, t.coeff.denominator());
        }
    }
    l.monic()
}

struct ExpansionCache {
    depth: i64,
    entries: Vec<(Var, Region, GradedMatrix, crate::dist::TruncatedSeries<GradedMatrix>)>,
}

impl ExpansionCache {
    fn get(
        &mut self,
        f: &OpFactor,
    ) -> Result<crate::dist::TruncatedSeries<GradedMatrix>, RelError> {
        if let Some(e) = self
            .entries
            .iter()
            .find(|e| e.0 == f.var && e.1 == f.region && e.2 == f.value)
        {
            return Ok(e.3.clone());
        }
        let s = expand_matrix(&f.value, f.var, f.region, self.depth)?;
        self.entries.push((f.var, f.region, f.value.clone(), s.clone()));
        Ok(s)
    }
}

/// Mode table of `scale · nf` on `[-n, n]²`, where `scale` is a polynomial
/// that clears every coefficient denominator.
pub fn mode_table(
    nf: &NormalForm,
    scale: &Polynomial,
    n: i64,
) -> Result<ModeTable<GradedMatrix>, RelError> {
    let mut cache = ExpansionCache {
        depth: 2 * n + 2,
        entries: Vec::new(),
    };
    let mut product_terms = Vec::new();
    for t in &nf.terms {
        let p = (scale * t.coeff.numerator())
            .div_exact(t.coeff.denominator())
            .ok_or_else(|| RelError::Unsupported("scale does not clear a denominator".into()))?;
        let mut factors = Vec::with_capacity(t.factors.len());
        for f in &t.factors {
            factors.push(Factor {
                series: cache.get(f)?,
            });
        }
        let mut split: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for (a, pa) in p.to_univariate(Var::U).into_iter().enumerate() {
            for (b, pb) in pa.to_univariate(Var::V).into_iter().enumerate() {
                if !pb.is_zero() {
                    split.insert((a, b), pb);
                }
            }
        }
        for ((a, b), c) in split {
            product_terms.push(ProductTerm {
                coeff: RationalFunction::from(c),
                u_pow: a as i64,
                v_pow: b as i64,
                delta: t.delta,
                factors: factors.clone(),
            });
        }
    }
    let unit = GradedMatrix::identity(&nf.space);
    Ok(evaluate_terms(&product_terms, (Var::U, Var::V), &unit, n)?)
}

/// Both sides of a relation in normal form.
pub fn normalize_relation(
    rel: &Relation,
    ctx: &RepContext,
) -> Result<(NormalForm, NormalForm), RelError> {
    Ok((normalize(&rel.lhs, ctx)?, normalize(&rel.rhs, ctx)?))
}
