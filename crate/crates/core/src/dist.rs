//! Truncated Laurent series with exactness windows, region expansions of
//! rational functions, the formal delta distribution, and mode tables of
//! ordered products in two spectral variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::field::{FieldError, Polynomial, RationalFunction, Var};
use crate::grade::GradedMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistError {
    #[error("denominator vanishes at {0}=0")]
    SingularAtZero(Var),
    #[error("product has an empty exactness window")]
    EmptyWindow,
    #[error("ill-posed distributional product: {0}")]
    IllPosed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Values that can serve as series coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Display {
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &RationalFunction) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
}

impl Coefficient for RationalFunction {
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &RationalFunction) -> Self {
        self * c
    }
}

impl Coefficient for GradedMatrix {
    fn is_zero(&self) -> bool {
        GradedMatrix::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &RationalFunction) -> Self {
        self.scale(c)
    }
}

/// Which modes of a series are exactly known, and where its known nonzero
/// coefficients live.
///
/// Known modes form the interval `[lo, hi]`, where `None` stands for an
/// unbounded side. Inside it, modes outside `[smin, smax]` are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub support: Option<(i64, i64)>,
}

impl Shape {
    /// The constant series 1.
    pub fn unit() -> Shape {
        Shape {
            lo: None,
            hi: None,
            support: Some((0, 0)),
        }
    }

    pub fn is_known(&self, m: i64) -> bool {
        self.lo.is_none_or(|l| m >= l) && self.hi.is_none_or(|h| m <= h)
    }

    /// Shape of a Cauchy product: the modes whose every contributing pair is
    /// either exactly known or known to vanish.
    pub fn product(&self, other: &Shape) -> Result<Shape, DistError> {
        let mut lower: Option<i64> = None;
        let mut upper: Option<i64> = None;
        let mut raise = |x: i64| lower = Some(lower.map_or(x, |l| l.max(x)));
        let mut cap = |x: i64| upper = Some(upper.map_or(x, |u| u.min(x)));
        for (a, b) in [(self, other), (other, self)] {
            if let Some(la) = a.lo {
                // a unknown below la: b must vanish on [m - la + 1, ∞)
                if b.hi.is_some() {
                    return Err(DistError::EmptyWindow);
                }
                if let Some((_, smax)) = b.support {
                    raise(la + smax);
                }
                if let Some(lb) = b.lo {
                    raise(la + lb - 1);
                }
            }
            if let Some(ha) = a.hi {
                if b.lo.is_some() {
                    return Err(DistError::EmptyWindow);
                }
                if let Some((smin, _)) = b.support {
                    cap(ha + smin);
                }
                if let Some(hb) = b.hi {
                    cap(ha + hb + 1);
                }
            }
        }
        if let (Some(l), Some(u)) = (lower, upper) {
            if l > u {
                return Err(DistError::EmptyWindow);
            }
        }
        let support = match (self.support, other.support) {
            (Some((a0, a1)), Some((b0, b1))) => Some((a0 + b0, a1 + b1)),
            _ => None,
        };
        Ok(Shape {
            lo: lower,
            hi: upper,
            support,
        })
    }
}

/// A Laurent series in one variable, exact on a window of modes.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    pub var: Var,
    coeffs: BTreeMap<i64, C>,
    lo: Option<i64>,
    hi: Option<i64>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// A series from explicit coefficients, exact on `[lo, hi]`. Coefficients
    /// outside the window are discarded.
    pub fn new(var: Var, coeffs: BTreeMap<i64, C>, lo: Option<i64>, hi: Option<i64>) -> Self {
        let mut s = TruncatedSeries {
            var,
            coeffs,
            lo,
            hi,
        };
        s.normalize();
        s
    }

    /// The zero series, exact everywhere.
    pub fn zero(var: Var) -> Self {
        Self::new(var, BTreeMap::new(), None, None)
    }

    /// A Laurent polynomial, exact everywhere.
    pub fn laurent(var: Var, coeffs: BTreeMap<i64, C>) -> Self {
        Self::new(var, coeffs, None, None)
    }

    fn normalize(&mut self) {
        let (lo, hi) = (self.lo, self.hi);
        self.coeffs.retain(|&m, c| {
            !c.is_zero() && lo.is_none_or(|l| m >= l) && hi.is_none_or(|h| m <= h)
        });
    }

    pub fn window(&self) -> (Option<i64>, Option<i64>) {
        (self.lo, self.hi)
    }

    pub fn shape(&self) -> Shape {
        let support = match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(&a), Some(&b)) => Some((a, b)),
            _ => None,
        };
        Shape {
            lo: self.lo,
            hi: self.hi,
            support,
        }
    }

    pub fn is_known(&self, m: i64) -> bool {
        self.shape().is_known(m)
    }

    /// Coefficient of `var^m`: `None` if the mode is outside the window,
    /// `Some(None)` if it is known to vanish.
    pub fn coeff(&self, m: i64) -> Option<Option<&C>> {
        if self.is_known(m) {
            Some(self.coeffs.get(&m))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn negated(&self) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c.negated())).collect(),
            lo: self.lo,
            hi: self.hi,
        }
    }

    pub fn scaled(&self, c: &RationalFunction) -> Self {
        let coeffs = self.coeffs.iter().map(|(&m, x)| (m, x.scaled(c))).collect();
        Self::new(self.var, coeffs, self.lo, self.hi)
    }

    /// Sum, exact on the intersection of the two windows.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "series in different variables");
        let lo = max_opt(self.lo, rhs.lo);
        let hi = min_opt(self.hi, rhs.hi);
        let mut coeffs = self.coeffs.clone();
        for (&m, c) in &rhs.coeffs {
            let e = match coeffs.remove(&m) {
                Some(x) => x.plus(c),
                None => c.clone(),
            };
            coeffs.insert(m, e);
        }
        Self::new(self.var, coeffs, lo, hi)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.negated())
    }
}

fn max_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

/// Cauchy product of two series in the same variable. The result is exact
/// exactly on the modes that receive no contribution from unknown modes.
pub fn series_mul<C: Coefficient>(
    s: &TruncatedSeries<C>,
    t: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>, DistError> {
    if s.var != t.var {
        return Err(DistError::IllPosed(format!(
            "product of series in {} and {}",
            s.var, t.var
        )));
    }
    let shape = s.shape().product(&t.shape())?;
    let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
    for (&i, a) in &s.coeffs {
        for (&j, b) in &t.coeffs {
            if !shape.is_known(i + j) {
                continue;
            }
            let p = a.times(b);
            let e = match coeffs.remove(&(i + j)) {
                Some(x) => x.plus(&p),
                None => p,
            };
            coeffs.insert(i + j, e);
        }
    }
    Ok(TruncatedSeries::new(s.var, coeffs, shape.lo, shape.hi))
}

fn split(f: &RationalFunction, var: Var) -> (Vec<Polynomial>, Vec<Polynomial>) {
    (f.numerator().to_univariate(var), f.denominator().to_univariate(var))
}

/// Power-series quotient `p/q` to `count` terms, with `q[0] != 0`. The
/// recurrence runs on numerators over `q[0]^{k+1}` so each coefficient is
/// reduced once.
fn series_quotient(
    p: &[Polynomial],
    q: &[Polynomial],
    count: usize,
) -> Result<Vec<RationalFunction>, DistError> {
    let q0 = &q[0];
    let mut nums: Vec<Polynomial> = Vec::with_capacity(count);
    let mut powers = vec![Polynomial::one()];
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        while powers.len() <= k + 1 {
            let next = powers.last().expect("nonempty") * q0;
            powers.push(next);
        }
        let mut x = match p.get(k) {
            Some(c) if !c.is_zero() => c * &powers[k],
            _ => Polynomial::zero(),
        };
        for j in 1..q.len().min(k + 1) {
            if !q[j].is_zero() && !nums[k - j].is_zero() {
                x = &x - &(&(&q[j] * &nums[k - j]) * &powers[j - 1]);
            }
        }
        out.push(RationalFunction::over_power_of(x.clone(), powers[k + 1].clone(), q0)?);
        nums.push(x);
    }
    Ok(out)
}

/// Laurent expansion at `var = ∞`, exact on modes `[-n, ∞)`.
pub fn expand_at_infinity(
    f: &RationalFunction,
    var: Var,
    n: i64,
) -> Result<TruncatedSeries<RationalFunction>, DistError> {
    let mut coeffs = BTreeMap::new();
    if f.is_zero() {
        return Ok(TruncatedSeries::new(var, coeffs, Some(-n), None));
    }
    let (mut p, mut q) = split(f, var);
    p.reverse();
    q.reverse();
    let top = p.len() as i64 - q.len() as i64;
    let count = (top + n + 1).max(0) as usize;
    for (k, x) in series_quotient(&p, &q, count)?.into_iter().enumerate() {
        if !x.is_zero() {
            coeffs.insert(top - k as i64, x);
        }
    }
    Ok(TruncatedSeries::new(var, coeffs, Some(-n), None))
}

/// Taylor expansion at `var = 0`, exact on modes `(-∞, n]`.
pub fn expand_at_zero(
    f: &RationalFunction,
    var: Var,
    n: i64,
) -> Result<TruncatedSeries<RationalFunction>, DistError> {
    let mut coeffs = BTreeMap::new();
    if f.is_zero() {
        return Ok(TruncatedSeries::new(var, coeffs, None, Some(n)));
    }
    let (p, q) = split(f, var);
    if q[0].is_zero() {
        return Err(DistError::SingularAtZero(var));
    }
    let count = (n + 1).max(0) as usize;
    for (k, x) in series_quotient(&p, &q, count)?.into_iter().enumerate() {
        if !x.is_zero() {
            coeffs.insert(k as i64, x);
        }
    }
    Ok(TruncatedSeries::new(var, coeffs, None, Some(n)))
}

/// Expansion region of an operator-valued function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// Expanded at infinity (the `+` series).
    Infinity,
    /// Expanded at zero (the `-` series).
    Zero,
    /// The difference of the two expansions.
    Bilateral,
}

/// Entrywise expansion of an operator-valued rational function.
pub fn expand_matrix(
    m: &GradedMatrix,
    var: Var,
    region: Region,
    n: i64,
) -> Result<TruncatedSeries<GradedMatrix>, DistError> {
    if region == Region::Bilateral {
        let a = expand_matrix(m, var, Region::Infinity, n)?;
        let b = expand_matrix(m, var, Region::Zero, n)?;
        return Ok(a.sub(&b));
    }
    let (lo, hi) = match region {
        Region::Infinity => (Some(-n), None),
        _ => (None, Some(n)),
    };
    let mut coeffs: BTreeMap<i64, GradedMatrix> = BTreeMap::new();
    for (i, j, x) in m.entries() {
        let s = match region {
            Region::Infinity => expand_at_infinity(x, var, n)?,
            _ => expand_at_zero(x, var, n)?,
        };
        for (k, c) in s.terms() {
            coeffs
                .entry(k)
                .or_insert_with(|| GradedMatrix::zero(m.rows().clone(), m.cols().clone()))
                .set(i, j, c.clone());
        }
    }
    Ok(TruncatedSeries::new(var, coeffs, lo, hi))
}

/// Coefficient of `u^m v^p` in `δ(u-v) = Σ_k u^k v^{-k-1}`.
pub fn delta_coefficient(m: i64, p: i64) -> i64 {
    if m + p + 1 == 0 {
        1
    } else {
        0
    }
}

/// Values of a two-variable series on a grid of mode pairs, with the set of
/// pairs where the values are exact. Missing values inside the valid set are
/// zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeTable<C> {
    pub valid: BTreeSet<(i64, i64)>,
    pub values: BTreeMap<(i64, i64), C>,
}

impl<C: Coefficient> ModeTable<C> {
    pub fn empty() -> Self {
        ModeTable {
            valid: BTreeSet::new(),
            values: BTreeMap::new(),
        }
    }

    /// A table valid on the whole `[-n, n]²` grid.
    pub fn full_grid(n: i64) -> Self {
        let mut valid = BTreeSet::new();
        for m in -n..=n {
            for p in -n..=n {
                valid.insert((m, p));
            }
        }
        ModeTable {
            valid,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, m: i64, p: i64) -> Option<Option<&C>> {
        if self.valid.contains(&(m, p)) {
            Some(self.values.get(&(m, p)))
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let valid: BTreeSet<_> = self.valid.intersection(&rhs.valid).copied().collect();
        let mut values = BTreeMap::new();
        for &k in &valid {
            let v = match (self.values.get(&k), rhs.values.get(&k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => continue,
            };
            if !v.is_zero() {
                values.insert(k, v);
            }
        }
        ModeTable { valid, values }
    }

    pub fn negated(&self) -> Self {
        ModeTable {
            valid: self.valid.clone(),
            values: self.values.iter().map(|(&k, v)| (k, v.negated())).collect(),
        }
    }

    /// Mode pairs valid in both tables.
    pub fn joint_valid(&self, rhs: &Self) -> BTreeSet<(i64, i64)> {
        self.valid.intersection(&rhs.valid).copied().collect()
    }

    /// First jointly valid pair (in row-major order) where the tables differ.
    pub fn first_difference(&self, rhs: &Self) -> Option<(i64, i64)> {
        self.joint_valid(rhs).into_iter().find(|k| {
            let a = self.values.get(k);
            let b = rhs.values.get(k);
            match (a, b) {
                (None, None) => false,
                (Some(x), Some(y)) => x != y,
                _ => true,
            }
        })
    }

    /// Restriction to the `[-n, n]²` grid.
    pub fn restricted(&self, n: i64) -> Self {
        let inside = |&(m, p): &(i64, i64)| m.abs() <= n && p.abs() <= n;
        ModeTable {
            valid: self.valid.iter().copied().filter(inside).collect(),
            values: self
                .values
                .iter()
                .filter(|(k, _)| inside(k))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }
}

/// The table of `δ(u-v) g` on `[-n, n]²`, where `g` is a series in either of
/// the two variables. Both cases give `g_{m+p+1}` at `(m, p)`.
pub fn delta_pairing<C: Coefficient>(g: &TruncatedSeries<C>, n: i64) -> ModeTable<C> {
    let mut t = ModeTable::empty();
    for m in -n..=n {
        for p in -n..=n {
            if let Some(c) = g.coeff(m + p + 1) {
                t.valid.insert((m, p));
                if let Some(c) = c {
                    t.values.insert((m, p), c.clone());
                }
            }
        }
    }
    t
}

/// One factor of an ordered product: a series in one of the two variables.
#[derive(Clone, Debug)]
pub struct Factor<C> {
    pub series: TruncatedSeries<C>,
}

/// `coeff · u^a v^b · [δ(u-v)] · F_1 F_2 ... F_k` with the factors kept in
/// order.
#[derive(Clone, Debug)]
pub struct ProductTerm<C> {
    pub coeff: RationalFunction,
    pub u_pow: i64,
    pub v_pow: i64,
    pub delta: bool,
    pub factors: Vec<Factor<C>>,
}

fn group_shape<C: Coefficient>(factors: &[Factor<C>], var: Var) -> Result<Shape, DistError> {
    let mut s = Shape::unit();
    for f in factors.iter().filter(|f| f.series.var == var) {
        s = s.product(&f.series.shape())?;
    }
    Ok(s)
}

/// Mode table of a product term in `(u, v)` on `[-n, n]²`. `unit` is the
/// identity coefficient used when the term has no factors.
pub fn evaluate_term<C: Coefficient>(
    term: &ProductTerm<C>,
    vars: (Var, Var),
    unit: &C,
    n: i64,
) -> Result<ModeTable<C>, DistError> {
    let (u, v) = vars;
    for f in &term.factors {
        if f.series.var != u && f.series.var != v {
            return Err(DistError::IllPosed(format!("factor in {}", f.series.var)));
        }
    }
    let has_u = term.factors.iter().any(|f| f.series.var == u);
    let has_v = term.factors.iter().any(|f| f.series.var == v);
    if term.delta && has_u && has_v {
        return Err(DistError::IllPosed(
            "delta times factors in both variables".into(),
        ));
    }
    let su = group_shape(&term.factors, u)?;
    let sv = group_shape(&term.factors, v)?;
    let (a, b) = (term.u_pow, term.v_pow);
    // group modes (x, y) needed for each output pair (m, p)
    let target = |m: i64, p: i64| -> (i64, i64) {
        if term.delta {
            let s = m + p + 1 - a - b;
            match (has_u, has_v) {
                (true, _) => (s, 0),
                (_, true) => (0, s),
                _ => (0, 0),
            }
        } else {
            (m - a, p - b)
        }
    };
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for m in -n..=n {
        for p in -n..=n {
            let (x, y) = target(m, p);
            xs.insert(x);
            ys.insert(y);
        }
    }
    let xr = (*xs.first().unwrap(), *xs.last().unwrap());
    let yr = (*ys.first().unwrap(), *ys.last().unwrap());
    let products = ordered_products(&term.factors, u, unit, xr, yr);
    let mut out = ModeTable::empty();
    for m in -n..=n {
        for p in -n..=n {
            let (x, y) = target(m, p);
            if !su.is_known(x) || !sv.is_known(y) {
                continue;
            }
            if term.delta && !has_u && !has_v && m - a + p - b + 1 != 0 {
                out.valid.insert((m, p));
                continue;
            }
            out.valid.insert((m, p));
            if let Some(c) = products.get(&(x, y)) {
                let c = c.scaled(&term.coeff);
                if !c.is_zero() {
                    out.values.insert((m, p), c);
                }
            }
        }
    }
    Ok(out)
}

/// Sums of ordered products of known coefficients, keyed by the total mode
/// in each variable, restricted to the ranges `xr` and `yr`.
fn ordered_products<C: Coefficient>(
    factors: &[Factor<C>],
    u: Var,
    unit: &C,
    xr: (i64, i64),
    yr: (i64, i64),
) -> BTreeMap<(i64, i64), C> {
    let k = factors.len();
    // support bounds of the remaining factors, per variable
    let mut rest = vec![((0i64, 0i64), (0i64, 0i64)); k + 1];
    for i in (0..k).rev() {
        let ((ul, uh), (vl, vh)) = rest[i + 1];
        let s = &factors[i].series;
        let (lo, hi) = match s.shape().support {
            Some(b) => b,
            None => return BTreeMap::new(),
        };
        rest[i] = if s.var == u {
            ((ul + lo, uh + hi), (vl, vh))
        } else {
            ((ul, uh), (vl + lo, vh + hi))
        };
    }
    let mut acc: BTreeMap<(i64, i64), C> = BTreeMap::new();
    acc.insert((0, 0), unit.clone());
    for (i, f) in factors.iter().enumerate() {
        let ((ul, uh), (vl, vh)) = rest[i + 1];
        let on_u = f.series.var == u;
        let mut next: BTreeMap<(i64, i64), C> = BTreeMap::new();
        for (&(x, y), c) in &acc {
            for (d, g) in f.series.terms() {
                let (nx, ny) = if on_u { (x + d, y) } else { (x, y + d) };
                if nx + ul > xr.1 || nx + uh < xr.0 || ny + vl > yr.1 || ny + vh < yr.0 {
                    continue;
                }
                let t = c.times(g);
                if t.is_zero() {
                    continue;
                }
                let e = match next.remove(&(nx, ny)) {
                    Some(old) => old.plus(&t),
                    None => t,
                };
                if !e.is_zero() {
                    next.insert((nx, ny), e);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Mode table of a sum of product terms.
pub fn evaluate_terms<C: Coefficient>(
    terms: &[ProductTerm<C>],
    vars: (Var, Var),
    unit: &C,
    n: i64,
) -> Result<ModeTable<C>, DistError> {
    let mut out = ModeTable::full_grid(n);
    for t in terms {
        out = out.add(&evaluate_term(t, vars, unit, n)?);
    }
    Ok(out)
}
