use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Polynomial;
use super::{FieldError, Var};

/// A quotient of polynomials in canonical form.
///
/// Numerator and denominator are coprime and the denominator is monic, so
/// two values are equal exactly when their fields are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(n))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Builds `num/den` and brings it to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Builds `num/den` where every irreducible factor of `den` divides
    /// `base`. Common factors are found by gcds against `base` only.
    pub fn over_power_of(num: Polynomial, den: Polynomial, base: &Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = (num, den);
        let mut f = base.clone();
        loop {
            let mut g = gcd(&num, &f);
            if g.is_one() {
                break;
            }
            if den.div_exact(&g).is_none() {
                g = gcd(&g, &den);
                if g.is_one() {
                    break;
                }
            }
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
            f = g;
        }
        Ok(Self::normalize(num, den))
    }

    /// Rescales an already coprime pair so the denominator is monic.
    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let s = lc.recip();
            RationalFunction {
                num: num.scale(&s),
                den: den.scale(&s),
            }
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &[(Var, RationalFunction)]) -> Result<Self, FieldError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut cache = PowerCache::new(bindings);
        let (nn, nd) = cache.apply(&self.num);
        let (dn, dd) = cache.apply(&self.den);
        if dn.is_zero() {
            return Err(FieldError::VanishingDenominator);
        }
        Self::new(&nn * &dd, &nd * &dn)
    }

    /// Substitutes `v ↦ v + shift`.
    pub fn shift(&self, v: Var, shift: &RationalFunction) -> Result<Self, FieldError> {
        if shift.is_zero() {
            return Ok(self.clone());
        }
        self.substitute(&[(v, &RationalFunction::var(v) + shift)])
    }
}

/// Powers of substituted numerators and denominators, shared between the
/// numerator and denominator of the argument.
struct PowerCache<'a> {
    bindings: &'a [(Var, RationalFunction)],
    num_pows: HashMap<(usize, u16), Polynomial>,
    den_pows: HashMap<(usize, u16), Polynomial>,
}

impl<'a> PowerCache<'a> {
    fn new(bindings: &'a [(Var, RationalFunction)]) -> Self {
        PowerCache {
            bindings,
            num_pows: HashMap::new(),
            den_pows: HashMap::new(),
        }
    }

    fn power(&mut self, idx: usize, e: u16, of_den: bool) -> Polynomial {
        let table = if of_den { &mut self.den_pows } else { &mut self.num_pows };
        if let Some(p) = table.get(&(idx, e)) {
            return p.clone();
        }
        let f = &self.bindings[idx].1;
        let base = if of_den { f.denominator() } else { f.numerator() };
        let p = base.pow(e as u32);
        table.insert((idx, e), p.clone());
        p
    }

    /// Returns `(N, D)` with `p(bindings) = N / D` and `D` a product of powers
    /// of the binding denominators.
    fn apply(&mut self, p: &Polynomial) -> (Polynomial, Polynomial) {
        let degs: Vec<u16> = self.bindings.iter().map(|(v, _)| p.degree_in(*v)).collect();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut rest = *m;
            let mut t = Polynomial::one();
            for (idx, (v, _)) in self.bindings.iter().enumerate() {
                let e = m.exponent(*v);
                rest = rest.without(*v);
                if e > 0 {
                    t = &t * &self.power(idx, e, false);
                }
                if degs[idx] > e {
                    t = &t * &self.power(idx, degs[idx] - e, true);
                }
            }
            out = &out + &t.mul_monomial(&rest).scale(c);
        }
        let mut den = Polynomial::one();
        for (idx, d) in degs.iter().enumerate() {
            if *d > 0 {
                den = &den * &self.power(idx, *d, true);
            }
        }
        (out, den)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RationalFunction::zero();
            }
            return RationalFunction::normalize(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        RationalFunction::normalize(num, &(&b * &d) * &g)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cut = |p: &Polynomial, g: &Polynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RationalFunction::normalize(num, den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] to
    /// handle that case.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $f(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

fn bare_power(p: &Polynomial) -> bool {
    match p.terms() {
        [(m, c)] => c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1,
        _ => false,
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if bare_power(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}
