//! Multivariate polynomial gcd by recursive content / primitive-part reduction.

use super::poly::{Monomial, Polynomial};
use super::Var;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Greatest common divisor, normalized to be monic.
///
/// `gcd(0, 0)` is zero; otherwise the result is nonzero and monic in the
/// global monomial order.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.is_monomial() {
        return monomial_gcd(&a.terms()[0].0, b);
    }
    if b.is_monomial() {
        return monomial_gcd(&b.terms()[0].0, a);
    }
    let (ma, mb) = (a.monic(), b.monic());
    if ma == mb {
        return ma;
    }
    if a.len() >= b.len() && a.div_exact(&mb).is_some() {
        return mb;
    }
    if b.len() >= a.len() && b.div_exact(&ma).is_some() {
        return ma;
    }
    match main_variable(a, b) {
        None => Polynomial::one(),
        Some(v) => recursive_gcd(a, b, v).monic(),
    }
}

fn monomial_gcd(m: &Monomial, p: &Polynomial) -> Polynomial {
    let g = p.terms().iter().fold(*m, |acc, (t, _)| acc.meet(t));
    Polynomial::term(g, BigRational::one())
}

/// The shared variable of least combined degree, if any.
fn main_variable(a: &Polynomial, b: &Polynomial) -> Option<Var> {
    Var::ALL
        .into_iter()
        .filter(|&v| a.contains(v) && b.contains(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
}

fn recursive_gcd(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let cont = gcd(&ca, &cb);
    let pa = divide_coeffs(ua, &ca);
    let pb = divide_coeffs(ub, &cb);
    let g = subresultant_prs(integer_primitive(pa), integer_primitive(pb));
    let g = Polynomial::from_univariate(&g, v);
    &cont * &g
}

fn content(coeffs: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn divide_coeffs(coeffs: Vec<Polynomial>, by: &Polynomial) -> Vec<Polynomial> {
    if by.is_one() {
        return coeffs;
    }
    coeffs
        .into_iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

/// Rescales to integer coefficients with no common numeric factor, which
/// keeps coefficient growth in the remainder sequence in check.
fn integer_primitive(coeffs: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in &coeffs {
        for (_, q) in c.terms() {
            den = den.lcm(q.denom());
            num = num.gcd(q.numer());
        }
    }
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return coeffs;
    }
    let s = BigRational::new(den, num);
    coeffs.into_iter().map(|c| c.scale(&s)).collect()
}

fn trim(p: &mut Vec<Polynomial>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &[Polynomial]) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_remainder(mut a: Vec<Polynomial>, b: &[Polynomial]) -> Vec<Polynomial> {
    let db = degree(b);
    let lb = &b[db];
    let mut steps = (degree(&a) + 1 - db) as u32;
    while !a.is_empty() && a.len() > db {
        let da = degree(&a);
        let la = a[da].clone();
        let shift = da - db;
        for c in a.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            let t = &la * bc;
            a[k + shift] = &a[k + shift] - &t;
        }
        trim(&mut a);
        steps -= 1;
    }
    if steps > 0 && !a.is_empty() {
        let f = lb.pow(steps);
        for c in a.iter_mut() {
            *c = &*c * &f;
        }
    }
    a
}

/// Gcd of two primitive univariate polynomials over the coefficient ring,
/// by the subresultant remainder sequence.
fn subresultant_prs(a: Vec<Polynomial>, b: Vec<Polynomial>) -> Vec<Polynomial> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        if b.len() == 1 {
            return vec![Polynomial::one()];
        }
        let delta = (a.len() - b.len()) as u32;
        let r = pseudo_remainder(a, &b);
        if r.is_empty() {
            let c = content(&b);
            return integer_primitive(divide_coeffs(b, &c));
        }
        let scale = &g * &h.pow(delta);
        let r: Vec<Polynomial> = r
            .into_iter()
            .map(|c| c.div_exact(&scale).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = r;
        g = a[a.len() - 1].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn x(v: Var) -> Polynomial {
        Polynomial::var(v)
    }

    fn k(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn coprime_linear_forms() {
        let a = &x(Var::U) + &x(Var::H);
        let b = &x(Var::U) - &x(Var::H);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn shared_factor_is_recovered() {
        let f = &(&x(Var::U) - &x(Var::W)) + &x(Var::H);
        let a = &f * &(&x(Var::U) + &k(3));
        let b = &f * &(&x(Var::V) * &x(Var::H));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn monomial_against_polynomial() {
        let a = &x(Var::U) * &x(Var::U);
        let b = &(&x(Var::U) * &x(Var::V)) + &(&x(Var::U) * &x(Var::U));
        assert_eq!(gcd(&a, &b), x(Var::U));
    }

    #[test]
    fn result_is_monic() {
        let a = (&x(Var::U) + &x(Var::H)).scale(&rat(3, 2));
        let b = (&x(Var::U) + &x(Var::H)).scale(&rat(-5, 1));
        let g = gcd(&a, &b);
        assert_eq!(g, &x(Var::U) + &x(Var::H));
    }

    #[test]
    fn squares_share_full_factor() {
        let f = &x(Var::U) - &x(Var::V);
        let g = &x(Var::U) + &x(Var::V);
        let a = &(&f * &f) * &g;
        let b = &(&f * &f) * &(&x(Var::W) + &k(1));
        assert_eq!(gcd(&a, &b), (&f * &f).monic());
    }
}
