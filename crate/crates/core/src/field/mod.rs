//! Exact scalar arithmetic: sparse multivariate polynomials over the rationals
//! and normalized rational functions in a fixed set of indeterminates.

mod gcd;
mod poly;
mod ratfunc;

pub use gcd::gcd;
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Number of indeterminates known to the engine.
pub const NVARS: usize = 7;

/// The commuting indeterminates of the engine.
///
/// The declaration order is the priority used by the monomial order: after
/// total degree, monomials are compared by their exponent of `U`, then `V`,
/// and so on down to `H`. So `h` (the quantization parameter) and `c` (the
/// central charge) rank below every spectral variable and evaluation point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U,
    V,
    W,
    W1,
    W2,
    C,
    H,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::W, Var::W1, Var::W2, Var::C, Var::H];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::W => "w",
            Var::W1 => "w1",
            Var::W2 => "w2",
            Var::C => "c",
            Var::H => "h",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Some(match name {
            "u" => Var::U,
            "v" => Var::V,
            "w" => Var::W,
            "w1" => Var::W1,
            "w2" => Var::W2,
            "c" => Var::C,
            "h" | "hbar" | "ħ" => Var::H,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes identically after substitution")]
    VanishingDenominator,
}

/// Shorthand for an exact rational from a numerator and denominator.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
