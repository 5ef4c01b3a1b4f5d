//! Single-term monomials `c·x^ν` with *rational* exponents.
//!
//! These live outside `Poly`: half-integer powers like `x^{7/2}` show up as
//! generators of the Witt-algebra deformation, and the monomial calculus
//! (product, formal derivative) stays exact for any rational exponent.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::{join_signed_terms, render_term_magnitude, Poly};
use crate::scalar::{falling_factorial, rat_int, Rat};

/// `coeff · x^exponent`. The zero monomial is canonicalized to exponent 0 so
/// equality stays structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: Rat,
    exponent: Rat,
}

impl Monomial {
    pub fn new(coeff: Rat, exponent: Rat) -> Self {
        if coeff.is_zero() {
            Monomial::zero()
        } else {
            Monomial { coeff, exponent }
        }
    }

    pub fn zero() -> Self {
        Monomial {
            coeff: Rat::zero(),
            exponent: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        Monomial::new(Rat::one(), Rat::zero())
    }

    /// `x^exponent` with unit coefficient.
    pub fn power(exponent: Rat) -> Self {
        Monomial::new(Rat::one(), exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn exponent(&self) -> &Rat {
        &self.exponent
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Monomial::new(&self.coeff * c, self.exponent.clone())
    }

    /// First formal derivative: `d/dx (c·x^ν) = cν·x^{ν−1}`.
    pub fn derivative(&self) -> Self {
        Monomial::new(&self.coeff * &self.exponent, &self.exponent - Rat::one())
    }

    /// `j`-th formal derivative, via the falling factorial
    /// `c·ν(ν−1)…(ν−j+1)·x^{ν−j}`.
    pub fn derivative_n(&self, j: usize) -> Self {
        Monomial::new(
            &self.coeff * falling_factorial(&self.exponent, j),
            &self.exponent - rat_int(j as i64),
        )
    }

    /// Converts to a dense polynomial when the exponent is a nonnegative
    /// integer (always possible for the zero monomial).
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if !self.exponent.is_integer() || self.exponent.is_negative() {
            return None;
        }
        let k = usize::try_from(self.exponent.to_integer()).ok()?;
        Some(Poly::monomial(self.coeff.clone(), k))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial::new(&self.coeff * &rhs.coeff, &self.exponent + &rhs.exponent)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        &self * &rhs
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let e = &self.exponent;
        let xpart = if e.is_zero() {
            None
        } else if e.is_one() {
            Some("x".to_string())
        } else if e.is_integer() && !e.is_negative() {
            Some(format!("x^{}", e.numer()))
        } else {
            Some(format!("x^({})", crate::scalar::render_rat(e)))
        };
        let body = render_term_magnitude(&self.coeff, xpart);
        write!(
            f,
            "{}",
            join_signed_terms(&[(self.coeff.is_negative(), body)])
        )
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        crate::parse::parse_monomial(s)
    }
}
