//! The exact scalar layer: arbitrary-precision integers and rationals.
//!
//! Every computation in this crate runs over the rationals with no rounding
//! anywhere, so equality checks are decidable and all verification results
//! are exact. `Rat` values are kept in lowest terms with a positive
//! denominator by the underlying representation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, the ground field for all coefficients.
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    num_integer::binomial(Int::from(n), Int::from(k))
}

/// Falling factorial `e·(e−1)·…·(e−j+1)` over the rationals.
///
/// This is the coefficient picked up by `j` formal derivatives of `x^e`.
pub fn falling_factorial(e: &Rat, j: usize) -> Rat {
    let mut acc = Rat::one();
    for step in 0..j {
        acc *= e - rat_int(step as i64);
    }
    acc
}

/// Renders a rational using the compact coefficient grammar: `"3"`, `"3/2"`.
pub fn render_rat(value: &Rat) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Sign of `value` as `-1`, `0`, or `1`.
pub fn sign_of(value: &Rat) -> i64 {
    if value.is_zero() {
        0
    } else if value.is_negative() {
        -1
    } else {
        1
    }
}
