//! Parser for the canonical text grammar of `Poly` and `Monomial`.
//!
//! The grammar accepted here is exactly what [`Poly`]'s and [`Monomial`]'s
//! `Display` implementations emit, plus harmless variants (whitespace,
//! explicit `1*x`, signed bare exponents):
//!
//! ```text
//! poly   := sign? term (('+'|'-') term)*
//! term   := coeff ('*' mono)? | mono
//! mono   := 'x' ('^' exponent)? ('/' nat)?
//! coeff  := nat ('/' nat)?
//! exponent := '-'? nat | '(' '-'? nat ('/' nat)? ')'
//! ```
//!
//! Errors carry the character position of the offending token.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::Rat;

struct Scanner {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Scanner {
    fn new(src: &str) -> Self {
        Scanner {
            chars: src.char_indices().collect(),
            pos: 0,
            len: src.chars().count(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&mut self, message: impl Into<String>) -> Error {
        self.skip_ws();
        Error::Parse {
            pos: self.pos.min(self.len),
            message: message.into(),
        }
    }

    fn expect(&mut self, expected: char) -> Result<()> {
        if self.eat(expected) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{expected}'")))
        }
    }

    /// Unsigned decimal integer.
    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(digits.parse().expect("digit run parses as integer"))
    }

    /// `nat ('/' nat)?` with an optional leading sign.
    fn rational(&mut self, allow_sign: bool) -> Result<Rat> {
        let negative = if allow_sign && self.eat('-') {
            true
        } else {
            if allow_sign {
                self.eat('+');
            }
            false
        };
        let numer = self.natural()?;
        let denom = if self.eat('/') {
            let d = self.natural()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let value = Rat::new(numer, denom);
        Ok(if negative { -value } else { value })
    }

    /// Exponent after `^`: a signed integer, or a parenthesized rational.
    /// A trailing `/n` after a bare exponent belongs to the coefficient
    /// (`x^3/6` is `(1/6)·x^3`), so the unparenthesized form takes no slash.
    fn exponent(&mut self) -> Result<Rat> {
        if self.eat('(') {
            let e = self.rational(true)?;
            self.expect(')')?;
            Ok(e)
        } else {
            let negative = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            let value = Rat::from_integer(self.natural()?);
            Ok(if negative { -value } else { value })
        }
    }

    /// One product of a coefficient and an optional power of `x`; returns
    /// `(coefficient, exponent)` with the exponent zero for constants.
    fn term(&mut self) -> Result<(Rat, Rat)> {
        let mut coeff;
        let mut exponent = Rat::zero();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.rational(false)?;
                if self.eat('*') {
                    let (c2, e2) = self.x_part()?;
                    coeff *= c2;
                    exponent = e2;
                }
            }
            Some('x') => {
                let (c, e) = self.x_part()?;
                coeff = c;
                exponent = e;
            }
            Some(other) => return Err(self.err(format!("unexpected '{other}'"))),
            None => return Err(self.err("unexpected end of input")),
        }
        Ok((coeff, exponent))
    }

    /// `x ('^' exponent)? ('/' nat)?`; the trailing divisor folds into the
    /// coefficient, so `x^3/6` means `(1/6)·x^3`.
    fn x_part(&mut self) -> Result<(Rat, Rat)> {
        self.expect('x')?;
        let exponent = if self.eat('^') {
            self.exponent()?
        } else {
            Rat::from_integer(1.into())
        };
        let coeff = if self.eat('/') {
            let d = self.natural()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Rat::new(1.into(), d)
        } else {
            Rat::from_integer(1.into())
        };
        Ok((coeff, exponent))
    }

    /// Signed sum of terms.
    fn sum(&mut self) -> Result<Vec<(Rat, Rat)>> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.eat('-') {
            negative = true;
        } else {
            self.eat('+');
        }
        loop {
            let (c, e) = self.term()?;
            terms.push((if negative { -c } else { c }, e));
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }
}

fn terms_to_poly(scanner: &mut Scanner, terms: Vec<(Rat, Rat)>) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (coeff, exponent) in terms {
        if !exponent.is_integer() || exponent.is_negative() {
            return Err(scanner.err(format!(
                "exponent {} is not a nonnegative integer",
                crate::scalar::render_rat(&exponent)
            )));
        }
        let k = usize::try_from(exponent.to_integer())
            .map_err(|_| scanner.err("exponent too large"))?;
        acc = &acc + &Poly::monomial(coeff, k);
    }
    Ok(acc)
}

/// Parses a polynomial like `3/2*x^2 - x + 1` or `x^3/6`.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let mut scanner = Scanner::new(src);
    let terms = scanner.sum()?;
    scanner.end()?;
    terms_to_poly(&mut scanner, terms)
}

/// Parses a single monomial like `5*x^(7/2)` or `-x^(-1/2)/2`.
pub fn parse_monomial(src: &str) -> Result<Monomial> {
    let mut scanner = Scanner::new(src);
    let terms = scanner.sum()?;
    scanner.end()?;
    if terms.len() != 1 {
        return Err(scanner.err("expected a single monomial term"));
    }
    let (coeff, exponent) = terms.into_iter().next().unwrap();
    Ok(Monomial::new(coeff, exponent))
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(src: &str) -> Result<Vec<Poly>> {
    let mut scanner = Scanner::new(src);
    let mut polys = Vec::new();
    loop {
        let terms = scanner.sum()?;
        polys.push(terms_to_poly(&mut scanner, terms)?);
        if !scanner.eat(',') {
            break;
        }
    }
    scanner.end()?;
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(
            parse_poly("3/2*x^2 - x + 1").unwrap(),
            Poly::from_coeffs(vec![rat_int(1), rat_int(-1), rat(3, 2)])
        );
        assert_eq!(parse_poly("x^3/6").unwrap(), Poly::basis_monomial(3));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("x + x").unwrap(), Poly::monomial(rat_int(2), 1));
        assert_eq!(
            parse_poly(" - x ^ 2 ").unwrap(),
            Poly::monomial(rat_int(-1), 2)
        );
        assert_eq!(parse_poly("3*x^2/2").unwrap(), Poly::monomial(rat(3, 2), 2));
    }

    #[test]
    fn parses_monomials() {
        assert_eq!(
            parse_monomial("5*x^(7/2)").unwrap(),
            Monomial::new(rat_int(5), rat(7, 2))
        );
        assert_eq!(
            parse_monomial("x^(-1/2)/2").unwrap(),
            Monomial::new(rat(1, 2), rat(-1, 2))
        );
        assert_eq!(
            parse_monomial("x^-2").unwrap(),
            Monomial::power(rat_int(-2))
        );
        assert_eq!(
            parse_monomial("7").unwrap(),
            Monomial::new(rat_int(7), rat_int(0))
        );
        assert!(parse_monomial("x + 1").is_err());
    }

    #[test]
    fn parses_lists() {
        let polys = parse_poly_list("1, x, x^2/2").unwrap();
        assert_eq!(polys, vec![Poly::one(), Poly::x(), Poly::basis_monomial(2)]);
        assert!(parse_poly_list("1,, x").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_poly("x^2 + @").unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 6),
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_poly("x^(1/2)").unwrap_err();
        match err {
            Error::Parse { ref message, .. } => {
                assert!(message.contains("nonnegative integer"), "{message}")
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("").is_err());
    }
}
