//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored by ascending degree with no trailing zeros, so
//! structural equality is semantic equality. The zero polynomial has an
//! empty coefficient vector and the distinguished degree [`Degree::NegInf`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{factorial, rat_int, Rat};

/// Degree of a polynomial; the zero polynomial gets `NegInf` so that
/// `deg(p·q) = deg p + deg q` holds without special cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Univariate polynomial in the affine coordinate `x` with `Rat` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The scaled basis monomial `x^k/k!`, closed under derivation.
    pub fn basis_monomial(k: usize) -> Self {
        Poly::monomial(Rat::new(1.into(), factorial(k)), k)
    }

    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from small integers, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    /// Ascending-degree coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// First formal derivative.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// `j`-th formal derivative; the degree drops by exactly `j` while
    /// `j ≤ deg`, and the result is zero past that.
    pub fn derivative_n(&self, j: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..j {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    /// Substitution `self ∘ inner`, evaluated by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.coeffs.len() > dd {
            let shift = rem.coeffs.len() - 1 - dd;
            let factor = rem.coeffs.last().unwrap() / lead;
            let scaled = d.scale(&factor);
            let mut shifted = vec![Rat::zero(); shift];
            shifted.extend(scaled.coeffs);
            rem = &rem - &Poly::from_coeffs(shifted);
            quot[shift] = factor;
        }
        (Poly::from_coeffs(quot), rem)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Renders one `|c|·x^k` term in the canonical grammar; the caller has
/// already emitted the sign. Unit numerators move the denominator after the
/// power: `x^3/6` rather than `1/6*x^3`.
pub(crate) fn render_term_magnitude(c: &Rat, xpart: Option<String>) -> String {
    let c = c.abs();
    let Some(xpart) = xpart else {
        return crate::scalar::render_rat(&c);
    };
    let numer = c.numer();
    let denom = c.denom();
    let mut out = String::new();
    if !numer.is_one() {
        out.push_str(&numer.to_string());
        if !denom.is_one() {
            out.push('/');
            out.push_str(&denom.to_string());
        }
        out.push('*');
        out.push_str(&xpart);
    } else {
        out.push_str(&xpart);
        if !denom.is_one() {
            out.push('/');
            out.push_str(&denom.to_string());
        }
    }
    out
}

pub(crate) fn join_signed_terms(terms: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (negative, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *negative {
                out.push('-');
            }
        } else if *negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xpart = match k {
                0 => None,
                1 => Some("x".to_string()),
                _ => Some(format!("x^{k}")),
            };
            terms.push((c.is_negative(), render_term_magnitude(c, xpart)));
        }
        write!(f, "{}", join_signed_terms(&terms))
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        crate::parse::parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_ints(coeffs)
    }

    #[test]
    fn degree_bookkeeping() {
        assert_eq!(Poly::zero().degree(), Degree::NegInf);
        assert_eq!(Poly::one().degree(), Degree::Finite(0));
        assert_eq!(p(&[0, 0, 3]).degree(), Degree::Finite(2));
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(Degree::NegInf + Degree::Finite(4), Degree::NegInf);
    }

    #[test]
    fn derivative_of_basis_monomials() {
        // d/dx (x^2/2) = x
        assert_eq!(Poly::basis_monomial(2).derivative_n(1), Poly::x());
        // d^3/dx^3 (x^3/6) = 1
        assert_eq!(Poly::basis_monomial(3).derivative_n(3), Poly::one());
        // constants are annihilated
        assert_eq!(Poly::constant(rat_int(7)).derivative_n(1), Poly::zero());
        // derivative past the degree is zero
        assert_eq!(p(&[1, 2, 3]).derivative_n(5), Poly::zero());
    }

    #[test]
    fn compose_examples() {
        let y2 = p(&[0, 0, 1]);
        let x2 = p(&[0, 0, 1]);
        assert_eq!(y2.compose(&x2), p(&[0, 0, 0, 0, 1]));
        // identity substitution
        let q = p(&[3, -1, 2]);
        assert_eq!(q.compose(&Poly::x()), q);
        // (y^2 + 1) ∘ (x + 1) = x^2 + 2x + 2, expanded by hand
        let lhs = p(&[1, 0, 1]).compose(&p(&[1, 1]));
        assert_eq!(lhs, p(&[2, 2, 1]));
    }

    #[test]
    fn division_is_exact_when_it_should_be() {
        let a = p(&[0, 0, -1, 0, 1]); // x^4 - x^2
        let b = p(&[0, 1, 1]); // x^2 + x
        let q = a.div_exact(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(p(&[1, 1]).div_exact(&p(&[0, 1])).is_none());
    }

    #[test]
    fn rendering_matches_grammar() {
        let q = &Poly::monomial(rat(3, 2), 2) - &p(&[-1, 1]);
        assert_eq!(q.to_string(), "3/2*x^2 - x + 1");
        assert_eq!(Poly::basis_monomial(3).to_string(), "x^3/6");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[-2, 0, -1]).to_string(), "-x^2 - 2");
        assert_eq!(Poly::monomial(rat(-1, 6), 3).to_string(), "-x^3/6");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-9i64..=9, 1i64..=6), 0..=max_deg + 1)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in arb_poly(12), b in arb_poly(12)) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_degree_is_sum(a in arb_poly(8), b in arb_poly(8)) {
            prop_assert_eq!((&a * &b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn compose_is_associative(a in arb_poly(4), b in arb_poly(3), c in arb_poly(3)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn compose_degree_multiplies(a in arb_poly(5), b in arb_poly(4)) {
            prop_assume!(!a.is_zero());
            prop_assume!(matches!(b.degree(), Degree::Finite(d) if d >= 1));
            let (Degree::Finite(da), Degree::Finite(db)) = (a.degree(), b.degree()) else {
                unreachable!()
            };
            prop_assert_eq!(a.compose(&b).degree(), Degree::Finite(da * db));
        }

        #[test]
        fn derivative_drops_degree_by_exactly_j(a in arb_poly(10), j in 0usize..=12) {
            let d = a.derivative_n(j);
            match a.degree() {
                Degree::Finite(da) if j <= da => {
                    prop_assert_eq!(d.degree(), Degree::Finite(da - j));
                }
                _ => prop_assert!(d.is_zero()),
            }
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly(9)) {
            let rendered = a.to_string();
            let parsed: Poly = rendered.parse().unwrap();
            prop_assert_eq!(parsed, a);
        }
    }
}
