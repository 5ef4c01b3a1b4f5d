//! The free associative algebra over the integers and its alternated
//! compositions.
//!
//! `Δ_N(a_1, …, a_N) = Σ_{σ∈S_N} sign(σ) · a_{σ(1)} ⋯ a_{σ(N)}` is the
//! signed sum over all orderings of the associative product. Evaluating the
//! nested bracket `Δ_k[Δ_ℓ]` on distinct generators checks the quadratic
//! Jacobi-type identities structurally, independent of any operator
//! realisation: whatever holds for free generators holds in every
//! associative algebra by multilinearity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{signed_permutations, unshuffles};
use crate::scalar::Int;

/// Arity cap for the nested-bracket sweeps; `(k+ℓ−1)!` words get enumerated.
pub const MAX_TABLE6_ARGS: usize = 8;

/// A word in the free monoid on generators `a1, a2, …` (1-based indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(generator: u32) -> Self {
        Word(vec![generator])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// Element of the free associative algebra: an integer-weighted formal sum
/// of words, kept in canonical form (lexicographic word order, no zero
/// coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Int>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    /// The multiplicative unit (the empty word).
    pub fn one() -> Self {
        NcPoly::from_term(Word::empty(), Int::from(1))
    }

    /// The generator `a_i` (1-based).
    pub fn generator(i: u32) -> Self {
        NcPoly::from_term(Word::letter(i), Int::from(1))
    }

    pub fn from_term(word: Word, coeff: Int) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(word, coeff);
        p
    }

    fn add_term(&mut self, word: Word, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Int {
        self.terms.get(word).cloned().unwrap_or_else(Int::zero)
    }

    pub fn scale(&self, c: &Int) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// In-place `self += c·other`, consuming `other`. The accumulators in
    /// the alternated sums grow to `N!` terms, so they must not be cloned
    /// per permutation.
    fn absorb(&mut self, other: NcPoly, c: &Int) {
        if c.is_zero() {
            return;
        }
        for (w, a) in other.terms {
            self.add_term(w, a * c);
        }
    }

    /// `Some(c)` iff `self == c·base` exactly (with `c = 0` for zero); `None`
    /// when the two are not proportional over the integers.
    pub fn proportionality_ratio(&self, base: &NcPoly) -> Option<Int> {
        if self.is_zero() {
            return Some(Int::zero());
        }
        let (word, base_coeff) = base.terms.iter().next()?;
        let mine = self.coeff(word);
        if (&mine % base_coeff) != Int::zero() {
            return None;
        }
        let candidate = mine / base_coeff;
        (*self == base.scale(&candidate)).then_some(candidate)
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;

    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;

    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;

    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;

    /// Concatenation product, extended bilinearly.
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(bool, String)> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.letters().is_empty() {
                    "1".to_string()
                } else {
                    w.letters()
                        .iter()
                        .map(|i| format!("a{i}"))
                        .collect::<Vec<_>>()
                        .join("*")
                };
                let magnitude = c.abs();
                let body = if magnitude == Int::from(1) && !w.letters().is_empty() {
                    word
                } else if w.letters().is_empty() {
                    magnitude.to_string()
                } else {
                    format!("{magnitude}*{word}")
                };
                (c.is_negative(), body)
            })
            .collect();
        write!(f, "{}", crate::poly::join_signed_terms(&terms))
    }
}

/// The first `n` generators `a1, …, an`.
pub fn generators(n: usize) -> Vec<NcPoly> {
    (1..=n as u32).map(NcPoly::generator).collect()
}

/// The alternated composition `Δ_N`: the signed sum over all `N!` orderings
/// of the concatenation product. Multilinear and totally antisymmetric.
pub fn alt_composition(args: &[NcPoly]) -> NcPoly {
    assert!(!args.is_empty(), "alternated composition needs N >= 1");
    let mut acc = NcPoly::zero();
    for (perm, sign) in signed_permutations(args.len()) {
        let mut product = args[perm[0]].clone();
        for &i in &perm[1..] {
            product = &product * &args[i];
        }
        acc.absorb(product, &Int::from(sign));
    }
    acc
}

/// The nested bracket `Δ_k[Δ_ℓ]` evaluated on the `k+ℓ−1` distinct
/// generators, in the unshuffle normalization: the sum over
/// `(ℓ, k−1)`-unshuffles `τ` of `sign(τ)·Δ_k(Δ_ℓ(a_{τ(1)}, …), a_{τ(ℓ+1)}, …)`.
pub fn nested_alt(outer: usize, inner: usize) -> NcPoly {
    assert!(outer >= 1 && inner >= 1, "bracket arities must be positive");
    let n = outer + inner - 1;
    let gens = generators(n);
    let mut acc = NcPoly::zero();
    for u in unshuffles(inner, outer - 1) {
        let inner_args: Vec<NcPoly> = u.first.iter().map(|&i| gens[i].clone()).collect();
        let mut outer_args = vec![alt_composition(&inner_args)];
        outer_args.extend(u.second.iter().map(|&i| gens[i].clone()));
        acc.absorb(alt_composition(&outer_args), &Int::from(u.sign));
    }
    acc
}

/// Which of the three identities governs a `(outer, inner)` arity pair.
fn classify(outer: usize, inner: usize) -> (&'static str, Int) {
    if !inner.is_multiple_of(2) {
        ("6c", Int::from(outer as i64))
    } else if !outer.is_multiple_of(2) {
        ("6b", Int::from(1))
    } else {
        ("6a", Int::zero())
    }
}

/// One `(k, ℓ)` entry of the identity-table verification.
#[derive(Clone, Debug, Serialize)]
pub struct Table6Case {
    /// Outer bracket arity.
    pub k: usize,
    /// Inner bracket arity.
    pub l: usize,
    pub case: &'static str,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    /// Exact equality with the expected right-hand side.
    pub equal: bool,
    /// Equality after flipping the overall sign of the right-hand side.
    pub equal_up_to_sign: bool,
    /// The sign `s` with `lhs = s · expected`, when one exists.
    pub sign: Option<i8>,
    /// Measured constant `c` with `lhs = c · Δ_{k+ℓ−1}`, when proportional.
    pub ratio: Option<String>,
    pub pass: bool,
    /// Rendered `lhs − expected` for failing cases.
    pub difference: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table6Report {
    pub k_max: usize,
    pub l_max: usize,
    pub cases: Vec<Table6Case>,
    pub ok: bool,
}

fn check_case(outer: usize, inner: usize) -> Table6Case {
    let (case, expected_const) = classify(outer, inner);
    let lhs = nested_alt(outer, inner);
    let base = alt_composition(&generators(outer + inner - 1));
    let expected = base.scale(&expected_const);
    let ratio = lhs.proportionality_ratio(&base);
    let equal = lhs == expected;
    let equal_up_to_sign = equal || lhs == -&expected;
    let sign = if expected_const.is_zero() {
        None
    } else {
        match &ratio {
            Some(r) if *r == expected_const => Some(1),
            Some(r) if *r == -&expected_const => Some(-1),
            _ => None,
        }
    };
    let pass = if case == "6a" {
        lhs.is_zero()
    } else {
        equal_up_to_sign
    };
    Table6Case {
        k: outer,
        l: inner,
        case,
        lhs_terms: lhs.term_count(),
        rhs_terms: expected.term_count(),
        equal,
        equal_up_to_sign,
        sign,
        ratio: ratio.map(|r| r.to_string()),
        pass,
        difference: (!pass).then(|| (&lhs - &expected).to_string()),
    }
}

/// Sweeps the identity table over `1 ≤ k ≤ k_max`, `1 ≤ ℓ ≤ l_max`,
/// classifying each pair and comparing both sides exactly and up to sign.
pub fn verify_table6(k_max: usize, l_max: usize) -> Result<Table6Report> {
    let requested = k_max + l_max - 1;
    if requested > MAX_TABLE6_ARGS {
        return Err(Error::ResourceLimit {
            context: "verify_table6",
            limit: MAX_TABLE6_ARGS,
            requested,
        });
    }
    let mut cases = Vec::new();
    for outer in 1..=k_max {
        for inner in 1..=l_max {
            cases.push(check_case(outer, inner));
        }
    }
    let ok = cases.iter().all(|c| c.pass);
    Ok(Table6Report {
        k_max,
        l_max,
        cases,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::factorial;

    fn a(i: u32) -> NcPoly {
        NcPoly::generator(i)
    }

    /// Oracle: hand-enumerated `S_3` with signs.
    #[test]
    fn ternary_alternation_matches_explicit_s3() {
        let got = alt_composition(&[a(1), a(2), a(3)]);
        let s3: [(&[u32; 3], i64); 6] = [
            (&[1, 2, 3], 1),
            (&[1, 3, 2], -1),
            (&[2, 1, 3], -1),
            (&[2, 3, 1], 1),
            (&[3, 1, 2], 1),
            (&[3, 2, 1], -1),
        ];
        let mut expected = NcPoly::zero();
        for (letters, sign) in s3 {
            expected = &expected + &NcPoly::from_term(Word(letters.to_vec()), Int::from(sign));
        }
        assert_eq!(got, expected);
        assert_eq!(got.term_count(), 6);
    }

    #[test]
    fn binary_alternation_is_the_commutator() {
        let got = alt_composition(&[a(1), a(2)]);
        let expected = &(&a(1) * &a(2)) - &(&a(2) * &a(1));
        assert_eq!(got, expected);
        assert_eq!(got.to_string(), "a1*a2 - a2*a1");
    }

    #[test]
    fn repeated_argument_kills_the_sum() {
        assert!(alt_composition(&[a(1), a(1), a(2)]).is_zero());
    }

    #[test]
    fn term_counts_and_unit_coefficients() {
        for n in 1..=6usize {
            let delta = alt_composition(&generators(n));
            assert_eq!(Int::from(delta.term_count()), factorial(n));
            assert!(delta.terms().all(|(_, c)| c.abs() == Int::from(1)));
        }
    }

    #[test]
    fn swapping_two_arguments_negates() {
        for n in 2..=5usize {
            let gens = generators(n);
            let base = alt_composition(&gens);
            for i in 0..n {
                for j in i + 1..n {
                    let mut swapped = gens.clone();
                    swapped.swap(i, j);
                    assert_eq!(alt_composition(&swapped), -&base);
                }
            }
        }
    }

    /// Oracle for the unshuffle normalization: the full-`S_n` nested sum.
    fn nested_alt_full(outer: usize, inner: usize) -> NcPoly {
        let n = outer + inner - 1;
        let gens = generators(n);
        let mut acc = NcPoly::zero();
        for (perm, sign) in signed_permutations(n) {
            let inner_args: Vec<NcPoly> = perm[..inner].iter().map(|&i| gens[i].clone()).collect();
            let mut outer_args = vec![alt_composition(&inner_args)];
            outer_args.extend(perm[inner..].iter().map(|&i| gens[i].clone()));
            acc = &acc + &alt_composition(&outer_args).scale(&Int::from(sign));
        }
        acc
    }

    #[test]
    fn full_sum_is_factorial_multiple_of_unshuffle_sum() {
        for (outer, inner) in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)] {
            let unshuffled = nested_alt(outer, inner);
            let full = nested_alt_full(outer, inner);
            let factor = factorial(outer - 1) * factorial(inner);
            assert_eq!(full, unshuffled.scale(&factor), "({outer},{inner})");
        }
    }

    #[test]
    fn classical_jacobi_and_known_cases() {
        // Δ2[Δ2] = 0: the Jacobi identity on three free generators.
        assert!(nested_alt(2, 2).is_zero());
        // Δ4[Δ2] = 0: even-even case on five generators.
        assert!(nested_alt(4, 2).is_zero());
        // Δ2[Δ3] = 2·Δ4.
        let base4 = alt_composition(&generators(4));
        assert_eq!(nested_alt(2, 3), base4.scale(&Int::from(2)));
    }

    #[test]
    fn sweep_classification_and_cap() {
        let report = verify_table6(4, 3).unwrap();
        assert!(report.ok);
        let find = |k: usize, l: usize| report.cases.iter().find(|c| c.k == k && c.l == l).unwrap();
        assert_eq!(find(2, 2).case, "6a");
        assert_eq!(find(3, 2).case, "6b");
        assert_eq!(find(2, 3).case, "6c");
        assert_eq!(find(2, 3).ratio.as_deref(), Some("2"));
        // measured: the identities hold on the nose, sign +1, in the
        // unshuffle normalization
        for case in &report.cases {
            assert!(case.equal, "k={} l={}", case.k, case.l);
            let expected_ratio = match case.case {
                "6a" => "0".to_string(),
                "6b" => "1".to_string(),
                _ => case.k.to_string(),
            };
            assert_eq!(case.ratio.as_deref(), Some(expected_ratio.as_str()));
        }
        assert!(matches!(
            verify_table6(6, 4),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
