//! The strong-homotopy Lie layer: Jacobiators of Wronskian brackets, the
//! finite-dimensional algebras `k_N[x]`, the `sl(2)` bottom case, and the
//! Witt-algebra deformation with Vandermonde structure constants.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
pub use crate::perm::{unshuffles, Unshuffle};
use crate::poly::Poly;
use crate::scalar::{factorial, render_rat, Int, Rat};
use crate::wronskian::{vandermonde_closed_form, wronskian, wronskian_monomials_det};

/// Cap for [`verify_jacobi_kn`]: the sweep enumerates all `(2N−1)`-tuples
/// with repetition from an `(N+1)`-dimensional basis.
pub const MAX_JACOBI_KN: usize = 4;

/// The Jacobiator of the `(k+1)`-ary outer and `(ℓ+1)`-ary inner Wronskian
/// brackets on `k+ℓ+1` arguments, summed over `(ℓ+1, k)`-unshuffles:
///
/// `Σ_τ sign(τ) · W^{0..k}(W^{0..ℓ}(f_{τ(1)}, …, f_{τ(ℓ+1)}), f_{τ(ℓ+2)}, …)`.
///
/// Identically zero for all polynomial arguments.
pub fn jacobiator(k: usize, l: usize, fs: &[Poly]) -> Poly {
    jacobiator_with(k, l, fs, &mut |args| wronskian(args))
}

/// [`jacobiator`] with a pluggable bracket, so sweeps can memoize the
/// Wronskian evaluations without changing the computation.
pub fn jacobiator_with(
    k: usize,
    l: usize,
    fs: &[Poly],
    bracket: &mut impl FnMut(&[Poly]) -> Poly,
) -> Poly {
    assert_eq!(
        fs.len(),
        k + l + 1,
        "jacobiator of W^(0..{k}) over W^(0..{l}) needs {} arguments",
        k + l + 1
    );
    let mut acc = Poly::zero();
    for u in unshuffles(l + 1, k) {
        let inner_args: Vec<Poly> = u.first.iter().map(|&i| fs[i].clone()).collect();
        let mut outer_args = vec![bracket(&inner_args)];
        outer_args.extend(u.second.iter().map(|&i| fs[i].clone()));
        let term = bracket(&outer_args);
        let signed = if u.sign < 0 { -&term } else { term };
        acc = &acc + &signed;
    }
    acc
}

/// Memoizing Wronskian evaluator. Single-term arguments are normalized to
/// unit monomials with the scalar pulled out front (multilinearity), which
/// collapses the sweep over monomial tuples onto a small set of distinct
/// determinants.
#[derive(Default)]
pub struct WronskianCache {
    cache: HashMap<Vec<Poly>, Poly>,
}

impl WronskianCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bracket(&mut self, args: &[Poly]) -> Poly {
        let mut factor = Rat::one();
        let mut key = Vec::with_capacity(args.len());
        for arg in args {
            if arg.is_zero() {
                return Poly::zero();
            }
            let nonzero = arg.coeffs().iter().filter(|c| !c.is_zero()).count();
            if nonzero == 1 {
                let lead = arg.leading_coeff().expect("nonzero poly has a lead");
                factor *= lead;
                let crate::poly::Degree::Finite(deg) = arg.degree() else {
                    unreachable!()
                };
                key.push(Poly::monomial(Rat::one(), deg));
            } else {
                key.push(arg.clone());
            }
        }
        let base = self
            .cache
            .entry(key)
            .or_insert_with_key(|key| wronskian(key));
        base.scale(&factor)
    }
}

/// The `(N+1)`-dimensional space of polynomials of degree at most `N`, with
/// the scaled monomial basis `x^k/k!` and the `N`-ary Wronskian bracket.
#[derive(Clone, Copy, Debug)]
pub struct KnAlgebra {
    n: usize,
}

impl KnAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        KnAlgebra { n }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Basis `x^k/k!` for `0 ≤ k ≤ N`; closed under derivation.
    pub fn basis(&self) -> Vec<Poly> {
        (0..=self.n).map(Poly::basis_monomial).collect()
    }

    /// The `N`-ary Wronskian bracket restricted to this space.
    pub fn bracket(&self, args: &[Poly]) -> Poly {
        assert_eq!(args.len(), self.n, "bracket arity is N = {}", self.n);
        wronskian(args)
    }
}

fn serialize_int_as_string<S: Serializer>(
    value: &Int,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

/// One nonzero structure constant: the bracket of the basis elements named
/// by `args` (in increasing order) equals `coeff` times basis element
/// `result`.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub args: Vec<i64>,
    pub result: i64,
    #[serde(serialize_with = "serialize_int_as_string")]
    pub coeff: Int,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraKind {
    #[serde(rename = "kN")]
    KN,
    #[serde(rename = "witt")]
    Witt,
}

/// Structure-constant table for one of the two bracket algebras, with
/// entries sorted lexicographically by argument tuple.
#[derive(Clone, Debug, Serialize)]
pub struct StructureTable {
    pub algebra: AlgebraKind,
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<TableEntry>,
}

impl StructureTable {
    /// Flat CSV rendering: one row per entry, argument tuple joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("args,result,coeff\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{}\n",
                e.args.iter().map(|a| a.to_string()).join(";"),
                e.result,
                e.coeff
            ));
        }
        out
    }
}

/// Builds the full structure table of `k_N[x]`: every increasing `N`-tuple
/// of basis indices from `{0, …, N}`. Exactly the `N+1` omit-one tuples
/// appear, each with coefficient `+1` on basis element `N−k` when the
/// omitted index is `k`.
pub fn structure_constants_kn(n: usize) -> StructureTable {
    let algebra = KnAlgebra::new(n);
    let basis = algebra.basis();
    let mut entries = Vec::new();
    for tuple in (0..=n).combinations(n) {
        let args: Vec<Poly> = tuple.iter().map(|&i| basis[i].clone()).collect();
        let value = algebra.bracket(&args);
        if value.is_zero() {
            continue;
        }
        let nonzero: Vec<usize> = value
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m)
            .collect();
        assert_eq!(
            nonzero.len(),
            1,
            "bracket of basis monomials must be a single monomial"
        );
        let m = nonzero[0];
        let coeff = value.coeff(m) * Rat::from_integer(factorial(m));
        assert!(coeff.is_integer(), "k_N structure constants are integers");
        entries.push(TableEntry {
            args: tuple.iter().map(|&i| i as i64).collect(),
            result: m as i64,
            coeff: coeff.to_integer(),
        });
    }
    StructureTable {
        algebra: AlgebraKind::KN,
        n,
        entries,
    }
}

/// One generator `a_i = x^{i + N/2}` of the `N`-ary Witt deformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittGenerator {
    pub index: i64,
    pub arity: usize,
}

impl WittGenerator {
    pub fn exponent(&self) -> Rat {
        Rat::from_integer(Int::from(self.index)) + Rat::new(Int::from(self.arity), Int::from(2))
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::power(self.exponent())
    }
}

/// The `N`-ary Witt bracket `[a_{i_1}, …, a_{i_N}] = Ω·a_{i_1+⋯+i_N}` with
/// `Ω = ∏_{p<q}(i_q − i_p)`, computed through the Vandermonde closed form on
/// the shifted exponents. Returns `(Ω, Σ i_j)` and cross-checks the index
/// bookkeeping: the resulting exponent must be `(Σ i_j) + N/2`.
pub fn witt_bracket(n: usize, indices: &[i64]) -> Result<(Int, i64)> {
    if indices.len() != n {
        return Err(Error::InvalidArgument {
            context: "witt_bracket",
            message: format!("expected {n} indices, got {}", indices.len()),
        });
    }
    let exponents: Vec<Rat> = indices
        .iter()
        .map(|&i| WittGenerator { index: i, arity: n }.exponent())
        .collect();
    let value = vandermonde_closed_form(&exponents);
    let index_sum: i64 = indices.iter().sum();
    let omega_rat = value.coeff().clone();
    debug_assert!(omega_rat.is_integer());
    let omega = omega_rat.to_integer();
    if !omega.is_zero() {
        let expected_exponent =
            Rat::from_integer(Int::from(index_sum)) + Rat::new(Int::from(n), Int::from(2));
        if value.exponent() != &expected_exponent {
            return Err(Error::Inconsistency {
                context: "witt_bracket",
                details: format!(
                    "bracket of {indices:?} landed on exponent {}, expected {}",
                    render_rat(value.exponent()),
                    render_rat(&expected_exponent)
                ),
            });
        }
    }
    Ok((omega, index_sum))
}

/// Structure table of the `N`-ary Witt bracket over a finite index window.
pub fn witt_structure_table(
    n: usize,
    lo: i64,
    hi: i64,
    max_entries: usize,
) -> Result<StructureTable> {
    if lo > hi {
        return Err(Error::InvalidArgument {
            context: "witt_structure_table",
            message: format!("empty index range [{lo}, {hi}]"),
        });
    }
    let window = (hi - lo + 1) as usize;
    let count = num_integer::binomial(Int::from(window), Int::from(n));
    if count > Int::from(max_entries) {
        return Err(Error::ResourceLimit {
            context: "witt_structure_table",
            limit: max_entries,
            requested: usize::try_from(count.clone()).unwrap_or(usize::MAX),
        });
    }
    let mut entries = Vec::new();
    for tuple in (lo..=hi).combinations(n) {
        let (omega, index_sum) = witt_bracket(n, &tuple)?;
        if omega.is_zero() {
            continue;
        }
        entries.push(TableEntry {
            args: tuple,
            result: index_sum,
            coeff: omega,
        });
    }
    Ok(StructureTable {
        algebra: AlgebraKind::Witt,
        n,
        entries,
    })
}

/// Jacobiator of the `N`-ary Witt bracket on `2N−1` generators, evaluated
/// in the monomial calculus (exponents may be half-integers). Every
/// unshuffle term lands on the same exponent, so the sum is a single
/// monomial whose coefficient must vanish.
pub fn witt_jacobiator(n: usize, indices: &[i64]) -> Monomial {
    assert_eq!(indices.len(), 2 * n - 1, "need 2N−1 generator indices");
    let gens: Vec<Monomial> = indices
        .iter()
        .map(|&i| WittGenerator { index: i, arity: n }.monomial())
        .collect();
    let mut acc = Monomial::zero();
    for u in unshuffles(n, n - 1) {
        let inner_args: Vec<Monomial> = u.first.iter().map(|&i| gens[i].clone()).collect();
        let mut outer_args = vec![wronskian_monomials_det(&inner_args)];
        outer_args.extend(u.second.iter().map(|&i| gens[i].clone()));
        let term = wronskian_monomials_det(&outer_args).scale(&crate::scalar::rat_int(u.sign));
        acc = crate::wronskian::add_aligned(acc, term);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Relation {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Report {
    pub relations: Vec<Sl2Relation>,
    /// Same relations re-checked at the operator level through the
    /// alternated composition of the realizing vector fields.
    pub operator_commutators_match: bool,
    pub ok: bool,
}

/// Verifies the three `sl(2)` relations in the quadratic vector-field
/// realisation `e ↦ 1·∂`, `h ↦ −2x·∂`, `f ↦ −x²·∂` via the binary
/// Wronskian bracket of the coefficients.
pub fn verify_sl2() -> Sl2Report {
    let e = Poly::one();
    let h = Poly::monomial(crate::scalar::rat_int(-2), 1);
    let f = Poly::monomial(crate::scalar::rat_int(-1), 2);

    let mut relations = Vec::new();
    let mut check = |name: &'static str, lhs: Poly, rhs: Poly| {
        let pass = lhs == rhs;
        relations.push(Sl2Relation {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        });
    };
    check(
        "[h,e] = 2e",
        wronskian(&[h.clone(), e.clone()]),
        e.scale(&crate::scalar::rat_int(2)),
    );
    check(
        "[h,f] = -2f",
        wronskian(&[h.clone(), f.clone()]),
        f.scale(&crate::scalar::rat_int(-2)),
    );
    check("[e,f] = h", wronskian(&[e.clone(), f.clone()]), h.clone());

    let as_op = |w: &Poly| crate::diffop::DiffOp::single(w.clone(), 1);
    let commutator = |a: &Poly, b: &Poly| {
        crate::diffop::alt_compose_ops(&[as_op(a), as_op(b)]).expect("arity 2 is under the cap")
    };
    let operator_commutators_match = commutator(&h, &e)
        == as_op(&e.scale(&crate::scalar::rat_int(2)))
        && commutator(&h, &f) == as_op(&f.scale(&crate::scalar::rat_int(-2)))
        && commutator(&e, &f) == as_op(&h);

    let ok = operator_commutators_match && relations.iter().all(|r| r.pass);
    Sl2Report {
        relations,
        operator_commutators_match,
        ok,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiKnReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub arguments: usize,
    pub tuples_checked: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Evaluates the `(2N−1)`-argument Jacobiator of the `N`-ary Wronskian
/// bracket on every increasing `(2N−1)`-tuple with repetition from the
/// basis of `k_N[x]`. `N` must be even; all values must vanish.
pub fn verify_jacobi_kn(n: usize) -> Result<JacobiKnReport> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument {
            context: "verify_jacobi_kn",
            message: format!("N must be a positive even integer, got {n}"),
        });
    }
    if n > MAX_JACOBI_KN {
        return Err(Error::ResourceLimit {
            context: "verify_jacobi_kn",
            limit: MAX_JACOBI_KN,
            requested: n,
        });
    }
    let algebra = KnAlgebra::new(n);
    let basis = algebra.basis();
    let arguments = 2 * n - 1;
    let mut cache = WronskianCache::new();
    let mut tuples_checked = 0usize;
    let mut failures = Vec::new();
    for tuple in (0..=n).combinations_with_replacement(arguments) {
        let fs: Vec<Poly> = tuple.iter().map(|&i| basis[i].clone()).collect();
        let value = jacobiator_with(n - 1, n - 1, &fs, &mut |args| cache.bracket(args));
        tuples_checked += 1;
        if !value.is_zero() {
            failures.push(format!("tuple {tuple:?}: {value}"));
        }
    }
    let ok = failures.is_empty();
    Ok(JacobiKnReport {
        n,
        arguments,
        tuples_checked,
        failures,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub indices: Vec<i64>,
    pub shift: String,
    pub closed_unshifted: String,
    pub closed_shifted: String,
    pub det_unshifted: String,
    pub det_shifted: String,
    pub equal: bool,
}

/// Checks the translation invariance of the Vandermonde structure constant:
/// `Ω(i_1+s, …, i_N+s) = Ω(i_1, …, i_N)`, through the closed-form product
/// and through two independent monomial-determinant evaluations.
pub fn verify_translation_invariance(n: usize, indices: &[i64], shift: &Rat) -> TranslationReport {
    assert_eq!(indices.len(), n);
    let mut reference = Rat::one();
    for p in 0..n {
        for q in p + 1..n {
            reference *= Rat::from_integer(Int::from(indices[q] - indices[p]));
        }
    }
    let closed_unshifted = {
        let exps: Vec<Rat> = indices
            .iter()
            .map(|&i| Rat::from_integer(Int::from(i)))
            .collect();
        vandermonde_closed_form(&exps).coeff().clone()
    };
    let closed_shifted = {
        let exps: Vec<Rat> = indices
            .iter()
            .map(|&i| Rat::from_integer(Int::from(i)) + shift)
            .collect();
        vandermonde_closed_form(&exps).coeff().clone()
    };
    let det_unshifted = {
        let monos: Vec<Monomial> = indices
            .iter()
            .map(|&i| Monomial::power(Rat::from_integer(Int::from(i))))
            .collect();
        wronskian_monomials_det(&monos).coeff().clone()
    };
    let det_shifted = {
        let monos: Vec<Monomial> = indices
            .iter()
            .map(|&i| Monomial::power(Rat::from_integer(Int::from(i)) + shift))
            .collect();
        wronskian_monomials_det(&monos).coeff().clone()
    };
    let equal = closed_unshifted == reference
        && closed_shifted == reference
        && det_unshifted == reference
        && det_shifted == reference;
    TranslationReport {
        n,
        indices: indices.to_vec(),
        shift: render_rat(shift),
        closed_unshifted: render_rat(&closed_unshifted),
        closed_shifted: render_rat(&closed_shifted),
        det_unshifted: render_rat(&det_unshifted),
        det_shifted: render_rat(&det_shifted),
        equal,
    }
}
