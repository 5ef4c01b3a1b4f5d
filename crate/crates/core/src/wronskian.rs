//! Wronskian determinants, exactly.
//!
//! The polynomial Wronskian `W^{0,…,N−1}(f_1, …, f_N)` is the determinant of
//! the matrix whose row `i` holds the `i`-th derivatives. The production
//! kernel is fraction-free Bareiss elimination over `ℚ[x]` (every division
//! is exact by construction); naive cofactor expansion is kept alongside as
//! the independent oracle. Rational-exponent monomial arguments get their
//! own determinant over the monomial calculus, where every minor is itself a
//! single monomial.

use std::sync::Mutex;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{rat_int, Rat};

/// Derivative matrix with entry `(i, j) = f_j^{(i)}`.
pub fn wronskian_matrix(fs: &[Poly]) -> Vec<Vec<Poly>> {
    let n = fs.len();
    let mut rows = Vec::with_capacity(n);
    let mut current: Vec<Poly> = fs.to_vec();
    for _ in 0..n {
        rows.push(current.clone());
        current = current.iter().map(Poly::derivative).collect();
    }
    rows
}

/// Fraction-free Bareiss determinant over the polynomial ring.
pub fn det_bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut negated = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, r);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = numerator
                    .div_exact(&prev)
                    .expect("Bareiss intermediate division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negated {
        -&det
    } else {
        det
    }
}

/// Cofactor-expansion determinant; the test oracle for [`det_bareiss`].
pub fn det_cofactor(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det_cofactor(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// `W^{0,…,N−1}(f_1, …, f_N)` via Bareiss elimination. The empty Wronskian
/// is the constant 1.
pub fn wronskian(fs: &[Poly]) -> Poly {
    det_bareiss(wronskian_matrix(fs))
}

/// Same Wronskian through cofactor expansion; independent oracle route.
pub fn wronskian_cofactor(fs: &[Poly]) -> Poly {
    det_cofactor(&wronskian_matrix(fs))
}

/// Adds two monomials that are either zero or share an exponent. Any minor
/// of a derivative-structured monomial matrix has a single common exponent
/// across its expansion, so this never sees mixed exponents.
pub(crate) fn add_aligned(a: Monomial, b: Monomial) -> Monomial {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    assert_eq!(
        a.exponent(),
        b.exponent(),
        "monomial determinant produced misaligned exponents"
    );
    Monomial::new(a.coeff() + b.coeff(), a.exponent().clone())
}

fn mono_det_minors(m: &[Vec<Monomial>]) -> Monomial {
    let n = m.len();
    if n == 0 {
        return Monomial::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Monomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Monomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = &m[0][j] * &mono_det_minors(&minor);
        if j % 2 == 1 {
            term = term.scale(&rat_int(-1));
        }
        acc = add_aligned(acc, term);
    }
    acc
}

/// Wronskian of rational-exponent monomials, computed directly over the
/// monomial calculus by expansion in minors. Repeated exponents are allowed
/// and yield zero.
pub fn wronskian_monomials_det(ms: &[Monomial]) -> Monomial {
    let n = ms.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(ms.iter().map(|m| m.derivative_n(i)).collect::<Vec<_>>());
    }
    mono_det_minors(&rows)
}

/// Closed form for the Wronskian of unit monomials `x^{ν_j}`: the
/// Vandermonde product `∏_{i<j}(ν_j − ν_i)` on `x^{Σν − N(N−1)/2}`.
pub fn vandermonde_closed_form(exponents: &[Rat]) -> Monomial {
    let n = exponents.len();
    let mut coeff = Rat::one();
    for i in 0..n {
        for j in i + 1..n {
            coeff *= &exponents[j] - &exponents[i];
        }
    }
    let total: Rat = exponents.iter().sum();
    let offset = rat_int((n * n.saturating_sub(1) / 2) as i64);
    Monomial::new(coeff, total - offset)
}

/// Wronskian of the scaled basis monomials `x^j/j!` for `0 ≤ j ≤ n`, `j ≠ k`.
/// The result must equal `x^{n−k}/(n−k)!`; a mismatch is an internal
/// inconsistency and surfaces as an error.
pub fn basis_wronskian(n: usize, k: usize) -> Result<Poly> {
    if k > n {
        return Err(Error::InvalidArgument {
            context: "basis_wronskian",
            message: format!("k = {k} out of range 0..={n}"),
        });
    }
    let args: Vec<Poly> = (0..=n)
        .filter(|&j| j != k)
        .map(Poly::basis_monomial)
        .collect();
    let computed = wronskian(&args);
    let expected = Poly::basis_monomial(n - k);
    if computed != expected {
        return Err(Error::Inconsistency {
            context: "basis_wronskian",
            details: format!("W(n={n}, k={k}) = {computed}, closed form {expected}"),
        });
    }
    Ok(computed)
}

/// Direct-determinant route for `W_m = W(x, x²/2!, …, x^m/m!)`.
pub fn wm_direct(m: usize) -> Poly {
    let args: Vec<Poly> = (1..=m).map(Poly::basis_monomial).collect();
    wronskian(&args)
}

static WM_CACHE: Mutex<Vec<Poly>> = Mutex::new(Vec::new());

/// `W_m` computed purely by the last-row decomposition recurrence
/// `W_m = Σ_{ℓ=1}^{m−1} W_{m−ℓ}·(−1)^{ℓ+1}·x^ℓ/ℓ! − (−1)^m·x^m/m!`
/// with `W₁ = x` (and `W₀ = 1` by the empty convention). Memoized; safe for
/// concurrent callers.
pub fn wm_recurrence(m: usize) -> Poly {
    let mut cache = WM_CACHE
        .lock()
        .expect("Wronskian recurrence cache poisoned");
    if cache.is_empty() {
        cache.push(Poly::one());
        cache.push(Poly::x());
    }
    while cache.len() <= m {
        let next = cache.len();
        let mut acc = Poly::zero();
        for l in 1..next {
            let sign = if l.is_multiple_of(2) { -1 } else { 1 };
            let term = (&cache[next - l] * &Poly::basis_monomial(l)).scale(&rat_int(sign));
            acc = &acc + &term;
        }
        let tail_sign = if next.is_multiple_of(2) { -1 } else { 1 };
        acc = &acc + &Poly::basis_monomial(next).scale(&rat_int(tail_sign));
        cache.push(acc);
    }
    cache[m].clone()
}

#[derive(Clone, Debug, Serialize)]
pub struct GenFnCheck {
    pub m: usize,
    pub recurrence: String,
    pub determinant: String,
    pub closed_form: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenFnReport {
    pub m_max: usize,
    pub checks: Vec<GenFnCheck>,
    /// Whether `Σ_{m≤M} W_m` equals the degree-`M` truncation of `exp(x)−1`.
    pub series_matches_exp_minus_one: bool,
    pub ok: bool,
}

/// Verifies `W_m = x^m/m!` for `1 ≤ m ≤ m_max`, by the recurrence and by the
/// direct determinant, and matches the formal sum against `exp(x) − 1`.
pub fn verify_generating_function(m_max: usize) -> GenFnReport {
    let mut checks = Vec::new();
    let mut series = Poly::zero();
    for m in 1..=m_max {
        let rec = wm_recurrence(m);
        let det = wm_direct(m);
        let closed = Poly::basis_monomial(m);
        let pass = rec == closed && det == closed;
        series = &series + &rec;
        checks.push(GenFnCheck {
            m,
            recurrence: rec.to_string(),
            determinant: det.to_string(),
            closed_form: closed.to_string(),
            pass,
        });
    }
    let exp_truncation = Poly::from_coeffs(
        (0..=m_max)
            .map(|m| {
                if m == 0 {
                    Rat::from_integer(0.into())
                } else {
                    Rat::new(1.into(), crate::scalar::factorial(m))
                }
            })
            .collect(),
    );
    let series_matches_exp_minus_one = series == exp_truncation;
    let ok = series_matches_exp_minus_one && checks.iter().all(|c| c.pass);
    GenFnReport {
        m_max,
        checks,
        series_matches_exp_minus_one,
        ok,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq10Report {
    pub n: usize,
    pub k: usize,
    pub lhs: String,
    pub first_factor: String,
    pub second_factor: String,
    pub first_factor_is_one: bool,
    pub product_matches: bool,
    pub recurrence_matches: bool,
    pub closed_form_matches: bool,
    pub ok: bool,
}

/// Checks the factorization of the omit-`k` basis Wronskian into the
/// triangular block (identically 1) times `W_{n−k}`.
pub fn verify_factorization_eq10(n: usize, k: usize) -> Result<Eq10Report> {
    if k > n {
        return Err(Error::InvalidArgument {
            context: "verify_factorization_eq10",
            message: format!("k = {k} out of range 0..={n}"),
        });
    }
    let args: Vec<Poly> = (0..=n)
        .filter(|&j| j != k)
        .map(Poly::basis_monomial)
        .collect();
    let lhs = wronskian(&args);
    let first_args: Vec<Poly> = (0..k).map(Poly::basis_monomial).collect();
    let first = wronskian(&first_args);
    let second = wm_direct(n - k);
    let recurrence = wm_recurrence(n - k);
    let first_factor_is_one = first == Poly::one();
    let product_matches = lhs == &first * &second;
    let recurrence_matches = second == recurrence;
    let closed_form_matches = lhs == Poly::basis_monomial(n - k);
    let ok = first_factor_is_one && product_matches && recurrence_matches && closed_form_matches;
    Ok(Eq10Report {
        n,
        k,
        lhs: lhs.to_string(),
        first_factor: first.to_string(),
        second_factor: second.to_string(),
        first_factor_is_one,
        product_matches,
        recurrence_matches,
        closed_form_matches,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;
    use rand_core::{RngCore, SeedableRng};

    fn xpow(k: usize) -> Poly {
        Poly::monomial(Rat::one(), k)
    }

    #[test]
    fn triangular_and_basis_examples() {
        assert_eq!(
            wronskian(&[Poly::one(), Poly::x(), Poly::basis_monomial(2)]),
            Poly::one()
        );
        assert_eq!(
            wronskian(&[Poly::x(), Poly::basis_monomial(2), Poly::basis_monomial(3)]),
            Poly::basis_monomial(3)
        );
        assert_eq!(
            wronskian(&[Poly::one(), Poly::x(), xpow(2)]),
            Poly::constant(rat_int(2))
        );
        assert_eq!(wronskian(&[]), Poly::one());
    }

    #[test]
    fn monomial_determinant_examples() {
        // 2×2: x²·(x⁵)' − x⁵·(x²)' = 3x⁶
        let got =
            wronskian_monomials_det(&[Monomial::power(rat_int(2)), Monomial::power(rat_int(5))]);
        assert_eq!(got, Monomial::new(rat_int(3), rat_int(6)));
        // equal columns vanish
        assert!(wronskian_monomials_det(
            &[Monomial::power(rat(7, 3)), Monomial::power(rat(7, 3)),]
        )
        .is_zero());
        // half-integer pair: (3/2 − 1/2)·x^{2−1}
        let got =
            wronskian_monomials_det(&[Monomial::power(rat(1, 2)), Monomial::power(rat(3, 2))]);
        assert_eq!(got, Monomial::power(rat_int(1)));
    }

    #[test]
    fn vandermonde_closed_form_examples() {
        assert_eq!(
            vandermonde_closed_form(&[rat_int(0), rat_int(1), rat_int(2)]),
            Monomial::new(rat_int(2), rat_int(0))
        );
        assert!(vandermonde_closed_form(&[rat(5, 2), rat(5, 2)]).is_zero());
        assert_eq!(
            vandermonde_closed_form(&[rat_int(2), rat_int(5)]),
            wronskian_monomials_det(&[Monomial::power(rat_int(2)), Monomial::power(rat_int(5))])
        );
    }

    #[test]
    fn basis_wronskian_closed_form() {
        assert_eq!(basis_wronskian(2, 2).unwrap(), Poly::one());
        assert_eq!(basis_wronskian(2, 0).unwrap(), Poly::basis_monomial(2));
        assert_eq!(basis_wronskian(5, 3).unwrap(), Poly::basis_monomial(2));
        assert!(basis_wronskian(3, 4).is_err());
    }

    #[test]
    fn recurrence_matches_direct_determinants() {
        assert_eq!(wm_recurrence(1), Poly::x());
        assert_eq!(wm_recurrence(2), Poly::basis_monomial(2));
        for m in 0..=8 {
            assert_eq!(wm_recurrence(m), wm_direct(m), "W_{m}");
        }
        assert_eq!(wm_recurrence(5), Poly::monomial(rat(1, 120), 5));
    }

    #[test]
    fn generating_function_consequence() {
        let report = verify_generating_function(6);
        assert!(report.ok);
        assert_eq!(report.checks.len(), 6);
        assert!(verify_generating_function(1).ok);
    }

    #[test]
    fn factorization_examples() {
        for (n, k) in [(3, 1), (4, 4), (4, 2), (4, 0)] {
            let report = verify_factorization_eq10(n, k).unwrap();
            assert!(report.ok, "({n},{k}): {report:?}");
        }
        let r = verify_factorization_eq10(3, 1).unwrap();
        assert_eq!(r.lhs, "x^2/2");
    }

    fn rng_poly(rng: &mut rand_chacha::ChaCha8Rng, max_deg: usize) -> Poly {
        let deg = (rng.next_u32() as usize) % (max_deg + 1);
        let coeffs = (0..=deg)
            .map(|_| rat_int((rng.next_u32() % 11) as i64 - 5))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    #[test]
    fn bareiss_agrees_with_cofactor_up_to_six_by_six() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6usize {
            for _ in 0..4 {
                let m: Vec<Vec<Poly>> = (0..n)
                    .map(|_| (0..n).map(|_| rng_poly(&mut rng, 2)).collect())
                    .collect();
                assert_eq!(det_bareiss(m.clone()), det_cofactor(&m), "n = {n}");
            }
        }
    }

    #[test]
    fn pivoting_handles_leading_zeros() {
        // First function constant ⇒ zero pivot below row 0 forces a swap.
        let m = vec![
            vec![Poly::zero(), Poly::one()],
            vec![Poly::one(), Poly::zero()],
        ];
        assert_eq!(det_bareiss(m), Poly::constant(rat_int(-1)));
        let det = wronskian(&[xpow(2), Poly::one()]);
        assert_eq!(det, Poly::monomial(rat_int(-2), 1));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 0..=max_deg + 1)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn antisymmetric_under_transpositions(fs in prop::collection::vec(arb_poly(4), 2..=4),
                                              i in 0usize..4, j in 0usize..4) {
            let n = fs.len();
            prop_assume!(i < n && j < n && i != j);
            let base = wronskian(&fs);
            let mut swapped = fs.clone();
            swapped.swap(i, j);
            prop_assert_eq!(wronskian(&swapped), -&base);
        }

        #[test]
        fn vanishes_on_equal_arguments(f in arb_poly(4), g in arb_poly(4)) {
            prop_assert!(wronskian(&[f.clone(), g, f]).is_zero());
        }

        #[test]
        fn multilinear_in_each_slot(fs in prop::collection::vec(arb_poly(3), 3),
                                    g in arb_poly(3),
                                    a in (-5i64..=5, 1i64..=4), b in (-5i64..=5, 1i64..=4),
                                    slot in 0usize..3) {
            let (a, b) = (rat(a.0, a.1), rat(b.0, b.1));
            let mut combined = fs.clone();
            combined[slot] = &fs[slot].scale(&a) + &g.scale(&b);
            let lhs = wronskian(&combined);
            let mut with_g = fs.clone();
            with_g[slot] = g;
            let rhs = &wronskian(&fs).scale(&a) + &wronskian(&with_g).scale(&b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn monomial_route_matches_polynomial_route(exps in prop::collection::vec(0i64..=5, 2..=3)) {
            let monos: Vec<Monomial> = exps.iter().map(|&e| Monomial::power(rat_int(e))).collect();
            let polys: Vec<Poly> = exps.iter().map(|&e| xpow(e as usize)).collect();
            let via_mono = wronskian_monomials_det(&monos).to_poly().unwrap();
            prop_assert_eq!(via_mono, wronskian(&polys));
        }

        #[test]
        fn closed_form_matches_monomial_determinant(exps in prop::collection::vec((-9i64..=9, 1i64..=4), 2..=4)) {
            let exps: Vec<Rat> = exps.into_iter().map(|(n, d)| rat(n, d)).collect();
            let monos: Vec<Monomial> = exps.iter().cloned().map(Monomial::power).collect();
            prop_assert_eq!(vandermonde_closed_form(&exps), wronskian_monomials_det(&monos));
        }
    }
}
