//! Reproducible verification sweeps.
//!
//! Each suite runs one family of identity checks over an exhaustive
//! small-degree grid plus (where applicable) a seed-controlled randomized
//! batch, and returns a serializable report with an `ok` flag. Identical
//! parameters and seed produce identical reports; a "pass" never depends on
//! sampling luck because the exhaustive grids are always included.

use itertools::Itertools;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::conformal::{conformal_law_sides, conformal_weight, CoordinateChange};
use crate::diffop::verify_theorem1;
use crate::error::Result;
use crate::free_algebra::{verify_table6, Table6Report};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{rat, rat_int, Int, Rat};
use crate::shlie::{
    jacobiator_with, structure_constants_kn, verify_jacobi_kn, verify_sl2,
    verify_translation_invariance, witt_bracket, witt_jacobiator, JacobiKnReport, Sl2Report,
    WronskianCache,
};
use crate::wronskian::{
    basis_wronskian, vandermonde_closed_form, verify_generating_function, wronskian_monomials_det,
    GenFnReport,
};

pub const DEFAULT_SEED: u64 = 17;

fn rng_range(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

fn rng_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng_range(rng, -12, 12), rng_range(rng, 1, 6))
}

fn rng_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng_range(rng, 0, max_deg as i64) as usize;
    Poly::from_coeffs(
        (0..=deg)
            .map(|_| rat(rng_range(rng, -6, 6), rng_range(rng, 1, 4)))
            .collect(),
    )
}

/// Outcome of one sweep: how many instances were checked and which failed.
#[derive(Clone, Debug, Serialize)]
pub struct SweepStats {
    pub checked: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

impl SweepStats {
    fn new(checked: usize, failures: Vec<String>) -> Self {
        let ok = failures.is_empty();
        SweepStats {
            checked,
            failures,
            ok,
        }
    }
}

pub fn suite_sl2() -> Sl2Report {
    verify_sl2()
}

#[derive(Clone, Debug)]
pub struct Eq4Options {
    pub seed: u64,
    /// Exhaustive monomial degree for the p = 1 pair grid.
    pub p1_degree: usize,
    /// Exhaustive monomial degree for the p = 2 quadruple grid.
    pub p2_grid_degree: usize,
    pub p2_random_tuples: usize,
    pub p2_random_degree: usize,
}

impl Default for Eq4Options {
    fn default() -> Self {
        Eq4Options {
            seed: DEFAULT_SEED,
            p1_degree: 6,
            p2_grid_degree: 3,
            p2_random_tuples: 200,
            p2_random_degree: 4,
        }
    }
}

/// Both readings of the Wronskian-bracket law per sweep: `equality` is the
/// strict `lhs == W·∂^p` claim, `proportionality` the measured law
/// `lhs == λ_p·W·∂^p` with one constant for the whole sweep.
#[derive(Clone, Debug, Serialize)]
pub struct Eq4Sweep {
    pub p: usize,
    pub equality: SweepStats,
    pub proportionality: SweepStats,
    /// Distinct nonzero ratios observed across the sweep (a single value
    /// when the proportional law holds: `1` at p = 1, `2` at p = 2).
    pub observed_ratios: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq4Report {
    pub p1_exhaustive: Eq4Sweep,
    pub p2_grid: Eq4Sweep,
    pub p2_random: Eq4Sweep,
    /// `[∂², x∂², x²∂², x³∂²]`: measured value and the strict-equality pin
    /// `12·∂²`; the measured value is `24·∂²`.
    pub pinned_lhs: String,
    pub pinned_expected: String,
    pub pinned_equal: bool,
    /// Strict Wronskian equality over every sweep (holds only at p = 1).
    pub equality_ok: bool,
    /// Proportionality with a single constant per arity, measured exactly.
    pub proportionality_ok: bool,
    /// The strict claim including the pinned instance; reported as the
    /// suite verdict so the exit code reflects the as-stated check.
    pub ok: bool,
}

fn eq4_sweep<'a>(p: usize, tuples: impl Iterator<Item = Vec<Poly>> + 'a) -> Eq4Sweep {
    let mut checked = 0usize;
    let mut equality_failures = Vec::new();
    let mut proportionality_failures = Vec::new();
    let mut ratios: Vec<String> = Vec::new();
    for ws in tuples {
        let report = verify_theorem1(p, &ws).expect("arity under cap");
        checked += 1;
        let label = || ws.iter().map(|w| w.to_string()).join(", ");
        if !report.equal {
            equality_failures.push(format!(
                "p={p} ({}): {} vs {}",
                label(),
                report.lhs,
                report.rhs
            ));
        }
        match &report.ratio {
            None => proportionality_failures.push(format!(
                "p={p} ({}): not proportional: {} vs {}",
                label(),
                report.lhs,
                report.rhs
            )),
            Some(r) => {
                if r != "0" && !ratios.contains(r) {
                    ratios.push(r.clone());
                }
            }
        }
    }
    if ratios.len() > 1 {
        proportionality_failures.push(format!("mixed ratios observed: {ratios:?}"));
    }
    Eq4Sweep {
        p,
        equality: SweepStats::new(checked, equality_failures),
        proportionality: SweepStats::new(checked, proportionality_failures),
        observed_ratios: ratios,
    }
}

/// The alternated composition of `2p` pure-order-`p` operators against the
/// Wronskian of the coefficients times `∂^p`, both as the strict equality
/// and as the measured proportional law.
pub fn suite_eq4(options: &Eq4Options) -> Eq4Report {
    let xpow = |k: usize| Poly::monomial(rat_int(1), k);

    let d1 = options.p1_degree;
    let p1_exhaustive = eq4_sweep(
        1,
        std::iter::repeat_n(0..=d1, 2)
            .multi_cartesian_product()
            .map(|t| t.into_iter().map(xpow).collect()),
    );

    let d2 = options.p2_grid_degree;
    let p2_grid = eq4_sweep(
        2,
        std::iter::repeat_n(0..=d2, 4)
            .multi_cartesian_product()
            .map(|t| t.into_iter().map(xpow).collect()),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let random_tuples: Vec<Vec<Poly>> = (0..options.p2_random_tuples)
        .map(|_| {
            (0..4)
                .map(|_| rng_poly(&mut rng, options.p2_random_degree))
                .collect()
        })
        .collect();
    let p2_random = eq4_sweep(2, random_tuples.into_iter());

    let pinned = verify_theorem1(2, &[xpow(0), xpow(1), xpow(2), xpow(3)]).expect("arity 4");
    let pinned_expected = "12*D^2".to_string();
    let pinned_equal = pinned.equal && pinned.lhs == pinned_expected;

    let equality_ok =
        p1_exhaustive.equality.ok && p2_grid.equality.ok && p2_random.equality.ok && pinned_equal;
    let proportionality_ok = p1_exhaustive.proportionality.ok
        && p2_grid.proportionality.ok
        && p2_random.proportionality.ok;
    Eq4Report {
        p1_exhaustive,
        p2_grid,
        p2_random,
        pinned_lhs: pinned.lhs,
        pinned_expected,
        pinned_equal,
        equality_ok,
        proportionality_ok,
        ok: equality_ok,
    }
}

/// Identity table for nested alternated compositions, swept up to the
/// eight-argument cap.
pub fn suite_eq6(k_max: usize, l_max: usize) -> Result<Table6Report> {
    verify_table6(k_max, l_max)
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq7Pair {
    pub k: usize,
    pub l: usize,
    pub degree_bound: usize,
    pub stats: SweepStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq7Report {
    pub pairs: Vec<Eq7Pair>,
    pub ok: bool,
}

/// `W^{0..k}[W^{0..ℓ}] = 0` on the exhaustive grid of monomial tuples of
/// degree `≤ k+ℓ+2` per pair; by multilinearity this certifies the identity
/// for every polynomial of those degrees.
pub fn suite_eq7(k_max: usize, l_max: usize, degree_override: Option<usize>) -> Eq7Report {
    let mut cache = WronskianCache::new();
    let mut pairs = Vec::new();
    for k in 1..=k_max {
        for l in 1..=l_max {
            let degree_bound = degree_override.unwrap_or(k + l + 2);
            let arguments = k + l + 1;
            let mut checked = 0usize;
            let mut failures = Vec::new();
            for tuple in (0..=degree_bound).combinations_with_replacement(arguments) {
                let fs: Vec<Poly> = tuple
                    .iter()
                    .map(|&a| Poly::monomial(rat_int(1), a))
                    .collect();
                let value = jacobiator_with(k, l, &fs, &mut |args| cache.bracket(args));
                checked += 1;
                if !value.is_zero() {
                    failures.push(format!("k={k} l={l} tuple {tuple:?}: {value}"));
                }
            }
            pairs.push(Eq7Pair {
                k,
                l,
                degree_bound,
                stats: SweepStats::new(checked, failures),
            });
        }
    }
    let ok = pairs.iter().all(|p| p.stats.ok);
    Eq7Report { pairs, ok }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableSummary {
    #[serde(rename = "N")]
    pub n: usize,
    pub nonzero_entries: usize,
    pub all_plus_minus_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq9Report {
    pub n_max: usize,
    pub basis_wronskians: SweepStats,
    pub tables: Vec<TableSummary>,
    pub ok: bool,
}

/// Omit-one basis Wronskians against the closed form `x^{N−k}/(N−k)!`, and
/// the structure tables of `k_N[x]` (exactly `N+1` entries, all `±1`).
pub fn suite_eq9(n_max: usize) -> Eq9Report {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 0..=n_max {
        for k in 0..=n {
            checked += 1;
            if let Err(e) = basis_wronskian(n, k) {
                failures.push(format!("(N={n}, k={k}): {e}"));
            }
        }
    }
    let basis_wronskians = SweepStats::new(checked, failures);

    let mut tables = Vec::new();
    for n in 1..=n_max {
        let table = structure_constants_kn(n);
        tables.push(TableSummary {
            n,
            nonzero_entries: table.entries.len(),
            all_plus_minus_one: table
                .entries
                .iter()
                .all(|e| e.coeff == Int::from(1) || e.coeff == Int::from(-1)),
        });
    }
    let ok = basis_wronskians.ok
        && tables
            .iter()
            .all(|t| t.nonzero_entries == t.n + 1 && t.all_plus_minus_one);
    Eq9Report {
        n_max,
        basis_wronskians,
        tables,
        ok,
    }
}

/// Proof chain of the omit-one closed form: recurrence vs direct
/// determinant vs `x^m/m!`, i.e. the coefficients of `exp(x) − 1`.
pub fn suite_eq12(m_max: usize) -> GenFnReport {
    verify_generating_function(m_max)
}

#[derive(Clone, Debug)]
pub struct Eq15Options {
    pub seed: u64,
    pub max_int_exponent: i64,
    pub max_int_arity: usize,
    pub rational_arity_lo: usize,
    pub rational_arity_hi: usize,
    pub rational_samples: usize,
}

impl Default for Eq15Options {
    fn default() -> Self {
        Eq15Options {
            seed: DEFAULT_SEED,
            max_int_exponent: 8,
            max_int_arity: 4,
            rational_arity_lo: 2,
            rational_arity_hi: 5,
            rational_samples: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq15Report {
    pub integer_grid: SweepStats,
    pub rational_random: SweepStats,
    pub ok: bool,
}

fn eq15_instance_fails(exponents: &[Rat]) -> Option<String> {
    let monos: Vec<Monomial> = exponents.iter().cloned().map(Monomial::power).collect();
    let direct = wronskian_monomials_det(&monos);
    let closed = vandermonde_closed_form(exponents);
    (direct != closed).then(|| {
        format!(
            "exponents ({}): determinant {direct}, closed form {closed}",
            exponents.iter().map(crate::scalar::render_rat).join(", ")
        )
    })
}

/// Vandermonde closed form against the direct monomial determinant, on the
/// exhaustive integer-exponent grid plus randomized rational exponents.
pub fn suite_eq15(options: &Eq15Options) -> Eq15Report {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 1..=options.max_int_arity {
        for tuple in std::iter::repeat_n(0..=options.max_int_exponent, n).multi_cartesian_product()
        {
            let exponents: Vec<Rat> = tuple.iter().map(|&e| rat_int(e)).collect();
            checked += 1;
            if let Some(f) = eq15_instance_fails(&exponents) {
                failures.push(f);
            }
        }
    }
    let integer_grid = SweepStats::new(checked, failures);

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in options.rational_arity_lo..=options.rational_arity_hi {
        for _ in 0..options.rational_samples {
            let exponents: Vec<Rat> = (0..n).map(|_| rng_rat(&mut rng)).collect();
            checked += 1;
            if let Some(f) = eq15_instance_fails(&exponents) {
                failures.push(f);
            }
        }
    }
    let rational_random = SweepStats::new(checked, failures);

    let ok = integer_grid.ok && rational_random.ok;
    Eq15Report {
        integer_grid,
        rational_random,
        ok,
    }
}

#[derive(Clone, Debug)]
pub struct WittOptions {
    pub seed: u64,
    pub binary_lo: i64,
    pub binary_hi: i64,
    pub random_samples: usize,
    pub arity_lo: usize,
    pub arity_hi: usize,
    /// Arities for the Jacobiator grids (odd ones exercise half-integer
    /// exponents).
    pub jacobiator_arities: Vec<usize>,
    pub jacobiator_window: i64,
}

impl Default for WittOptions {
    fn default() -> Self {
        WittOptions {
            seed: DEFAULT_SEED,
            binary_lo: -5,
            binary_hi: 5,
            random_samples: 100,
            arity_lo: 2,
            arity_hi: 5,
            jacobiator_arities: vec![2, 3],
            jacobiator_window: 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WittReport {
    pub binary_grid: SweepStats,
    pub exponent_law: SweepStats,
    pub translation: SweepStats,
    pub jacobiator: SweepStats,
    pub ok: bool,
}

/// The Witt deformation: `[a_i, a_j] = (j−i)·a_{i+j}` exhaustively at
/// `N = 2`, the index/exponent closure law and translation invariance on
/// randomized tuples, and vanishing Jacobiators on generator grids.
pub fn suite_witt(options: &WittOptions) -> WittReport {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for i in options.binary_lo..=options.binary_hi {
        for j in options.binary_lo..=options.binary_hi {
            checked += 1;
            match witt_bracket(2, &[i, j]) {
                Ok((omega, sum)) => {
                    if omega != Int::from(j - i) || sum != i + j {
                        failures.push(format!("[a_{i}, a_{j}] gave ({omega}, {sum})"));
                    }
                }
                Err(e) => failures.push(format!("[a_{i}, a_{j}]: {e}")),
            }
        }
    }
    let binary_grid = SweepStats::new(checked, failures);

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in options.arity_lo..=options.arity_hi {
        for _ in 0..options.random_samples {
            let indices: Vec<i64> = (0..n).map(|_| rng_range(&mut rng, -8, 8)).collect();
            checked += 1;
            // witt_bracket re-derives the landing exponent internally; the
            // determinant oracle below recomputes Ω without the closed form.
            match witt_bracket(n, &indices) {
                Ok((omega, _)) => {
                    let monos: Vec<Monomial> = indices
                        .iter()
                        .map(|&i| {
                            Monomial::power(rat_int(i) + Rat::new(Int::from(n), Int::from(2)))
                        })
                        .collect();
                    let det = wronskian_monomials_det(&monos);
                    if det.coeff() != &Rat::from_integer(omega.clone()) {
                        failures.push(format!(
                            "{indices:?}: closed form {omega}, determinant {}",
                            det.coeff()
                        ));
                    }
                }
                Err(e) => failures.push(format!("{indices:?}: {e}")),
            }
        }
    }
    let exponent_law = SweepStats::new(checked, failures);

    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in options.arity_lo..=options.arity_hi {
        for _ in 0..options.random_samples {
            let indices: Vec<i64> = (0..n).map(|_| rng_range(&mut rng, -8, 8)).collect();
            let shift = rng_rat(&mut rng);
            checked += 1;
            let report = verify_translation_invariance(n, &indices, &shift);
            if !report.equal {
                failures.push(format!(
                    "{indices:?} shifted by {}: {report:?}",
                    report.shift
                ));
            }
        }
    }
    let translation = SweepStats::new(checked, failures);

    let mut checked = 0usize;
    let mut failures = Vec::new();
    for &n in &options.jacobiator_arities {
        let w = options.jacobiator_window;
        for tuple in (-w..=w).combinations_with_replacement(2 * n - 1) {
            checked += 1;
            let value = witt_jacobiator(n, &tuple);
            if !value.is_zero() {
                failures.push(format!("N={n} indices {tuple:?}: {value}"));
            }
        }
    }
    let jacobiator = SweepStats::new(checked, failures);

    let ok = binary_grid.ok && exponent_law.ok && translation.ok && jacobiator.ok;
    WittReport {
        binary_grid,
        exponent_law,
        translation,
        jacobiator,
        ok,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformalCase {
    #[serde(rename = "N")]
    pub n: usize,
    pub change: String,
    pub stats: SweepStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightUniqueness {
    #[serde(rename = "N")]
    pub n: usize,
    pub canonical_passes: bool,
    pub lower_weight_fails: bool,
    pub upper_weight_fails: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformalSuiteReport {
    pub cases: Vec<ConformalCase>,
    pub weight_uniqueness: Vec<WeightUniqueness>,
    pub ok: bool,
}

/// The transformation law on exhaustive monomial field tuples under four
/// polynomial changes, plus the check that `Δ(N)` is the unique Jacobian
/// exponent (shifting it by ±1 breaks a generic instance).
pub fn suite_conformal(n_lo: usize, n_hi: usize, max_exponent: usize) -> ConformalSuiteReport {
    let changes: Vec<Poly> = vec![
        Poly::from_ints(&[0, 1, 1]),    // x + x²
        Poly::from_ints(&[0, 0, 1]),    // x²
        Poly::from_ints(&[1, 2]),       // 2x + 1
        Poly::from_ints(&[0, 1, 0, 1]), // x³ + x
    ];
    let mut cases = Vec::new();
    for n in n_lo..=n_hi {
        for change_poly in &changes {
            let change = CoordinateChange::new(change_poly.clone()).expect("nonconstant change");
            let mut checked = 0usize;
            let mut failures = Vec::new();
            for tuple in (0..=max_exponent).combinations_with_replacement(n) {
                let phis: Vec<Poly> = tuple
                    .iter()
                    .map(|&a| Poly::monomial(rat_int(1), a))
                    .collect();
                let report = crate::conformal::verify_conformal_law(&phis, &change);
                checked += 1;
                if !report.equal {
                    failures.push(format!(
                        "N={n} change {} tuple {tuple:?}: {} vs {}",
                        report.change, report.lhs, report.rhs
                    ));
                }
            }
            cases.push(ConformalCase {
                n,
                change: change_poly.to_string(),
                stats: SweepStats::new(checked, failures),
            });
        }
    }

    let mut weight_uniqueness = Vec::new();
    for n in n_lo..=n_hi {
        let change = CoordinateChange::new(Poly::from_ints(&[0, 1, 1])).expect("nonconstant");
        let phis: Vec<Poly> = (1..=n).map(|a| Poly::monomial(rat_int(1), a)).collect();
        let weight = conformal_weight(n);
        let passes_at = |w: usize| {
            let (lhs, rhs) = conformal_law_sides(&phis, &change, w);
            lhs == rhs
        };
        weight_uniqueness.push(WeightUniqueness {
            n,
            canonical_passes: passes_at(weight),
            lower_weight_fails: weight == 0 || !passes_at(weight - 1),
            upper_weight_fails: !passes_at(weight + 1),
        });
    }

    let ok = cases.iter().all(|c| c.stats.ok)
        && weight_uniqueness
            .iter()
            .all(|w| w.canonical_passes && w.lower_weight_fails && w.upper_weight_fails);
    ConformalSuiteReport {
        cases,
        weight_uniqueness,
        ok,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiKnSuiteReport {
    pub reports: Vec<JacobiKnReport>,
    pub ok: bool,
}

/// `verify_jacobi_kn` over the requested (even) arities.
pub fn suite_jacobi_kn(arities: &[usize]) -> Result<JacobiKnSuiteReport> {
    let mut reports = Vec::new();
    for &n in arities {
        reports.push(verify_jacobi_kn(n)?);
    }
    let ok = reports.iter().all(|r| r.ok);
    Ok(JacobiKnSuiteReport { reports, ok })
}

#[derive(Clone, Debug, Serialize)]
pub struct AllReport {
    pub sl2: Sl2Report,
    pub eq4: Eq4Report,
    pub eq6: Table6Report,
    pub eq7: Eq7Report,
    pub eq9: Eq9Report,
    pub eq12: GenFnReport,
    pub eq15: Eq15Report,
    pub jacobi_kn: JacobiKnSuiteReport,
    pub witt: WittReport,
    pub conformal: ConformalSuiteReport,
    pub ok: bool,
}

/// Runs every suite at its default parameters.
pub fn suite_all(seed: u64) -> Result<AllReport> {
    let sl2 = suite_sl2();
    let eq4 = suite_eq4(&Eq4Options {
        seed,
        ..Eq4Options::default()
    });
    let eq6 = suite_eq6(5, 4)?;
    let eq7 = suite_eq7(3, 3, None);
    let eq9 = suite_eq9(8);
    let eq12 = suite_eq12(12);
    let eq15 = suite_eq15(&Eq15Options {
        seed,
        ..Eq15Options::default()
    });
    let jacobi_kn = suite_jacobi_kn(&[2, 4])?;
    let witt = suite_witt(&WittOptions {
        seed,
        ..WittOptions::default()
    });
    let conformal = suite_conformal(2, 4, 4);
    let ok = sl2.ok
        && eq4.ok
        && eq6.ok
        && eq7.ok
        && eq9.ok
        && eq12.ok
        && eq15.ok
        && jacobi_kn.ok
        && witt.ok
        && conformal.ok;
    Ok(AllReport {
        sl2,
        eq4,
        eq6,
        eq7,
        eq9,
        eq12,
        eq15,
        jacobi_kn,
        witt,
        conformal,
        ok,
    })
}
