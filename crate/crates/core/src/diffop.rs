//! Differential operators `Σ_j c_j(x)·∂^j` on the affine line with
//! polynomial coefficients, under associative Leibniz composition.
//!
//! The alternated composition of `2p` operators of pure order `p` is again
//! of pure order `p`, with the Wronskian of the coefficients as the
//! structure function; `verify_theorem1` checks that equality by brute
//! force, enumerating all `(2p)!` compositions with no Wronskian shortcut so
//! the two routes stay independent.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::signed_permutations;
use crate::poly::Poly;
use crate::scalar::{binomial, Rat};
use crate::wronskian::wronskian;

/// Factorial guard for the `S_N` enumeration in [`alt_compose_ops`].
pub const MAX_ALT_OPS: usize = 8;

/// A differential operator stored as a map from derivative order to its
/// nonzero polynomial coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOp {
    terms: BTreeMap<usize, Poly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// The single term `coeff(x)·∂^order`.
    pub fn single(coeff: Poly, order: usize) -> Self {
        let mut op = DiffOp::zero();
        op.add_term(order, coeff);
        op
    }

    /// The pure derivative `∂^order`.
    pub fn derivative_op(order: usize) -> Self {
        DiffOp::single(Poly::one(), order)
    }

    fn add_term(&mut self, order: usize, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(order) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
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

    /// Highest derivative order present, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// `Some(p)` iff the operator is exactly `w(x)·∂^p` (one term).
    pub fn pure_order(&self) -> Option<usize> {
        (self.terms.len() == 1).then(|| *self.terms.keys().next().unwrap())
    }

    pub fn coeff(&self, order: usize) -> Poly {
        self.terms.get(&order).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(&j, c)| (j, c))
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&j, w) in &self.terms {
            out.add_term(j, w.scale(c));
        }
        out
    }

    /// Associative composition via the Leibniz rule:
    /// `(a·∂^p) ∘ (b·∂^q) = Σ_{s=0}^{p} C(p,s) · a·b^{(s)} · ∂^{p+q−s}`.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&p, a) in &self.terms {
            for (&q, b) in &rhs.terms {
                for s in 0..=p {
                    let c = Rat::from_integer(binomial(p, s));
                    let coeff = (a * &b.derivative_n(s)).scale(&c);
                    out.add_term(p + q - s, coeff);
                }
            }
        }
        out
    }

    /// Applies the operator to a polynomial: `Σ_j c_j(x)·f^{(j)}(x)`.
    ///
    /// Serves as the independent oracle for `compose`:
    /// `apply(A∘B, f) = apply(A, apply(B, f))` for all `f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&j, c) in &self.terms {
            out = &out + &(c * &f.derivative_n(j));
        }
        out
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;

    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&j, c) in &rhs.terms {
            out.add_term(j, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;

    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &-rhs
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;

    fn neg(self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|(&j, c)| (j, -c)).collect(),
        }
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;

    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (&j, c) in self.terms.iter().rev() {
            let dpart = match j {
                0 => None,
                1 => Some("D".to_string()),
                _ => Some(format!("D^{j}")),
            };
            let rendered = c.to_string();
            let piece = match dpart {
                None => rendered,
                Some(d) => {
                    if rendered == "1" {
                        d
                    } else if rendered == "-1" {
                        format!("-{d}")
                    } else if c
                        .coeffs()
                        .iter()
                        .filter(|a| !num_traits::Zero::is_zero(*a))
                        .count()
                        > 1
                    {
                        format!("({rendered})*{d}")
                    } else {
                        format!("{rendered}*{d}")
                    }
                }
            };
            pieces.push(piece);
        }
        let mut out = pieces[0].clone();
        for piece in &pieces[1..] {
            if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(piece);
            }
        }
        write!(f, "{out}")
    }
}

/// The alternated composition `[A_1, …, A_N] = Σ_{σ∈S_N} sign(σ)·A_{σ(1)}∘…∘A_{σ(N)}`,
/// by explicit enumeration of `S_N`.
pub fn alt_compose_ops(ops: &[DiffOp]) -> Result<DiffOp> {
    if ops.is_empty() {
        return Err(Error::InvalidArgument {
            context: "alt_compose_ops",
            message: "need at least one operator".into(),
        });
    }
    if ops.len() > MAX_ALT_OPS {
        return Err(Error::ResourceLimit {
            context: "alt_compose_ops",
            limit: MAX_ALT_OPS,
            requested: ops.len(),
        });
    }
    let mut acc = DiffOp::zero();
    for (perm, sign) in signed_permutations(ops.len()) {
        let mut product = ops[perm[0]].clone();
        for &i in &perm[1..] {
            product = product.compose(&ops[i]);
        }
        for (order, coeff) in product.terms {
            let signed = if sign < 0 { -&coeff } else { coeff };
            acc.add_term(order, signed);
        }
    }
    Ok(acc)
}

/// Outcome of the brute-force check of the alternated composition of the
/// `2p` operators `w_j·∂^p` against `W(w_1, …, w_{2p})·∂^p`.
///
/// `equal` is the strict equality verdict. The two sides are in fact
/// proportional with a constant depending only on `p` (1 for p = 1, 2 for
/// p = 2, 90 for p = 3), so `ratio` carries the measured constant whenever
/// the sides are proportional; strict equality holds exactly at p = 1.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub p: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub proportional: bool,
    /// Measured constant `c` with `lhs = c·rhs`, when one exists.
    pub ratio: Option<String>,
}

/// `Some(c)` iff `lhs == c·rhs` for a constant scalar `c`.
fn proportionality_constant(lhs: &DiffOp, rhs: &DiffOp) -> Option<Rat> {
    use num_traits::Zero;
    if rhs.is_zero() {
        return lhs.is_zero().then(Rat::zero);
    }
    if lhs.is_zero() {
        return Some(Rat::zero());
    }
    let (order, coeff) = rhs.terms().next().expect("nonzero operator has a term");
    let candidate_poly = lhs.coeff(order).div_exact(coeff)?;
    if candidate_poly.degree() > crate::poly::Degree::Finite(0) {
        return None;
    }
    let candidate = candidate_poly.coeff(0);
    (*lhs == rhs.scale(&candidate)).then_some(candidate)
}

/// Compares the `(2p)!`-term alternated composition against the Wronskian
/// route for the coefficient tuple `ws`, recording strict equality and the
/// measured proportionality constant.
pub fn verify_theorem1(p: usize, ws: &[Poly]) -> Result<Theorem1Report> {
    let n = 2 * p;
    if ws.len() != n {
        return Err(Error::InvalidArgument {
            context: "verify_theorem1",
            message: format!("expected {} coefficients for p = {p}, got {}", n, ws.len()),
        });
    }
    let ops: Vec<DiffOp> = ws.iter().map(|w| DiffOp::single(w.clone(), p)).collect();
    let lhs = alt_compose_ops(&ops)?;
    let rhs = DiffOp::single(wronskian(ws), p);
    let ratio = proportionality_constant(&lhs, &rhs);
    Ok(Theorem1Report {
        p,
        n,
        equal: lhs == rhs,
        proportional: ratio.is_some(),
        ratio: ratio.map(|c| crate::scalar::render_rat(&c)),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}
