//! Transformation law of the Wronskian under polynomial coordinate changes.
//!
//! For weight-0 scalar fields `φ^i`, the Wronskian taken in the new
//! coordinate picks up the Jacobian factor `(dy/dx)^{N(N−1)/2}`:
//!
//! `W_x(φ^1∘y, …, φ^N∘y) = (y′)^{Δ(N)} · W_y(φ^1, …, φ^N) ∘ y`.
//!
//! With polynomial fields and a polynomial change both sides are honest
//! polynomials, so the law is decided by exact equality — no series
//! truncation is involved, and the change does not need to be invertible.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::wronskian::wronskian;

/// A polynomial change of coordinate `y = y(x)` with `deg y ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    y_of_x: Poly,
}

impl CoordinateChange {
    pub fn new(y_of_x: Poly) -> Result<Self> {
        match y_of_x.degree() {
            Degree::Finite(d) if d >= 1 => Ok(CoordinateChange { y_of_x }),
            _ => Err(Error::InvalidArgument {
                context: "CoordinateChange",
                message: format!("change of coordinate must be nonconstant, got {y_of_x}"),
            }),
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.y_of_x
    }

    /// `dy/dx`; nonzero by the degree invariant.
    pub fn jacobian(&self) -> Poly {
        self.y_of_x.derivative()
    }
}

/// The conformal weight `Δ(N) = N(N−1)/2` of the `N`-argument Wronskian.
pub fn conformal_weight(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Both sides of the transformation law with an explicit Jacobian exponent:
/// `(W_x of the composed fields, (y′)^weight · (W_y of the fields) ∘ y)`.
pub fn conformal_law_sides(
    phis: &[Poly],
    change: &CoordinateChange,
    weight: usize,
) -> (Poly, Poly) {
    let composed: Vec<Poly> = phis.iter().map(|p| p.compose(change.poly())).collect();
    let lhs = wronskian(&composed);
    let rhs = &change.jacobian().pow(weight) * &wronskian(phis).compose(change.poly());
    (lhs, rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformalReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub phis: Vec<String>,
    pub change: String,
    pub weight: usize,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

/// Verifies the transformation law at the canonical weight `Δ(N)`.
pub fn verify_conformal_law(phis: &[Poly], change: &CoordinateChange) -> ConformalReport {
    let weight = conformal_weight(phis.len());
    let (lhs, rhs) = conformal_law_sides(phis, change, weight);
    ConformalReport {
        n: phis.len(),
        phis: phis.iter().map(|p| p.to_string()).collect(),
        change: change.poly().to_string(),
        weight,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        equal: lhs == rhs,
    }
}
