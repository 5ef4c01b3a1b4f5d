//! Exact computer algebra for Wronskian determinants as N-ary brackets.
//!
//! Everything runs over arbitrary-precision rationals, so every identity
//! check below is an exact yes/no answer:
//!
//! - [`poly`] / [`monomial`]: dense polynomials and rational-exponent
//!   monomials with formal derivatives, products, and composition;
//! - [`free_algebra`]: alternated compositions `Δ_N` in the free associative
//!   algebra and the structural identity table they satisfy;
//! - [`diffop`]: polynomial-coefficient differential operators with Leibniz
//!   composition — the brute-force route to the Wronskian bracket;
//! - [`wronskian`]: fraction-free determinant kernels, the omit-one basis
//!   Wronskians, their recurrence, and the Vandermonde closed form;
//! - [`shlie`]: unshuffle-summed Jacobiators, the algebras `k_N[x]`, the
//!   `sl(2)` bottom case, and the Witt-algebra deformation;
//! - [`conformal`]: the Jacobian-weight transformation law of the Wronskian;
//! - [`suites`]: the reproducible verification sweeps behind the CLI.

pub mod conformal;
pub mod diffop;
pub mod error;
pub mod free_algebra;
pub mod monomial;
pub mod parse;
pub mod perm;
pub mod poly;
pub mod scalar;
pub mod shlie;
pub mod suites;
pub mod wronskian;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use poly::{Degree, Poly};
pub use scalar::{Int, Rat};
