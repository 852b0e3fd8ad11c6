//! Exact arithmetic for Farey neighbours and their horoball geometry.
//!
//! The crate decides and enumerates Farey-neighbour pairs in three settings:
//!
//! - [`rational`]: the projective line over `Q`, gcd-equation quadruples,
//!   Hecke congruence filtering and modular-symbol counts;
//! - [`bianchi`]: imaginary quadratic fields, where the neighbour relation
//!   is the ideal equation `(aO + bO)(cO + dO) = (ad - bc)O` and tangency
//!   of the canonical horoballs in hyperbolic 3-space;
//! - [`quaternion`]: the Hurwitz order in the rational definite quaternion
//!   algebra, via the Dieudonne determinant on `SL2`.
//!
//! [`quadfield`] supplies the underlying ideal arithmetic (Hermite normal
//! forms, class groups, `zeta_K(2)`), [`models`] evaluates the asymptotic
//! main terms the counts are compared against, and [`verify`] bundles the
//! whole battery of cross-checks behind one report.
//!
//! All counting is done in exact integer or rational arithmetic; floating
//! point only appears in model evaluation and numeric validators.

pub mod arith;
pub mod bianchi;
pub mod models;
pub mod oracles;
pub mod quadfield;
pub mod quaternion;
pub mod rat;
pub mod rational;
pub mod series;
pub mod verify;

pub use rat::Rat;
pub use rational::{FareyPair, GcdQuadruple, Rational, SignMode};
