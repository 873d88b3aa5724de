//! Exact orbifold Riemann–Roch calculus for terminal Q-Fano threefolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: exact rationals and residues.
//! * [`basket`]: orbifold points `1/r(1,-1,b)` and baskets of them.
//! * [`riemann_roch`]: local correction terms, `χ(D)`, plurigenera and
//!   Hilbert coefficients.
//! * [`fano`]: index constraints on `(q, basket, A³)` and the exhaustive
//!   basket searches built on them.
//! * [`hn`]: Harder–Narasimhan type combinatorics for the tangent sheaf and
//!   the derived Kawamata–Miyaoka bound constants.

pub mod arith;
pub mod basket;
pub mod error;
pub mod fano;
pub mod hn;
pub mod riemann_roch;

pub use arith::Rational;
pub use basket::{Basket, OrbifoldPoint};
pub use error::{Error, Result};
pub use fano::{FanoCandidate, IndexMode, SearchConfig};
pub use hn::HnType;
