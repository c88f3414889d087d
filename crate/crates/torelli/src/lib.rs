//! Exact integer arithmetic for symplectic lattices of low genus, centered
//! on genus 3: quadratic refinements of the intersection form and their Arf
//! invariants, a parity-refined Euclidean algorithm over `SL(2, Z)`,
//! orthogonal splittings and their symmetry criterion, Seifert-style linking
//! forms with twist values and a cycle pairing, the mod-2 symplectic group,
//! and machine-checkable linear-independence certificates.
//!
//! Everything is computed over the integers with checked arithmetic; there
//! is no floating point anywhere, and overflow fails loudly instead of
//! wrapping. All randomized searches take explicit seeds and are
//! reproducible bit-for-bit.

pub mod battery;
pub mod casson;
pub mod error;
pub mod euclid;
pub mod forms;
pub mod linalg;
pub mod mod2;
pub mod splittings;
pub mod torus;
pub mod symplectic;

pub use error::{Error, Result};
