//! Exact symbolic computation for Lyndon-word combinatorics of quantum loop groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`qfield`] — exact arithmetic in ℚ(q): sparse Laurent polynomials and reduced fractions.
//! * [`rootsys`] — finite Cartan data, positive roots, symmetrized pairings.
//! * [`words`] — loop words over the alphabet {i^(d)}, lexicographic order, Lyndon machinery.
//! * [`lyndon`] — standard Lyndon (loop) words: the bijections Δ⁺ → words and Δ⁺×ℤ → words,
//!   the induced convex order, and closed-form tables for the classical types.
//! * [`weyl`] — the affine Weyl group action, translation elements, and recovery of the
//!   reduced decomposition whose inversion order matches the Lyndon order.
//! * [`shuffle`] — the quantum shuffle algebra and its loop version, q-bracketings,
//!   good-word linear tests, and the verification sweeps built on them.
//! * [`foshuffle`] — the rational-function shuffle algebra (wheel conditions, Υ, ι) and
//!   the coefficient-constraint checks for its image.

pub mod error;
pub mod foshuffle;
pub mod lyndon;
pub mod qfield;
pub mod rootsys;
pub mod shuffle;
pub mod weyl;
pub mod words;

pub use error::{Error, Result};
