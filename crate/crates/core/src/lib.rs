//! Coincidence and common fixed point machinery on ordered metric spaces.
//!
//! The crate has five parts:
//!
//! * [`spaces`] — ordered metric spaces in three flavors (finite tables,
//!   lazily indexed value sequences, numeric intervals) with uniform
//!   metric/order queries and exhaustive axiom validation.
//! * [`contraction`] — comparison functions, the six-argument implicit
//!   contraction family with its `F1a`/`F1b`/`F1c`/`F2` condition
//!   certifiers, and a catalog of classic contraction forms.
//! * [`solver`] — T-S-sequences (Jungck iteration), Cauchy detection via the
//!   `eps - phi(eps)` rule, and coincidence/common-fixed-point extraction.
//! * [`certifier`] — per-hypothesis checks for the theorem variants,
//!   brute-force oracles on enumerable spaces, and aggregated reports.
//! * [`config`] + [`expr`] — the line-oriented problem config format and the
//!   small arithmetic-expression language it embeds.
#![forbid(unsafe_code)]

pub mod certifier;
pub mod config;
pub mod contraction;
pub mod expr;
pub mod solver;
pub mod spaces;

pub use certifier::{certify, HypothesisReport, SubspaceSpec, TheoremVariant};
pub use contraction::{ComparisonFn, HalfComparisonFn, ImplicitContraction};
pub use solver::{jungck_sequence, IterationTrace, MappingPair};
pub use spaces::{PointRef, Space};
