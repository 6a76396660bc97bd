//! Entropic contextuality analysis for the pentagram (KCBS) scenario.
//!
//! Five projective yes/no measurements `A_1 .. A_5` on a qutrit, each
//! compatible with its cyclic neighbors, admit a joint description by a
//! noncontextual hidden-variable model only if the chain of conditional
//! entropies closes:
//!
//! ```text
//! H(A_1|A_5) <= H(A_1|A_2) + H(A_2|A_3) + H(A_3|A_4) + H(A_4|A_5)
//! ```
//!
//! The excess `C = H(A_1|A_5) - Σ H(A_i|A_{i+1})` is therefore an
//! entropic witness: `C > 0` certifies contextuality from the five pair
//! distributions alone. This crate builds the quantum side (states,
//! projector pentagons, Born-rule pair tables), the information-theoretic
//! side (entropies, the witness `C`, the pentagram inequality), and the
//! hidden-variable side (joint distributions on commutation graphs and a
//! linear-programming test for whether a global joint distribution
//! exists), plus numerical search for the maximal witness and multinomial
//! sampling with bootstrap error bars.
//!
//! Heavy loops (grid scans, optimizer restarts, bootstrap replicates) run
//! on a rayon thread pool when the default `parallel` feature is enabled
//! and sequentially otherwise; results are bit-identical either way.
//!
//! Modules:
//!
//! - [`quantum`] — qutrit states, rank-1 projectors, pentagon
//!   configurations, the two-parameter optimal family, symmetry checks.
//! - [`dist`] / [`entropy`] — 2x2 pair tables, Shannon and conditional
//!   entropies, the cycle witness `C`.
//! - [`kcbs`] — the pentagram sum, its classical bound by exhaustive
//!   enumeration, and the quantum maximum `sqrt 5`.
//! - [`graph`] — commutation graphs, cycle/tree/clique-tree
//!   classification, joint distributions built edge-by-edge.
//! - [`lp`] — phase-1 simplex feasibility of a global joint distribution
//!   with Farkas certificates, plus a brute-force oracle.
//! - [`optimize`] — grid scans, Nelder-Mead polishing of the family, and
//!   a gauge-fixed search over all real pentagon configurations.
//! - [`sample`] — multinomial context sampling, plug-in and Miller-Madow
//!   estimators, percentile-bootstrap confidence intervals.

pub mod dist;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod kcbs;
pub mod lp;
pub mod numfmt;
pub mod optimize;
pub mod par;
pub mod quantum;
pub mod sample;

pub use error::{Error, Result};
