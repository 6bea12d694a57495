//! Numerical toolkit for proximal regularization and approximate-subgradient
//! certification on small-dimensional spaces with p-norms.
//!
//! What lives here:
//!
//! * [`space`] — p-norm geometry (1 < p < ∞): norms, dual norms, the squared-norm
//!   potential `j` and its gradient, the (single-valued) duality map.
//! * [`catalog`] — a library of benchmark functions with extended-real value
//!   oracles, analytic subdifferential descriptions where available, and the
//!   metadata (boxes, kinks, quadratic minorants) that certified searches need.
//! * [`grid`] — certified grid minimization: deterministic brute-force passes,
//!   golden-section / parabolic refinement, and Lipschitz branch-and-bound that
//!   turns a tolerance into a proved gap.
//! * [`prox`] — regularized argmin `y ↦ f(x+y) − ⟨x*,y⟩ + λ·j(y)` and the Moreau
//!   envelope built on it.
//! * [`threshold`] — prox-boundedness probes and threshold bracketing.
//! * [`graph`] — subdifferential graph samples, monotonicity violation measures,
//!   approximate-subgradient membership tests, and entourage checks.
//! * [`engine`] — the certification engine: constructive near-graph pairs with
//!   explicit `(√(ε/λ), √(λε))` radii, a grid variational-principle iterator,
//!   range density probes, and a resolvent surjectivity check.
//! * [`scenario`] — reproducible sweep harness: JSON config in, CSV + JSON
//!   summary out, byte-identical across runs and thread counts.
//!
//! Infinite values are represented by `f64::INFINITY` (a distinguished
//! extended-real value, never a large finite sentinel); `+∞` propagates through
//! sums with finite numbers by IEEE semantics and comparisons treat it as
//! strictly above every finite value. `NaN` is never produced by the oracles and
//! is ordered above `+∞` defensively wherever minima are taken.
//!
//! The `parallel` feature (on by default) runs grid evaluation and sweep cells
//! on a rayon pool; disabling it yields a dependency-free sequential build with
//! identical outputs, including byte-identical sweep reports.

// `!(x > tol)` instead of `x <= tol`: the negated form fails closed when x is
// NaN, which every certification predicate here relies on.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod engine;
pub mod error;
pub mod graph;
pub mod grid;
pub mod prox;
pub mod scenario;
pub mod space;
pub mod threshold;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
