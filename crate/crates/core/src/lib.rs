//! Exact computation of descendent Gromov-Witten series of the sphere and
//! of simple Hurwitz numbers, driven by the Toda-equation recursions, with
//! independent combinatorial and algebraic cross-checks.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, series
//! are explicitly truncated, and every identity check compares coefficients
//! as rationals, never as floats.
//!
//! The crate is organized as follows:
//!
//! - [`rational`], [`combinatorics`]: scalars, factorials, multinomials.
//! - [`series`]: truncated power series in λ and double series in (λ, q).
//! - [`closed_forms`]: the sinh-normalized series S = sinh(λ/2)/(λ/2), the
//!   closed 1-point series, and the degree-0 seed series.
//! - [`toda`]: the recursions the Toda equation induces — 1-point series by
//!   recursion, the Hurwitz number recursion, and the functional residual
//!   check for the Hurwitz generating function.
//! - [`oracle`]: ground-truth Hurwitz numbers by counting transitive
//!   transposition factorizations in the symmetric group.
//! - [`degree_one`]: degree-1 descendent invariants via the product formula
//!   and the mechanical generating-function check.
//! - [`genus01`]: the differential polynomial ring carrying two derivations
//!   and the genus-0/genus-1 identity verifiers.
//! - [`hurwitz_table`]: the exact (g, d) table and its JSON cache format.

pub mod closed_forms;
pub mod combinatorics;
pub mod degree_one;
pub mod genus01;
pub mod hurwitz_table;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod toda;

pub use hurwitz_table::HurwitzTable;
pub use rational::{format_rat, parse_rat, rat, rat_int, Rat};
pub use series::{BiSeries, Series, SeriesError};
