//! Exact-arithmetic laboratory for Schmidt-type partition identities.
//!
//! Everything here is computed over the integers, exactly. The crate has
//! three layers:
//!
//! - [`poly`] and [`qseries`]: sparse multivariate Laurent polynomials with
//!   an explicit truncation context, plus the classical q-series building
//!   blocks (q-Pochhammer symbols, Gaussian binomials, Rogers-Szego
//!   polynomials, series inversion).
//! - [`partition`], [`genfun`] and [`bijection`]: exhaustive enumeration of
//!   partition classes with their statistics and weights, builders for both
//!   sides of every identity (weighted enumerations on one side, closed-form
//!   sums and products on the other), and the odd-parts/distinct-parts
//!   bijection pipeline.
//! - [`registry`]: a declarative catalog of identity families and the
//!   verification engine that compares both sides coefficient by
//!   coefficient, reporting the first mismatching monomial on failure.

pub mod bijection;
pub mod error;
pub mod genfun;
pub mod partition;
pub mod poly;
pub mod qseries;
pub mod registry;

pub use error::Error;
pub use poly::{SignedMonomial, SparsePoly, TruncationSpec, Var, VarSet};
