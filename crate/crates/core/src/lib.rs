//! Forrester–Baxter lattice paths and the exact polynomial identities built on them.
//!
//! Paths live in [`pathmodel`], the weight-changing maps between models in
//! [`transforms`], continued fractions and the mn-system in [`cfmn`], every
//! generating-function formula in [`charform`], and the path/partition
//! bijection in [`bijection`]. All arithmetic is exact: [`qseries`] provides
//! big-integer Laurent polynomials and truncated power series.

pub mod bijection;
pub mod cfmn;
pub mod charform;
mod error;
pub mod pathmodel;
pub mod qseries;
pub mod transforms;

pub use bijection::Partition;
pub use error::{Error, Result};
pub use pathmodel::{ModelParams, Path};
pub use qseries::{QPolynomial, QSeriesTruncated, QuarterPolynomial};
