//! Exact complexity measures for Boolean functions.
//!
//! The crate represents a Boolean function by its full truth table and
//! computes, exactly, the classical worst-case complexity measures
//! (sensitivity, block sensitivity, witness size, subcube partition cost,
//! decision-tree depth) together with their distributional counterparts
//! under a product measure `pi_p`: expectations of the pointwise
//! quantities, optimal expected decision-tree cost, optimal expected
//! subcube partition cost, and the local witness complexity obtained from
//! an exact-rational linear program. Two further engines cover the
//! partial-information query model (coarse questions at cost `kappa`,
//! full questions completing to cost 1) and percolation functions on
//! multigraphs, including seeded Monte-Carlo estimators for grids too
//! large for truth tables.
//!
//! All exact engines are generic over the scalar type through the
//! [`Scalar`] trait, so the same code runs with arbitrary-precision
//! rationals ([`Exact`], the default used everywhere results are checked
//! bit-exactly) or with `f64` for quick floating-point experiments. The
//! local-witness LP and the partial-information engine are pinned to
//! [`Exact`]: their contracts are zero-tolerance and a floating-point
//! instantiation would be meaningless there.

pub mod bf;
pub mod dtree;
pub mod error;
pub mod local_witness;
mod lp;
pub mod measure;
pub mod partial_info;
pub mod percolation;
pub mod pointwise;
pub mod regression;
pub mod scalar;
pub mod subcube;
pub mod suites;
pub mod zoo;

pub use bf::{BooleanFunction, Restriction, DEFAULT_TABLE_CAP};
pub use error::{Error, Result};
pub use measure::{output_probability, variance, ProductMeasure};
pub use scalar::{exact, format_exact, parse_exact, ratio, Exact, Scalar};

/// Product measure with exact rational marginal; the default for every
/// engine whose results are asserted with zero tolerance.
pub type ExactMeasure = ProductMeasure<Exact>;

/// Product measure with `f64` marginal, for floating-point experiments.
pub type FloatMeasure = ProductMeasure<f64>;
