//! Exact computational toolkit for affine representations of Lie algebras:
//! prehomogeneity and transitivity decisions, characteristic maps and
//! classes, relative invariants, Chevalley-Eilenberg / Koszul cohomology
//! with twisted one-dimensional coefficients, and constructions of flat
//! biinvariant metric Lie algebras and dual tube realizations.
//!
//! All arithmetic is exact rational; there is no floating point anywhere.

pub mod scalar;
pub mod matrix;
pub mod poly;
pub mod lie;
pub mod koszul;
pub mod prehomog;
pub mod constructions;
pub mod catalog;

pub use scalar::{parse_rat, rat, rint, Rat};

/// Concrete exact matrix used throughout the crate.
pub type Mat = matrix::Matrix<Rat>;
/// Concrete exact multivariate polynomial.
pub type Poly = poly::Polynomial<Rat>;
