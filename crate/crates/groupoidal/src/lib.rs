//! Finite groupoids and their bibundle calculus: Morita equivalence, leaves
//! and holonomy, Haefliger cocycles, integer homology of groupoid chain
//! complexes, fundamental groups, and convolution-algebra bimodules.
//!
//! Everything is exact: matrices are generic over the scalar via the
//! `num-traits` hierarchy, with arbitrary-precision concrete aliases below.

pub mod abelian;
pub mod algebra;
pub mod bibundle;
pub mod cocycle;
pub mod corpus;
pub mod error;
pub mod groupoid;
pub mod homology;
pub mod json;
pub mod leaf;
pub mod matrix;
pub mod pi1;
pub mod simplicial;

pub use error::{Error, Result, Violation};

/// Exact integer scalar used by the homology engine.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar used by the convolution algebras.
pub type Rat = num_rational::Ratio<Int>;
/// Integer matrices (Smith normal form, lattice arithmetic).
pub type IntMatrix = matrix::Matrix<Int>;
/// Rational matrices (rank/solve for bimodule linear algebra).
pub type RatMatrix = matrix::Matrix<Rat>;

/// Default node budget for backtracking searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
