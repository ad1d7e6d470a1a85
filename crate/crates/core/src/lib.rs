//! Exact and floating-point machinery around the operator `A = i_v + λ∧` on
//! the exterior algebra of `ℝⁿ`, whose basis matrix is a signed, weighted
//! adjacency matrix of the boolean cube `Q_n`.
//!
//! Because `A² = λ(v)·I`, `A` splits the `2ⁿ`-dimensional algebra into two
//! eigenspaces of dimension `2ⁿ⁻¹`. Any vertex set `H` with more than `2ⁿ⁻¹`
//! members meets the positive eigenspace, and the largest coordinate of a
//! common vector pins down a vertex of `H` whose induced degree is at least
//! `√n`. This crate builds each piece of that argument and checks it:
//!
//! - [`cube`]: vertices, edge orientation, induced subgraphs, degrees.
//! - [`scalars`]: rationals, the quadratic field `ℚ(√d)`, the [`Scalar`] trait.
//! - [`exterior`]: multivectors, `i_v`, `λ∧`, `A`.
//! - [`operator`]: the sparse matrix of `A`, spectral checks, the recursive
//!   `±1` matrix and switching equivalence between signings.
//! - [`witness`]: eigenvectors supported in `H` and the degree certificates.
//! - [`exhaustive`]: brute-force enumeration of large subgraphs at small `n`.
//! - [`cli`]: the command-line front end used by the `sensitivity` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod cube;
pub mod error;
pub mod exhaustive;
pub mod exterior;
pub mod operator;
pub mod scalars;
pub mod witness;

pub use cube::{Cube, CubeVertex, DegreeProfile, Direction, InducedSubgraph};
pub use error::{Error, Result};
pub use exterior::{apply_a, interior_product, wedge, wedge_lambda, Multivector, WeightConfig};
pub use operator::SignedCubeMatrix;
pub use witness::WitnessReport;

pub use scalars::{QuadraticScalar, Rational, Scalar, ScalarMode};
