//! Brute-force reconstructions of the spectra, independent of the closed forms.
//!
//! - [`graph`]: explicit adjacency matrices.
//! - [`charsum`]: eigenvalues as additive character sums over `R_k`.
//! - [`jacobi`]: dense symmetric eigenvalues by Jacobi rotations.
//! - [`dense`]: adjacency matrix to exact spectrum.
//! - [`code`]: weight distribution of the trace code `C(k, q)`.

pub mod charsum;
pub mod code;
pub mod dense;
pub mod graph;
pub mod jacobi;

pub use charsum::char_sum_spectrum;
pub use code::{code_weight_distribution, weight_eigenvalue_check, WeightDistribution};
pub use dense::{dense_spectrum, DenseOutcome, DenseScalar, Solver};
pub use graph::{build_graph, DenseGraph};
