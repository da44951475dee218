//! Spectra and energies of generalized Paley graphs `Γ(k, q)` and Paley sum
//! graphs `Γ⁺(k, q)` for `k ∈ {3, 4}`.
//!
//! The exact side of the crate works over arbitrary-precision integers:
//! closed-form spectra ([`spectra`]), integer lifting recursions over field
//! extensions ([`lift`]), energies and the complementary-equienergy decision
//! ([`energy`]) and the search over equienergetic families ([`family`]).
//! The [`oracle`] module rebuilds the same spectra by brute force (explicit
//! graphs, additive character sums, dense eigensolvers and trace-code
//! weight distributions) and is generic over the floating-point scalar.
//!
//! The numeric pieces are generic over [`Real`] (`f32`/`f64`) and the integer
//! recursions over [`Exact`] (`i64`, `i128`, `BigInt`, ...). The aliases below
//! fix the scalars used by the rest of the crate.

pub mod dioph;
pub mod energy;
pub mod error;
pub mod family;
pub mod ff;
pub mod lift;
pub mod oracle;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use scalar::{Exact, Real};

/// Exact integer used for eigenvalues, multiplicities and energies.
pub type Int = num_bigint::BigInt;
/// Exact rational used for the energy bounds.
pub type Rational = num_rational::BigRational;
/// Floating-point scalar used by the oracles unless a caller picks another.
pub type Float = f64;

/// Coefficient pair of a lifted norm-form solution.
pub type LiftPair = lift::FormPair<Int>;
/// Jacobi settings at the default precision.
pub type JacobiOptions = oracle::jacobi::JacobiOptions<Float>;
/// Dense-spectrum settings at the default precision.
pub type DenseOptions = oracle::dense::DenseOptions<Float>;
/// Character-sum settings at the default precision.
pub type CharSumOptions = oracle::charsum::CharSumOptions<Float>;

pub use dioph::{Form, QFRep};
pub use energy::EnergyReport;
pub use family::FamilyWitness;
pub use ff::{CaseTag, FieldElement, FieldSpec};
pub use spectra::{GraphSpec, Spectrum, Variant};
