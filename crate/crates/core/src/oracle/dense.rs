//! Exact spectrum of an explicit graph via a dense eigensolver.
//!
//! Small matrices go through the cyclic Jacobi iteration in [`super::jacobi`].
//! Its cost grows too fast past a few hundred vertices on one core, so larger
//! matrices use Householder tridiagonalization with implicit QR from
//! `nalgebra`.

use nalgebra::{DMatrix, RealField};
use num_bigint::BigInt;
use num_traits::{Float, ToPrimitive};

use super::graph::DenseGraph;
use super::jacobi::{jacobi_eigenvalues, JacobiOptions};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectra::Spectrum;

pub const DEFAULT_DENSE_SPECTRUM_CAP: usize = 1500;
pub const DEFAULT_JACOBI_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Jacobi,
    Tridiagonal,
    /// Jacobi up to `jacobi_limit` vertices, tridiagonal above.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseOptions<T> {
    pub solver: Solver,
    pub jacobi_limit: usize,
    pub jacobi: JacobiOptions<T>,
    /// Every eigenvalue must lie this close to an integer to be rounded.
    pub int_tol: T,
    /// Eigenvalues closer than this are one cluster in a real-valued result.
    pub cluster_tol: T,
    pub cap: usize,
    /// Return [`DenseOutcome::Real`] instead of failing on non-integral spectra.
    pub allow_real: bool,
}

impl<T: Real> Default for DenseOptions<T> {
    fn default() -> Self {
        DenseOptions {
            solver: Solver::Auto,
            jacobi_limit: DEFAULT_JACOBI_LIMIT,
            jacobi: JacobiOptions::default(),
            int_tol: T::lit(1e-6),
            cluster_tol: T::lit(1e-4),
            cap: DEFAULT_DENSE_SPECTRUM_CAP,
            allow_real: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DenseOutcome<T> {
    Integral(Spectrum),
    /// Clustered eigenvalues (cluster mean, size), descending.
    Real(Vec<(T, usize)>),
}

impl<T> DenseOutcome<T> {
    pub fn integral(self) -> Option<Spectrum> {
        match self {
            DenseOutcome::Integral(s) => Some(s),
            DenseOutcome::Real(_) => None,
        }
    }
}

/// Scalar usable by both eigensolvers.
pub trait DenseScalar: Real + RealField {}

impl DenseScalar for f32 {}
impl DenseScalar for f64 {}

/// Eigenvalues of a symmetric row-major matrix by tridiagonalization, descending.
pub fn tridiagonal_eigenvalues<T: DenseScalar>(a: &[T], n: usize) -> Vec<T> {
    let mut eig: Vec<T> = DMatrix::from_row_slice(n, n, a).symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    eig
}

/// Eigenvalues of the adjacency matrix of `d`, descending.
pub fn dense_eigenvalues<T: DenseScalar>(d: &DenseGraph, opts: &DenseOptions<T>) -> Result<Vec<T>> {
    let n = d.order();
    if n > opts.cap {
        return Err(Error::CapExceeded { what: "dense spectrum", size: n.to_string(), cap: opts.cap as u64 });
    }
    let mut a = d.to_matrix::<T>();
    let use_jacobi = match opts.solver {
        Solver::Jacobi => true,
        Solver::Tridiagonal => false,
        Solver::Auto => n <= opts.jacobi_limit,
    };
    if use_jacobi {
        jacobi_eigenvalues(&mut a, n, &opts.jacobi)
    } else {
        Ok(tridiagonal_eigenvalues(&a, n))
    }
}

fn cluster<T: DenseScalar>(eig: &[T], tol: T) -> Vec<(T, usize)> {
    let mut out: Vec<(T, T, usize)> = Vec::new();
    for &v in eig {
        match out.last_mut() {
            Some((last, sum, count)) if Float::abs(*last - v) < tol => {
                *last = v;
                *sum = *sum + v;
                *count += 1;
            }
            _ => out.push((v, v, 1)),
        }
    }
    out.into_iter()
        .map(|(_, sum, c)| (sum / T::from_usize(c).unwrap(), c))
        .collect()
}

/// Spectrum of the adjacency matrix, rounded to integers when every
/// eigenvalue is within `int_tol` of one. The principal eigenvalue is the
/// common row sum.
pub fn dense_spectrum<T: DenseScalar>(d: &DenseGraph, opts: &DenseOptions<T>) -> Result<DenseOutcome<T>> {
    let eig = dense_eigenvalues(d, opts)?;
    let residual = eig
        .iter()
        .map(|&v| Float::abs(v - Float::round(v)))
        .fold(<T as num_traits::Zero>::zero(), Float::max);
    if !(residual < opts.int_tol) {
        if opts.allow_real {
            return Ok(DenseOutcome::Real(cluster(&eig, opts.cluster_tol)));
        }
        return Err(Error::NonIntegral { residual: ToPrimitive::to_f64(&residual).unwrap_or(f64::NAN) });
    }
    let degree = d.degree().ok_or_else(|| Error::invariant("graph is not regular"))?;
    let values = eig
        .iter()
        .map(|&v| {
            let r = ToPrimitive::to_i64(&Float::round(v)).expect("eigenvalue within i64");
            (BigInt::from(r), BigInt::from(1))
        })
        .collect();
    Ok(DenseOutcome::Integral(Spectrum::new(
        BigInt::from(d.order()),
        BigInt::from(degree),
        BigInt::from(d.loop_count()),
        values,
    )))
}
