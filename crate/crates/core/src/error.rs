use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{what} has {size} elements, over the cap of {cap}")]
    CapExceeded { what: &'static str, size: String, cap: u64 },
    #[error("k = {k} does not divide q - 1 = {q_minus_one}")]
    BadK { k: u64, q_minus_one: u64 },
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("prime {p} is not congruent to 1 mod {modulus}")]
    BadP { p: u64, modulus: u64 },
    #[error("no representation of {target} by {form} satisfying the side conditions")]
    NoSolution { form: crate::dioph::Form, target: String },
    #[error("no admissible exponent t <= {0}")]
    NotFound(u32),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("closed form produced a non-integral eigenvalue: {0}")]
    NonIntegralEigenvalue(String),
    #[error("spectrum has {0} loops; complementation needs a loopless graph")]
    HasLoops(String),
    #[error("character sum is not integral (residual {residual:e})")]
    NonIntegral { residual: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("malformed field element: {0}")]
    MalformedElement(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invariant(msg: impl fmt::Display) -> Self {
        Error::Invariant(msg.to_string())
    }

    pub(crate) fn bad_input(msg: impl fmt::Display) -> Self {
        Error::BadInput(msg.to_string())
    }
}
