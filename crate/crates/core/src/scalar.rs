//! Scalar abstractions shared by the generic parts of the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Floating-point scalar for the numerical oracles: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static {
    /// Converts a small constant; panics only if the type cannot hold it.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact signed integer: machine integers or `BigInt`.
///
/// Machine integers overflow silently in release builds, so callers that
/// pick `i64`/`i128` must keep the levels small.
pub trait Exact:
    num_integer::Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

impl<T> Exact for T where
    T: num_integer::Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
}

/// Compensated (Kahan) running sum.
#[derive(Clone, Copy, Debug)]
pub struct Kahan<T> {
    sum: T,
    carry: T,
}

impl<T: Real> Default for Kahan<T> {
    fn default() -> Self {
        Kahan { sum: T::zero(), carry: T::zero() }
    }
}

impl<T: Real> Kahan<T> {
    pub fn add(&mut self, v: T) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_sum() {
        let mut k = Kahan::<f32>::default();
        let mut naive = 0.0f32;
        k.add(1.0e8);
        naive += 1.0e8;
        for _ in 0..10_000 {
            k.add(1.0);
            naive += 1.0;
        }
        assert_eq!(k.value(), 1.0e8 + 10_000.0);
        assert_ne!(naive, 1.0e8 + 10_000.0);
    }
}
