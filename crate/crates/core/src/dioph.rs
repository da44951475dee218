//! Representations by `x² + 27y²` and `x² + 4y²` with side conditions.
//!
//! Solutions are found by scanning `y` upward and testing `N - k·y²` for a
//! perfect square, so the cost is `O(√N)` big-integer steps. That is fine
//! for the targets used by the spectra (a few hundred digits is not).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// `x² + 27y²`
    X2Plus27Y2,
    /// `x² + 4y²`
    X2Plus4Y2,
}

impl Form {
    pub fn coefficient(self) -> u32 {
        match self {
            Form::X2Plus27Y2 => 27,
            Form::X2Plus4Y2 => 4,
        }
    }

    pub fn eval(self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x + BigInt::from(self.coefficient()) * y * y
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::X2Plus27Y2 => f.write_str("x²+27y²"),
            Form::X2Plus4Y2 => f.write_str("x²+4y²"),
        }
    }
}

/// A solution `(x, y)` of `form(x, y) = target`, with `y ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QFRep {
    pub form: Form,
    pub target: BigInt,
    pub x: BigInt,
    pub y: BigInt,
}

impl QFRep {
    /// Recomputes the form and compares with the target.
    pub fn holds(&self) -> bool {
        self.form.eval(&self.x, &self.y) == self.target && !self.y.is_negative()
    }
}

/// Result of [`minimal_t`]: `p^t = x0² + 27 y0²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalT {
    pub t: u32,
    pub x0: BigInt,
    pub y0: BigInt,
}

pub const DEFAULT_T_CAP: u32 = 64;

fn require_prime_mod(p: u64, modulus: u64) -> Result<()> {
    if !crate::ff::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p % modulus != 1 {
        return Err(Error::BadP { p, modulus });
    }
    Ok(())
}

/// Smallest-`y` solution of `x² + coef·y² = n` whose `x` is prime to `p`,
/// with `x` then signed so that `x ≡ 1 (mod modulus)`.
fn scan(form: Form, n: &BigInt, p: u64, modulus: u32) -> Option<(BigInt, BigInt)> {
    let coef = BigInt::from(form.coefficient());
    let p = BigInt::from(p);
    let m = BigInt::from(modulus);
    let limit = (n / &coef).sqrt();
    let mut y = BigInt::zero();
    while y <= limit {
        let rest = n - &coef * &y * &y;
        let x = rest.sqrt();
        if &x * &x == rest && !(&x % &p).is_zero() {
            if x.mod_floor(&m).is_one() {
                return Some((x, y));
            }
            let neg = -x;
            if neg.mod_floor(&m).is_one() {
                return Some((neg, y));
            }
        }
        y += 1;
    }
    None
}

/// `(a, b)` with `a² + 27b² = 4p^r`, `a ≡ 1 (mod 3)`, `gcd(a, p) = 1`, `b ≥ 0`.
pub fn solve_ab(p: u64, r: u32) -> Result<QFRep> {
    require_prime_mod(p, 3)?;
    if r == 0 {
        return Err(Error::bad_input("exponent r must be positive"));
    }
    let target = BigInt::from(4) * BigInt::from(p).pow(r);
    let form = Form::X2Plus27Y2;
    let (x, y) = scan(form, &target, p, 3).ok_or_else(|| Error::NoSolution {
        form,
        target: target.to_string(),
    })?;
    Ok(QFRep { form, target, x, y })
}

/// `(c, d)` with `c² + 4d² = p^{2t}`, `c ≡ 1 (mod 4)`, `gcd(c, p) = 1`, `d ≥ 0`.
pub fn solve_cd(p: u64, t: u32) -> Result<QFRep> {
    require_prime_mod(p, 4)?;
    if t == 0 {
        return Err(Error::bad_input("exponent t must be positive"));
    }
    let target = BigInt::from(p).pow(2 * t);
    let form = Form::X2Plus4Y2;
    let (x, y) = scan(form, &target, p, 4).ok_or_else(|| Error::NoSolution {
        form,
        target: target.to_string(),
    })?;
    Ok(QFRep { form, target, x, y })
}

/// Smallest `t ≤ t_cap` with `p^t = x² + 27y²` and `gcd(x, p) = 1`;
/// `x ≡ 1 (mod 3)`, `y ≥ 0`.
pub fn minimal_t(p: u64, t_cap: u32) -> Result<MinimalT> {
    require_prime_mod(p, 3)?;
    let bp = BigInt::from(p);
    let mut n = BigInt::one();
    for t in 1..=t_cap {
        n *= &bp;
        if let Some((x0, y0)) = scan(Form::X2Plus27Y2, &n, p, 3) {
            return Ok(MinimalT { t, x0, y0 });
        }
    }
    Err(Error::NotFound(t_cap))
}

/// Euler's criterion: `a^{(p-1)/d} ≡ 1 (mod p)` with `d = gcd(3, p - 1)`.
pub fn is_cubic_residue(a: i64, p: u64) -> Result<bool> {
    if !crate::ff::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::bad_input(format!("{p} divides {a}")));
    }
    let d = if (p - 1) % 3 == 0 { 3 } else { 1 };
    let e = BigInt::from(r).modpow(&BigInt::from((p - 1) / d), &BigInt::from(p));
    Ok(e.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(r: &QFRep) -> (i64, i64) {
        (i64::try_from(&r.x).unwrap(), i64::try_from(&r.y).unwrap())
    }

    #[test]
    fn ab_examples() {
        assert_eq!(pair(&solve_ab(7, 1).unwrap()), (1, 1));
        assert_eq!(pair(&solve_ab(7, 2).unwrap()), (13, 1));
        assert_eq!(pair(&solve_ab(13, 1).unwrap()), (-5, 1));
        assert_eq!(solve_ab(5, 1).unwrap_err(), Error::BadP { p: 5, modulus: 3 });
    }

    #[test]
    fn cd_examples() {
        assert_eq!(pair(&solve_cd(5, 1).unwrap()), (-3, 2));
        assert_eq!(pair(&solve_cd(13, 1).unwrap()), (5, 6));
        assert_eq!(solve_cd(3, 1).unwrap_err(), Error::BadP { p: 3, modulus: 4 });
    }

    #[test]
    fn minimal_t_examples() {
        let r = minimal_t(7, 10).unwrap();
        assert_eq!((r.t, r.x0, r.y0), (3, BigInt::from(10), BigInt::from(3)));
        let r = minimal_t(31, 10).unwrap();
        assert_eq!((r.t, r.x0, r.y0), (1, BigInt::from(-2), BigInt::from(1)));
        let r = minimal_t(13, 10).unwrap();
        assert_eq!((r.t, r.x0, r.y0), (3, BigInt::from(-35), BigInt::from(6)));
        assert_eq!(minimal_t(7, 2).unwrap_err(), Error::NotFound(2));
    }

    #[test]
    fn cubic_residue_examples() {
        assert!(is_cubic_residue(2, 31).unwrap());
        assert!(is_cubic_residue(2, 43).unwrap());
        assert!(!is_cubic_residue(2, 7).unwrap());
        assert!(matches!(is_cubic_residue(14, 7), Err(Error::BadInput(_))));
        // p ≡ 2 mod 3: every unit is a cube
        assert!(is_cubic_residue(3, 5).unwrap());
    }

    fn primes_mod(modulus: u64, below: u64) -> impl Iterator<Item = u64> {
        (2..below).filter(move |&p| crate::ff::is_prime(p) && p % modulus == 1)
    }

    #[test]
    fn ab_always_solvable() {
        for p in primes_mod(3, 100) {
            for r in 1..=4 {
                let rep = solve_ab(p, r).unwrap();
                assert!(rep.holds());
                assert_eq!(rep.x.mod_floor(&BigInt::from(3)), BigInt::one());
                assert!(!(&rep.x % BigInt::from(p)).is_zero());
                assert!(rep.y.is_positive(), "b = 0 for p={p} r={r}");
            }
        }
    }

    #[test]
    fn cd_always_solvable() {
        for p in primes_mod(4, 100) {
            for t in 1..=3 {
                let rep = solve_cd(p, t).unwrap();
                assert!(rep.holds());
                assert_eq!(rep.x.mod_floor(&BigInt::from(4)), BigInt::one());
                assert!(!(&rep.x % BigInt::from(p)).is_zero());
            }
        }
    }

    #[test]
    fn cubic_residue_of_two_matches_t_one() {
        for p in primes_mod(3, 500) {
            let t1 = minimal_t(p, DEFAULT_T_CAP).unwrap().t == 1;
            assert_eq!(is_cubic_residue(2, p).unwrap(), t1, "p={p}");
        }
    }
}
