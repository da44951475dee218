//! Graph energy and the complementary-equienergy decision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dioph::{Form, QFRep};
use crate::error::{Error, Result};
use crate::ff::CaseTag;
use crate::spectra::{self, GraphSpec, Spectrum};

/// `Σ mult·|λ|`.
pub fn energy(s: &Spectrum) -> BigInt {
    spectra::abs_sum(&s.entries)
}

/// Closed-form energy of `Γ(k, q)` in the semiprimitive case, `s = √q`:
///
/// | k | m ≡ 0 (mod 4)   | m ≡ 2 (mod 4)  |
/// |---|-----------------|----------------|
/// | 3 | `2n(2s+1)/3`    | `4n(s+1)/3`    |
/// | 4 | `n(3s+1)/2`     | `3n(s+1)/2`    |
pub fn semiprimitive_energy(k: u32, p: u64, m: u32) -> Result<BigInt> {
    let g = GraphSpec::gp(k, p, m);
    if !g.require_in_scope()?.is_semiprimitive() {
        return Err(Error::OutOfScope(format!("k = {k}, p = {p} is not a semiprimitive pair")));
    }
    let n = g.degree();
    let s = BigInt::from(p).pow(m / 2);
    let (num, den): (BigInt, i64) = match (k, m % 4 == 0) {
        (3, true) => (2 * &n * (2 * &s + 1), 3),
        (3, false) => (4 * &n * (&s + 1), 3),
        (4, true) => (&n * (3 * &s + 1), 2),
        _ => (3 * &n * (&s + 1), 2),
    };
    if !(&num % BigInt::from(den)).is_zero() {
        return Err(Error::invariant(format!("semiprimitive energy {num}/{den} is not integral")));
    }
    Ok(num / BigInt::from(den))
}

/// Lower and upper bounds on `E(Γ(k, q))` in case (a), with `r = ∛q`
/// (`k = 3`) or `r = ⁴√q` (`k = 4`):
///
/// - `k = 3`: `n(1 + |2ar+1|/3) ≤ E ≤ n(1 + 2(|a|r+1)/3 + 3|b|r)`
/// - `k = 4`: `n(r²+1) ≤ E ≤ n(r²+1 + (|c|+2|d|)r)`
pub fn energy_bounds(k: u32, p: u64, m: u32) -> Result<(BigRational, BigRational)> {
    let g = GraphSpec::gp(k, p, m);
    let tag = g.require_in_scope()?;
    let rep = match tag {
        CaseTag::K3CaseA | CaseTag::K4CaseA => spectra::case_a_rep(&g)?,
        _ => return Err(Error::OutOfScope(format!("k = {k}, p = {p} is semiprimitive"))),
    };
    let n = BigRational::from_integer(g.degree());
    let int = |v: BigInt| BigRational::from_integer(v);
    let frac = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let one = frac(1, 1);
    let (x, y) = (rep.x.abs(), rep.y.abs());
    if tag == CaseTag::K3CaseA {
        let r = BigInt::from(p).pow(m / 3);
        let lower = &n * (&one + int((BigInt::from(2) * &rep.x * &r + 1u32).abs()) * frac(1, 3));
        let upper = &n * (&one + frac(2, 3) * int(&x * &r + 1) + int(3 * &y * &r));
        Ok((lower, upper))
    } else {
        let r = BigInt::from(p).pow(m / 4);
        let big_r = &r * &r;
        let lower = &n * int(&big_r + 1);
        let upper = &n * int(&big_r + 1 + (x + 2 * y) * &r);
        Ok((lower, upper))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnergyReport {
    pub energy: BigInt,
    pub complement_energy: BigInt,
    /// Positive values among the distinct non-principal eigenvalues.
    pub positive_nonprincipal_count: usize,
    /// `E(Γ) = E(Γ̄)`, by direct computation.
    pub equienergetic: bool,
    /// Whether the sign criterion (exactly one positive distinct
    /// non-principal eigenvalue) gives the same verdict.
    pub criterion_agrees: bool,
}

impl EnergyReport {
    pub fn criterion(&self) -> bool {
        self.positive_nonprincipal_count == 1
    }
}

/// Sign criterion on a list of distinct non-principal eigenvalues.
pub fn sign_criterion(distinct: &[BigInt]) -> bool {
    distinct.iter().filter(|v| v.is_positive()).count() == 1
}

pub fn is_complementary_equienergetic(s: &Spectrum) -> Result<EnergyReport> {
    let comp = spectra::complement_spectrum(s)?;
    let e = energy(s);
    let ce = energy(&comp);
    let positive = s.distinct_non_principal().iter().filter(|v| v.is_positive()).count();
    let equienergetic = e == ce;
    Ok(EnergyReport {
        energy: e,
        complement_energy: ce,
        positive_nonprincipal_count: positive,
        equienergetic,
        criterion_agrees: equienergetic == (positive == 1),
    })
}

/// Sufficient condition for complementary equienergy in case (a):
/// `a > 9|b|` or `0 < -a < 9|b|` for `k = 3`; `3c² < 4d²` for `k = 4`.
pub fn corollary_condition(k: u32, rep: &QFRep) -> Result<bool> {
    match (k, rep.form) {
        (3, Form::X2Plus27Y2) => {
            let (a, nine_b) = (&rep.x, 9 * rep.y.abs());
            Ok(*a > nine_b || (a.is_negative() && -a < nine_b))
        }
        (4, Form::X2Plus4Y2) => Ok(3 * &rep.x * &rep.x < 4 * &rep.y * &rep.y),
        _ => Err(Error::OutOfScope(format!("k = {k} with form {}", rep.form))),
    }
}
