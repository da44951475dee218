//! Search for levels `ℓ` at which a lifted graph and its complement are
//! equienergetic.
//!
//! Each level is decided from the signs of the closed-form eigenvalues of
//! the lifted pair; no `q`-sized object is ever built. The argument
//! conditions on `x + y√-D` are replaced by exact integer inequalities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::energy::sign_criterion;
use crate::error::{Error, Result};
use crate::lift::{FormPair, LiftState3, LiftState4};
use crate::spectra;

pub const DEFAULT_ELL_MAX: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `s = 0`: the test applies to `(x_{ℓ-1}, y_{ℓ-1})`.
    SZero,
    /// `s > 0`: the test applies to `(a_{ℓ,s}, b_{ℓ,s})`.
    SPositive,
}

/// `0 < x < 9y` (`SZero`) or `x > 9y > 0` (`SPositive`).
pub fn interval_test_k3(x: &BigInt, y: &BigInt, regime: Regime) -> bool {
    let nine_y = 9 * y;
    match regime {
        Regime::SZero => x.is_positive() && *x < nine_y,
        Regime::SPositive => nine_y.is_positive() && *x > nine_y,
    }
}

/// `c > 0`, `d > 0` and `4d² > 3c²`.
pub fn interval_test_k4(c: &BigInt, d: &BigInt) -> bool {
    c.is_positive() && d.is_positive() && 4 * d * d > 3 * c * c
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyWitness {
    pub p: u64,
    pub k: u32,
    pub t: u32,
    pub s: u32,
    pub ell: u32,
    /// `(a_{ℓ,s}, b_{ℓ,s})` for `k = 3`, `(c_ℓ, d_ℓ)` for `k = 4`.
    pub pair: FormPair<BigInt>,
    pub equienergetic: bool,
    pub interval_hit: bool,
    /// Decimal digits of `q`.
    pub q_digits: usize,
}

fn distinct(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.sort();
    v.dedup();
    v
}

fn digits(p: u64, exp: u32) -> usize {
    BigInt::from(p).pow(exp).to_string().len()
}

/// Witnesses for `ℓ = 1..=ell_max`. For `k = 3`, `t` defaults to the
/// minimal exponent and must equal it when given; `k = 4` ignores `t`, `s`.
pub fn find_equienergetic_family(p: u64, k: u32, t: Option<u32>, s: u32, ell_max: u32) -> Result<Vec<FamilyWitness>> {
    let mut out = Vec::with_capacity(ell_max as usize);
    match k {
        3 => {
            let mut st = LiftState3::new(p, t, s)?;
            let regime = if s == 0 { Regime::SZero } else { Regime::SPositive };
            if st.ell == 0 && ell_max > 0 {
                st.advance();
            }
            while st.ell <= ell_max && ell_max > 0 {
                st.check_invariants()?;
                let exp = st.cube_root_exponent();
                let r = BigInt::from(p).pow(exp);
                let vals = spectra::k3_case_a_values(&st.pair.x, &st.pair.y, &r)?;
                let hit = match (regime, &st.prev) {
                    (Regime::SZero, Some(prev)) => interval_test_k3(&prev.x, &prev.y, regime),
                    (Regime::SPositive, _) => interval_test_k3(&st.pair.x, &st.pair.y, regime),
                    (Regime::SZero, None) => false,
                };
                out.push(FamilyWitness {
                    p,
                    k,
                    t: st.t,
                    s,
                    ell: st.ell,
                    pair: st.pair.clone(),
                    equienergetic: sign_criterion(&distinct(vals.to_vec())),
                    interval_hit: hit,
                    q_digits: digits(p, 3 * exp),
                });
                st.advance();
            }
        }
        4 => {
            let mut st = LiftState4::new(p)?;
            while st.ell <= ell_max {
                st.check_invariants()?;
                let r = BigInt::from(p).pow(st.ell);
                let vals = spectra::k4_case_a_values(&st.pair.x, &st.pair.y, &r)?;
                out.push(FamilyWitness {
                    p,
                    k,
                    t: 1,
                    s: 0,
                    ell: st.ell,
                    pair: st.pair.clone(),
                    equienergetic: sign_criterion(&distinct(vals.to_vec())),
                    interval_hit: interval_test_k4(&st.pair.x, &st.pair.y),
                    q_digits: digits(p, 4 * st.ell),
                });
                st.advance();
            }
        }
        _ => return Err(Error::OutOfScope(format!("k = {k} is not 3 or 4"))),
    }
    debug_assert!(out.iter().all(|w| !w.pair.y.is_zero()));
    Ok(out)
}

/// Levels at which the witnesses are equienergetic.
pub fn hits(witnesses: &[FamilyWitness]) -> Vec<u32> {
    witnesses.iter().filter(|w| w.equienergetic).map(|w| w.ell).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::is_complementary_equienergetic;
    use crate::lift;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn interval_examples() {
        assert!(interval_test_k3(&b(10), &b(3), Regime::SZero));
        assert!(!interval_test_k3(&b(1), &b(0), Regime::SZero));
        assert!(interval_test_k3(&b(13), &b(1), Regime::SPositive));
        assert!(!interval_test_k3(&b(1), &b(1), Regime::SPositive));
        assert!(interval_test_k4(&b(7), &b(12)));
        assert!(!interval_test_k4(&b(1), &b(0)));
        assert!(!interval_test_k4(&b(-3), &b(2)));
    }

    #[test]
    fn hit_sets() {
        assert_eq!(hits(&find_equienergetic_family(31, 3, Some(1), 0, 5).unwrap()), vec![4, 5]);
        assert_eq!(hits(&find_equienergetic_family(7, 3, Some(3), 1, 4).unwrap()), vec![1, 3]);
        assert_eq!(hits(&find_equienergetic_family(5, 4, None, 0, 5).unwrap()), vec![2, 5]);
        assert!(find_equienergetic_family(13, 3, None, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn wrong_inputs() {
        assert!(matches!(find_equienergetic_family(7, 3, Some(1), 0, 3), Err(Error::BadInput(_))));
        assert!(matches!(find_equienergetic_family(5, 3, None, 0, 3), Err(Error::BadP { .. })));
        assert!(matches!(find_equienergetic_family(7, 5, None, 0, 3), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn witnesses_match_direct_energies() {
        for (p, k, s) in [(7u64, 3u32, 0u32), (7, 3, 1), (31, 3, 0), (13, 3, 2), (5, 4, 0), (13, 4, 0)] {
            for w in find_equienergetic_family(p, k, None, s, 6).unwrap() {
                let spec = if k == 3 {
                    lift::derived_spectrum_k3(p, w.t, s, w.ell).unwrap()
                } else {
                    lift::derived_spectrum_k4(p, w.ell).unwrap()
                };
                let r = is_complementary_equienergetic(&spec).unwrap();
                assert_eq!(r.equienergetic, w.equienergetic, "p={p} k={k} s={s} ell={}", w.ell);
                assert!(!w.interval_hit || w.equienergetic);
            }
        }
    }
}
