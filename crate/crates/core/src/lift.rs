//! Lifting norm-form solutions to field extensions.
//!
//! A pair `(x, y)` stands for `x + y√-D` with `D = 27` (for `k = 3`) or
//! `D = 4` (for `k = 4`); multiplication of such numbers becomes
//! `(x, y)·(u, v) = (xu - D·yv, xv + yu)` and the norm `x² + D·y²` is
//! multiplicative. Everything is exact integer arithmetic.
//!
//! Indexing for `k = 3`: with base `(x₀, y₀)` of norm `p^t`, the pair
//! `(x_ℓ, y_ℓ)` is the `(ℓ+1)`-th power and has norm `p^{t(ℓ+1)}`. Level `ℓ`
//! of the lift uses `(x_{ℓ-1}, y_{ℓ-1})`, i.e. the `ℓ`-th power.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dioph;
use crate::error::{Error, Result};
use crate::scalar::Exact;
use crate::spectra::{self, Spectrum};

/// Coefficients of `x + y√-D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormPair<T> {
    pub x: T,
    pub y: T,
}

impl<T: Exact> FormPair<T> {
    pub fn new(x: T, y: T) -> Self {
        FormPair { x, y }
    }

    pub fn compose(&self, other: &Self, d: &T) -> Self {
        FormPair {
            x: self.x.clone() * other.x.clone() - d.clone() * self.y.clone() * other.y.clone(),
            y: self.x.clone() * other.y.clone() + self.y.clone() * other.x.clone(),
        }
    }

    pub fn norm(&self, d: &T) -> T {
        self.x.clone() * self.x.clone() + d.clone() * self.y.clone() * self.y.clone()
    }

    /// `self^ell` by repeated composition.
    pub fn pow(&self, ell: u32, d: &T) -> Self {
        let mut acc = FormPair::new(T::one(), T::zero());
        for _ in 0..ell {
            acc = acc.compose(self, d);
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        FormPair::new(c.clone() * self.x.clone(), c.clone() * self.y.clone())
    }
}

fn coef<T: Exact>(v: i64) -> T {
    T::from_i64(v).expect("small constant fits every integer type")
}

/// One step `(x_ℓ, y_ℓ) → (x_{ℓ+1}, y_{ℓ+1})` of the `k = 3` recursion:
/// `x' = x₀x - 27y₀y`, `y' = x₀y + y₀x`.
pub fn step_xy<T: Exact>(base: &FormPair<T>, cur: &FormPair<T>) -> FormPair<T> {
    base.compose(cur, &coef(27))
}

/// `(x + y√-D)^ell` expanded with binomial coefficients.
pub fn binomial_power(base: &FormPair<BigInt>, d: i64, ell: u32) -> FormPair<BigInt> {
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let minus_d = BigInt::from(-d);
    let mut binom = BigInt::one();
    for j in 0..=ell {
        if j > 0 {
            binom = binom * (ell - j + 1) / j;
        }
        let term = &binom * base.x.pow(ell - j) * base.y.pow(j);
        if j % 2 == 0 {
            re += term * minus_d.pow(j / 2);
        } else {
            im += term * minus_d.pow((j - 1) / 2);
        }
    }
    FormPair::new(re, im)
}

fn require_prime(p: u64) -> Result<()> {
    if crate::ff::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrime(p))
    }
}

/// Level-by-level lift for `k = 3`.
#[derive(Clone, Debug)]
pub struct LiftState3 {
    pub p: u64,
    pub t: u32,
    pub s: u32,
    /// `(x₀, y₀)` with norm `p^t`.
    pub base: FormPair<BigInt>,
    /// `(a_{0,s}, b_{0,s})` with norm `4p^s`; `None` when `s = 0`.
    pub offset: Option<FormPair<BigInt>>,
    pub ell: u32,
    /// `(x_{ℓ-1}, y_{ℓ-1})`; `None` at `ℓ = 0`.
    pub prev: Option<FormPair<BigInt>>,
    /// `(a_{ℓ,s}, b_{ℓ,s})`.
    pub pair: FormPair<BigInt>,
}

impl LiftState3 {
    /// Starts at `ℓ = 1` when `s = 0`, otherwise at `ℓ = 0`. When `t` is
    /// given it must equal the minimal exponent.
    pub fn new(p: u64, t: Option<u32>, s: u32) -> Result<Self> {
        require_prime(p)?;
        let min = dioph::minimal_t(p, dioph::DEFAULT_T_CAP)?;
        if let Some(t) = t {
            if t != min.t {
                return Err(Error::bad_input(format!(
                    "t = {t} is not the minimal exponent for p = {p} (which is {})",
                    min.t
                )));
            }
        }
        if s >= min.t {
            return Err(Error::bad_input(format!("offset s = {s} must be below t = {}", min.t)));
        }
        let base = FormPair::new(min.x0, min.y0);
        // Of (a, b) and (a, -b) only one composes with the base without
        // picking up a factor p; take that one.
        let offset = if s > 0 {
            let rep = dioph::solve_ab(p, s)?;
            let bp = BigInt::from(p);
            let d = BigInt::from(27);
            let keeps_unit = |off: &FormPair<BigInt>| off.compose(&base, &d).x.gcd(&bp).is_one();
            let plus = FormPair::new(rep.x.clone(), rep.y.clone());
            let minus = FormPair::new(rep.x, -rep.y);
            if keeps_unit(&plus) {
                Some(plus)
            } else if keeps_unit(&minus) {
                Some(minus)
            } else {
                return Err(Error::invariant(format!("no sign of b_0 composes with the base for p = {p}, s = {s}")));
            }
        } else {
            None
        };
        let mut state = LiftState3 {
            p,
            t: min.t,
            s,
            pair: offset.clone().unwrap_or_else(|| FormPair::new(BigInt::zero(), BigInt::zero())),
            base,
            offset,
            ell: 0,
            prev: None,
        };
        if s == 0 {
            state.advance();
        }
        Ok(state)
    }

    pub fn advance(&mut self) {
        let prev = match &self.prev {
            None => self.base.clone(),
            Some(cur) => step_xy(&self.base, cur),
        };
        self.pair = match &self.offset {
            None => prev.scale(&BigInt::from(-2)),
            Some(off) => off.compose(&prev, &BigInt::from(27)),
        };
        self.prev = Some(prev);
        self.ell += 1;
    }

    /// `tℓ + s`, the exponent of `∛q`.
    pub fn cube_root_exponent(&self) -> u32 {
        self.t * self.ell + self.s
    }

    pub fn check_invariants(&self) -> Result<()> {
        let p = BigInt::from(self.p);
        let d = BigInt::from(27);
        if let Some(prev) = &self.prev {
            let want = p.pow(self.t * self.ell);
            if prev.norm(&d) != want {
                return Err(Error::invariant(format!("x² + 27y² != p^{} at level {}", self.t * self.ell, self.ell)));
            }
        }
        check_pair(&self.pair, 27, 3, &(4 * p.pow(self.cube_root_exponent())), self.p, self.ell)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        spectra::k3_case_a_spectrum(self.p, self.cube_root_exponent(), &self.pair.x, &self.pair.y)
    }
}

fn check_pair(pair: &FormPair<BigInt>, d: i64, modulus: i64, norm: &BigInt, p: u64, ell: u32) -> Result<()> {
    if pair.norm(&BigInt::from(d)) != *norm {
        return Err(Error::invariant(format!("norm of {pair:?} != {norm} at level {ell}")));
    }
    if !pair.x.mod_floor(&BigInt::from(modulus)).is_one() {
        return Err(Error::invariant(format!("{} is not 1 mod {modulus} at level {ell}", pair.x)));
    }
    if pair.x.gcd(&BigInt::from(p)) != BigInt::one() {
        return Err(Error::invariant(format!("{} shares a factor with {p} at level {ell}", pair.x)));
    }
    Ok(())
}

/// Level-by-level lift for `k = 4`, starting at `ℓ = 1`.
#[derive(Clone, Debug)]
pub struct LiftState4 {
    pub p: u64,
    /// `(c₁, d₁)` with norm `p²`.
    pub base: FormPair<BigInt>,
    pub ell: u32,
    /// `(c_ℓ, d_ℓ)`.
    pub pair: FormPair<BigInt>,
}

impl LiftState4 {
    pub fn new(p: u64) -> Result<Self> {
        require_prime(p)?;
        let rep = dioph::solve_cd(p, 1)?;
        let base = FormPair::new(rep.x, rep.y);
        Ok(LiftState4 { p, pair: base.clone(), base, ell: 1 })
    }

    /// `c_{ℓ+1} = c₁c_ℓ - 4d₁d_ℓ`, `d_{ℓ+1} = c₁d_ℓ + d₁c_ℓ`.
    pub fn advance(&mut self) {
        self.pair = self.base.compose(&self.pair, &BigInt::from(4));
        self.ell += 1;
    }

    pub fn check_invariants(&self) -> Result<()> {
        let norm = BigInt::from(self.p).pow(2 * self.ell);
        check_pair(&self.pair, 4, 4, &norm, self.p, self.ell)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        spectra::k4_case_a_spectrum(self.p, self.ell, &self.pair.x, &self.pair.y)
    }
}

/// `(a_{ℓ,s}, b_{ℓ,s})`; `ℓ = 0` is only defined for `s > 0`.
pub fn derived_ab(p: u64, t: u32, s: u32, ell: u32) -> Result<FormPair<BigInt>> {
    Ok(lift3_to(p, t, s, ell)?.pair)
}

fn lift3_to(p: u64, t: u32, s: u32, ell: u32) -> Result<LiftState3> {
    let mut st = LiftState3::new(p, Some(t), s)?;
    if ell < st.ell {
        return Err(Error::bad_input("level 0 needs a positive offset s"));
    }
    while st.ell < ell {
        st.advance();
    }
    st.check_invariants()?;
    Ok(st)
}

/// Spectrum of `Γ(3, p^{3(tℓ+s)})` from the lifted pair.
pub fn derived_spectrum_k3(p: u64, t: u32, s: u32, ell: u32) -> Result<Spectrum> {
    lift3_to(p, t, s, ell)?.spectrum()
}

/// `(c_ℓ, d_ℓ)` for `ℓ ≥ 1`.
pub fn derived_cd(p: u64, ell: u32) -> Result<FormPair<BigInt>> {
    Ok(lift4_to(p, ell)?.pair)
}

fn lift4_to(p: u64, ell: u32) -> Result<LiftState4> {
    if ell == 0 {
        return Err(Error::bad_input("level must be at least 1"));
    }
    let mut st = LiftState4::new(p)?;
    while st.ell < ell {
        st.advance();
    }
    st.check_invariants()?;
    Ok(st)
}

/// Spectrum of `Γ(4, p^{4ℓ})` from the lifted pair.
pub fn derived_spectrum_k4(p: u64, ell: u32) -> Result<Spectrum> {
    lift4_to(p, ell)?.spectrum()
}

/// `(a_{ℓ,s}, b_{ℓ,s})` from a binomial expansion of the `ℓ`-th power of
/// the base, without the recursion.
pub fn closed_form_ab(p: u64, t: u32, s: u32, ell: u32) -> Result<FormPair<BigInt>> {
    let st = LiftState3::new(p, Some(t), s)?;
    if ell == 0 {
        return st.offset.ok_or_else(|| Error::bad_input("level 0 needs a positive offset s"));
    }
    let z = binomial_power(&st.base, 27, ell);
    Ok(match &st.offset {
        None => z.scale(&BigInt::from(-2)),
        Some(off) => off.compose(&z, &BigInt::from(27)),
    })
}

/// `(c_ℓ, d_ℓ)` as the components of `(c₁ + 2d₁i)^ℓ`.
pub fn closed_form_cd(p: u64, ell: u32) -> Result<FormPair<BigInt>> {
    let st = LiftState4::new(p)?;
    Ok(binomial_power(&st.base, 4, ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(x: i64, y: i64) -> FormPair<BigInt> {
        FormPair::new(BigInt::from(x), BigInt::from(y))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn step_examples() {
        let base = fp(10, 3);
        let next = step_xy(&base, &base);
        assert_eq!(next, fp(-143, 60));
        assert_eq!(next.norm(&BigInt::from(27)), BigInt::from(7).pow(6));
        let base = fp(-2, 1);
        assert_eq!(step_xy(&base, &base), fp(-23, -4));
        assert_eq!(base.pow(1, &BigInt::from(27)), base);
    }

    #[test]
    fn ab_examples() {
        assert_eq!(derived_ab(7, 3, 1, 0).unwrap(), fp(1, 1));
        assert_eq!(derived_ab(7, 3, 1, 1).unwrap(), fp(-71, 13));
        assert_eq!(derived_ab(7, 3, 1, 2).unwrap(), fp(-1763, -83));
        assert_eq!(derived_ab(31, 1, 0, 1).unwrap(), fp(4, -2));
        assert_eq!(derived_ab(31, 1, 0, 2).unwrap(), fp(46, 8));
        assert!(matches!(derived_ab(7, 2, 1, 1), Err(Error::BadInput(_))));
        assert!(matches!(derived_ab(31, 1, 0, 0), Err(Error::BadInput(_))));
        assert!(matches!(derived_ab(7, 3, 3, 1), Err(Error::BadInput(_))));
    }

    #[test]
    fn k3_spectrum_examples() {
        let s = derived_spectrum_k3(7, 3, 1, 1).unwrap();
        assert_eq!(s.distinct_non_principal(), ints(&[75231, -18408, -56824]));
        assert_eq!(s.principal, BigInt::from(4_613_762_400u64));
        let s = derived_spectrum_k3(31, 1, 0, 3).unwrap();
        assert_eq!(s.distinct_non_principal(), ints(&[2869866, 188676, -3058543]));
    }

    #[test]
    fn cd_examples() {
        assert_eq!(derived_cd(5, 1).unwrap(), fp(-3, 2));
        assert_eq!(derived_cd(5, 2).unwrap(), fp(-7, -12));
        assert_eq!(derived_cd(5, 3).unwrap(), fp(117, 22));
        assert_eq!(derived_cd(3, 1).unwrap_err(), Error::BadP { p: 3, modulus: 4 });
        let s = derived_spectrum_k4(5, 2).unwrap();
        assert_eq!(s.distinct_non_principal(), ints(&[456, -69, -144, -244]));
        assert_eq!(s.principal, BigInt::from(97656));
        let s = derived_spectrum_k4(5, 1).unwrap();
        assert_eq!(s.distinct_non_principal(), ints(&[16, 1, -4, -14]));
    }

    #[test]
    fn invariants_up_to_64() {
        for (p, s) in [(7, 0), (7, 1), (7, 2), (13, 0), (13, 2), (31, 0), (19, 0), (43, 0)] {
            let mut st = LiftState3::new(p, None, s).unwrap();
            while st.ell <= 64 {
                st.check_invariants().unwrap();
                st.advance();
            }
        }
        for p in [5, 13, 17, 29, 37] {
            let mut st = LiftState4::new(p).unwrap();
            while st.ell <= 64 {
                st.check_invariants().unwrap();
                st.advance();
            }
        }
    }

    #[test]
    fn closed_forms_match_recursion() {
        for (p, s) in [(7, 0), (7, 1), (7, 2), (31, 0), (13, 1)] {
            let t = dioph::minimal_t(p, dioph::DEFAULT_T_CAP).unwrap().t;
            let mut st = LiftState3::new(p, None, s).unwrap();
            while st.ell <= 20 {
                assert_eq!(closed_form_ab(p, t, s, st.ell).unwrap(), st.pair, "p={p} s={s} ell={}", st.ell);
                st.advance();
            }
        }
        for p in [5, 13, 17] {
            let mut st = LiftState4::new(p).unwrap();
            while st.ell <= 20 {
                assert_eq!(closed_form_cd(p, st.ell).unwrap(), st.pair);
                st.advance();
            }
        }
    }

    #[test]
    fn derived_matches_direct_spectrum() {
        use crate::spectra::{gp_spectrum, GraphSpec};
        for (p, s, ell) in [(7u64, 0u32, 1u32), (7, 1, 1), (7, 2, 1), (13, 1, 1), (31, 0, 1), (31, 0, 2), (43, 0, 2)] {
            let st = lift3_to(p, dioph::minimal_t(p, 64).unwrap().t, s, ell).unwrap();
            let m = 3 * st.cube_root_exponent();
            assert_eq!(st.spectrum().unwrap(), gp_spectrum(&GraphSpec::gp(3, p, m)).unwrap(), "p={p} m={m}");
        }
        for (p, ell) in [(5u64, 1u32), (5, 2), (5, 3), (13, 2), (17, 1)] {
            assert_eq!(
                derived_spectrum_k4(p, ell).unwrap(),
                gp_spectrum(&GraphSpec::gp(4, p, 4 * ell)).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000, k in prop::sample::select(vec![4i64, 27])) {
            let u = FormPair::new(a, b);
            let v = FormPair::new(c, d);
            prop_assert_eq!(u.compose(&v, &k).norm(&k), u.norm(&k) * v.norm(&k));
        }

        #[test]
        fn machine_and_big_integers_agree(x in -50i64..50, y in -50i64..50, ell in 0u32..6) {
            let small = FormPair::new(i128::from(x), i128::from(y)).pow(ell, &27);
            let big = fp(x, y).pow(ell, &BigInt::from(27));
            prop_assert_eq!(BigInt::from(small.x), big.x.clone());
            prop_assert_eq!(BigInt::from(small.y), big.y.clone());
            prop_assert_eq!(binomial_power(&fp(x, y), 27, ell), big);
        }
    }
}
