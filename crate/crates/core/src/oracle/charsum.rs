//! Eigenvalues of `Γ(k, q)` as additive character sums.
//!
//! The eigenvalue attached to `γ ∈ F_q` is `λ_γ = Σ_{x ∈ R_k} ψ(Tr(γx))`
//! with `ψ(t) = e^{2πit/p}`. Writing `γ = ω^g` and `x = ω^{kj}`, the sum
//! runs over `Tr(ω^{g+kj})`, so it only depends on `g mod k`: the `q - 1`
//! nonzero `γ` fall into `k` classes of `n` elements with one shared sum
//! each. Only those `k` sums (plus `γ = 0`) are evaluated.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{self, FieldSpec};
use crate::scalar::{Kahan, Real};
use crate::spectra::{GraphSpec, Spectrum, Variant};

pub const DEFAULT_CHAR_CAP: u64 = 300_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharSumOptions<T> {
    pub cap: u64,
    /// Largest accepted distance from an integer (real part plus `|imag|`).
    pub int_tol: T,
}

impl<T: Real> Default for CharSumOptions<T> {
    fn default() -> Self {
        CharSumOptions { cap: DEFAULT_CHAR_CAP, int_tol: T::lit(1e-6) }
    }
}

/// `Tr(ω^i)` for `i = 0..q-1`.
pub fn trace_table(field: &FieldSpec) -> Vec<u32> {
    (0..field.order() - 1)
        .map(|i| field.trace_of_index(field.exp_index(i)) as u32)
        .collect()
}

/// The `k` class sums `λ_c = Σ_j ψ(Tr(ω^{c+kj}))`, as complex pairs.
pub fn class_sums<T: Real>(field: &FieldSpec, k: u64) -> Result<Vec<(T, T)>> {
    let order = field.order() - 1;
    if k == 0 || order % k != 0 {
        return Err(Error::BadK { k, q_minus_one: order });
    }
    let p = field.p();
    let tr = trace_table(field);
    let angle = T::TAU() / T::from_u64(p).unwrap();
    let psi: Vec<(T, T)> = (0..p)
        .map(|t| {
            let a = angle * T::from_u64(t).unwrap();
            (a.cos(), a.sin())
        })
        .collect();
    let n = order / k;
    Ok((0..k)
        .into_par_iter()
        .map(|c| {
            let (mut re, mut im) = (Kahan::default(), Kahan::default());
            for j in 0..n {
                let (x, y) = psi[tr[(c + k * j) as usize] as usize];
                re.add(x);
                im.add(y);
            }
            (re.value(), im.value())
        })
        .collect())
}

/// Spectrum of `Γ(k, q)` from character sums; `g.variant` must be `Gp`.
pub fn char_sum_spectrum<T: Real>(g: &GraphSpec, opts: &CharSumOptions<T>) -> Result<Spectrum> {
    if g.variant != Variant::Gp {
        return Err(Error::bad_input(format!("character sums cover Γ(k, q) only, not {}", g.variant)));
    }
    let q = g.p.checked_pow(g.m).filter(|&q| q <= opts.cap).ok_or_else(|| Error::CapExceeded {
        what: "character-sum field",
        size: format!("{}^{}", g.p, g.m),
        cap: opts.cap,
    })?;
    let field = ff::make_field(g.p, g.m)?;
    let k = u64::from(g.k);
    let sums = class_sums::<T>(&field, k)?;
    let n = (q - 1) / k;
    let mut rest = Vec::with_capacity(sums.len());
    for (re, im) in sums {
        let rounded = re.round();
        let residual = (re - rounded).abs() + im.abs();
        if !(residual < opts.int_tol) {
            return Err(Error::NonIntegral { residual: residual.to_f64().unwrap_or(f64::NAN) });
        }
        let v = rounded.to_i64().ok_or_else(|| Error::invariant("character sum out of range"))?;
        rest.push((BigInt::from(v), BigInt::from(n)));
    }
    Ok(Spectrum::with_principal(BigInt::from(q), BigInt::from(n), BigInt::from(0), rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::gp_spectrum;

    fn ints(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(a, b)| (BigInt::from(a), BigInt::from(b))).collect()
    }

    #[test]
    fn examples() {
        let opts = CharSumOptions::<f64>::default();
        let s = char_sum_spectrum(&GraphSpec::gp(3, 2, 4), &opts).unwrap();
        assert_eq!(s.entries, ints(&[(5, 1), (1, 10), (-3, 5)]));
        let s = char_sum_spectrum(&GraphSpec::gp(1, 5, 1), &opts).unwrap();
        assert_eq!(s.entries, ints(&[(4, 1), (-1, 4)]));
        let g = GraphSpec::gp(3, 7, 3);
        assert_eq!(char_sum_spectrum(&g, &opts).unwrap(), gp_spectrum(&g).unwrap());
    }

    #[test]
    fn brute_force_over_every_gamma() {
        // direct Σ_{x∈R_k} ψ(Tr(γx)) for every γ, with table-free products
        let field = ff::make_field(3, 4).unwrap();
        let k = 4;
        let residues = ff::kth_power_residues(&field, k).unwrap();
        let sums = class_sums::<f64>(&field, k).unwrap();
        for gi in 1..field.order() {
            let gamma = field.element(gi);
            let mut re = 0.0f64;
            for x in &residues {
                let t = field.trace(&field.mul(&gamma, x)).unwrap() as f64;
                re += (std::f64::consts::TAU * t / 3.0).cos();
            }
            let class = field.log_index(gi).unwrap() % k;
            assert!((re - sums[class as usize].0).abs() < 1e-9);
        }
    }

    #[test]
    fn non_integral_sums_are_rejected() {
        // R_4 = {1, 3, 9} in F_13 is not closed under negation, so sums are complex
        let err = char_sum_spectrum(&GraphSpec::gp(4, 13, 1), &CharSumOptions::<f64>::default());
        assert!(matches!(err, Err(Error::NonIntegral { .. })), "{err:?}");
        let err = char_sum_spectrum(&GraphSpec::new(3, 7, 3, Variant::GpSum), &CharSumOptions::<f64>::default());
        assert!(matches!(err, Err(Error::BadInput(_))));
        let small = CharSumOptions { cap: 100, int_tol: 1e-6 };
        assert!(matches!(char_sum_spectrum(&GraphSpec::gp(3, 7, 3), &small), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn single_precision_agrees_on_small_fields() {
        let opts = CharSumOptions::<f32> { cap: 5000, int_tol: 1e-2 };
        for (k, p, m) in [(3, 2, 4), (3, 7, 3), (4, 5, 4), (4, 3, 4)] {
            let g = GraphSpec::gp(k, p, m);
            assert_eq!(char_sum_spectrum(&g, &opts).unwrap(), gp_spectrum(&g).unwrap());
        }
    }
}
