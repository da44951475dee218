//! Weight distribution of the irreducible cyclic trace code `C(k, q)`.
//!
//! Codewords are `c_γ = (Tr(γω^{ki}))_{i=0..n-1}` for every `γ ∈ F_q`; the
//! weight of `c_γ` and the eigenvalue at `γ` are tied by
//! `λ_γ = n - p·w(c_γ)/(p-1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::charsum::{char_sum_spectrum, trace_table, CharSumOptions};
use crate::error::{Error, Result};
use crate::ff;
use crate::scalar::Real;
use crate::spectra::{GraphSpec, Spectrum};

pub const DEFAULT_CODEWORD_CAP: u64 = 100_000;

/// `(weight, frequency)` pairs, ascending by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub entries: Vec<(u64, u64)>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.entries.iter().find(|e| e.0 == weight).map_or(0, |e| e.1)
    }
}

/// Enumerates all `q` codewords and tallies their Hamming weights.
pub fn code_weight_distribution(k: u32, p: u64, m: u32, cap: u64) -> Result<WeightDistribution> {
    let q = p.checked_pow(m).filter(|&q| q <= cap).ok_or_else(|| Error::CapExceeded {
        what: "code",
        size: format!("{p}^{m}"),
        cap,
    })?;
    let k = u64::from(k);
    let field = ff::make_field(p, m)?;
    if k == 0 || ((q - 1) / (p - 1)) % k != 0 {
        return Err(Error::OutOfScope(format!("{k} ∤ (q−1)/(p−1) for q = {p}^{m}")));
    }
    let order = q - 1;
    let n = order / k;
    let tr = trace_table(&field);
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    tally.insert(0, 1);
    for g in 0..order {
        let w = (0..n).filter(|&i| tr[((g + k * i) % order) as usize] != 0).count() as u64;
        *tally.entry(w).or_insert(0) += 1;
    }
    Ok(WeightDistribution { entries: tally.into_iter().collect() })
}

/// Maps each weight `w` to `n - p·w/(p-1)`; `None` if a weight gives a
/// non-integral value.
pub fn weights_to_spectrum(dist: &WeightDistribution, k: u32, p: u64, m: u32) -> Option<Spectrum> {
    let q = BigInt::from(p).pow(m);
    let n: BigInt = (&q - 1) / k;
    let mut values = Vec::with_capacity(dist.entries.len());
    for &(w, freq) in &dist.entries {
        let num = BigInt::from(p) * w;
        if &num % (p - 1) != BigInt::from(0) {
            return None;
        }
        values.push((&n - num / (p - 1), BigInt::from(freq)));
    }
    Some(Spectrum::new(q, n, BigInt::from(0), values))
}

/// Whether the weight distribution, mapped to eigenvalues, reproduces the
/// character-sum spectrum with frequencies as multiplicities.
pub fn weight_eigenvalue_check<T: Real>(k: u32, p: u64, m: u32, cap: u64, opts: &CharSumOptions<T>) -> Result<bool> {
    let dist = code_weight_distribution(k, p, m, cap)?;
    let oracle = char_sum_spectrum(&GraphSpec::gp(k, p, m), opts)?;
    Ok(weights_to_spectrum(&dist, k, p, m).is_some_and(|s| s == oracle))
}
