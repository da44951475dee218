//! Closed-form spectra of `Γ(k, q)`, `Γ⁺(k, q)` and their complements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dioph::{self, QFRep};
use crate::error::{Error, Result};
use crate::ff::{self, CaseTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `Γ(k, q)`: `v ~ w` iff `w - v ∈ R_k`.
    Gp,
    /// `Γ⁺(k, q)`: `v ~ w` iff `v + w ∈ R_k`.
    GpSum,
    GpComplement,
    GpSumComplement,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Gp, Variant::GpSum, Variant::GpComplement, Variant::GpSumComplement];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Gp => "gp",
            Variant::GpSum => "gpsum",
            Variant::GpComplement => "comp",
            Variant::GpSumComplement => "gpsum-comp",
        }
    }

    pub fn is_sum(self) -> bool {
        matches!(self, Variant::GpSum | Variant::GpSumComplement)
    }

    pub fn is_complement(self) -> bool {
        matches!(self, Variant::GpComplement | Variant::GpSumComplement)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::bad_input(format!("unknown variant {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    pub k: u32,
    pub p: u64,
    pub m: u32,
    pub variant: Variant,
}

impl GraphSpec {
    pub fn new(k: u32, p: u64, m: u32, variant: Variant) -> Self {
        GraphSpec { k, p, m, variant }
    }

    pub fn gp(k: u32, p: u64, m: u32) -> Self {
        Self::new(k, p, m, Variant::Gp)
    }

    pub fn with_variant(self, variant: Variant) -> Self {
        GraphSpec { variant, ..self }
    }

    pub fn case(&self) -> CaseTag {
        ff::theorem_hypotheses(self.k, self.p, self.m)
    }

    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.m)
    }

    /// `n = (q - 1) / k`, the size of `R_k`.
    pub fn degree(&self) -> BigInt {
        (self.order() - 1u32) / self.k
    }

    /// Errors with a diagnostic naming the failed hypothesis.
    pub fn require_in_scope(&self) -> Result<CaseTag> {
        match self.case() {
            CaseTag::OutOfScope => Err(Error::OutOfScope(ff::scope_diagnostic(self.k, self.p, self.m))),
            tag => Ok(tag),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={}, q={}^{})", self.variant, self.k, self.p, self.m)
    }
}

/// Multiset of adjacency eigenvalues, sorted descending with equal values
/// merged. `entries` includes the principal eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum {
    pub order: BigInt,
    pub principal: BigInt,
    pub loops: BigInt,
    pub entries: Vec<(BigInt, BigInt)>,
}

impl Spectrum {
    /// Sorts, merges and drops zero multiplicities.
    pub fn new(order: BigInt, principal: BigInt, loops: BigInt, values: Vec<(BigInt, BigInt)>) -> Self {
        let mut values = values;
        values.sort_by(|a, b| b.0.cmp(&a.0));
        let mut entries: Vec<(BigInt, BigInt)> = Vec::with_capacity(values.len());
        for (v, mult) in values {
            if mult.is_zero() {
                continue;
            }
            match entries.last_mut() {
                Some(last) if last.0 == v => last.1 += mult,
                _ => entries.push((v, mult)),
            }
        }
        Spectrum { order, principal, loops, entries }
    }

    /// Builds from a principal eigenvalue plus the non-principal part.
    pub fn with_principal(order: BigInt, principal: BigInt, loops: BigInt, rest: Vec<(BigInt, BigInt)>) -> Self {
        let mut values = rest;
        values.push((principal.clone(), BigInt::one()));
        Self::new(order, principal, loops, values)
    }

    /// Entries with one copy of the principal eigenvalue removed.
    pub fn non_principal(&self) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.entries.len());
        let mut removed = false;
        for (v, mult) in &self.entries {
            if !removed && *v == self.principal {
                removed = true;
                let rest = mult - 1u32;
                if !rest.is_zero() {
                    out.push((v.clone(), rest));
                }
            } else {
                out.push((v.clone(), mult.clone()));
            }
        }
        out
    }

    /// Distinct non-principal eigenvalues, descending.
    pub fn distinct_non_principal(&self) -> Vec<BigInt> {
        self.non_principal().into_iter().map(|(v, _)| v).collect()
    }

    pub fn multiplicity_sum(&self) -> BigInt {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn trace(&self) -> BigInt {
        self.entries.iter().map(|(v, m)| v * m).sum()
    }

    pub fn second_moment(&self) -> BigInt {
        self.entries.iter().map(|(v, m)| v * v * m).sum()
    }

    /// Multiplicity sum, trace, second moment and simple principal.
    pub fn check_invariants(&self) -> Result<()> {
        if self.multiplicity_sum() != self.order {
            return Err(Error::invariant(format!(
                "multiplicities sum to {} instead of {}",
                self.multiplicity_sum(),
                self.order
            )));
        }
        if self.trace() != self.loops {
            return Err(Error::invariant(format!("trace {} != loop count {}", self.trace(), self.loops)));
        }
        let expected = &self.order * &self.principal;
        if self.second_moment() != expected {
            return Err(Error::invariant(format!(
                "second moment {} != q·n = {}",
                self.second_moment(),
                expected
            )));
        }
        match self.entries.iter().find(|(v, _)| *v == self.principal) {
            Some((_, m)) if m.is_one() => Ok(()),
            Some((_, m)) => Err(Error::invariant(format!("principal eigenvalue has multiplicity {m}"))),
            None => Err(Error::invariant("principal eigenvalue missing")),
        }
    }
}

fn exact_div(num: BigInt, den: i64, what: &str) -> Result<BigInt> {
    let (quo, rem) = num.div_rem(&BigInt::from(den));
    if !rem.is_zero() {
        return Err(Error::NonIntegralEigenvalue(format!("{what}: {num}/{den}")));
    }
    Ok(quo)
}

/// Non-principal eigenvalues for `k = 3`, case (a), in formula order
/// `[(ar-1)/3, (-(a+9b)r-2)/6, (-(a-9b)r-2)/6]` where `r = ∛q`.
pub fn k3_case_a_values(a: &BigInt, b: &BigInt, r: &BigInt) -> Result<[BigInt; 3]> {
    let l1 = exact_div(a * r - 1, 3, "(a·r-1)/3")?;
    let l2 = exact_div(-(a + BigInt::from(9) * b) * r - 2, 6, "(-(a+9b)·r-2)/6")?;
    let l3 = exact_div(-(a - BigInt::from(9) * b) * r - 2, 6, "(-(a-9b)·r-2)/6")?;
    Ok([l1, l2, l3])
}

/// Non-principal eigenvalues for `k = 4`, case (a), in formula order, where
/// `r = ⁴√q` and `R = r²`: `(R+4dr-1)/4, (R-4dr-1)/4, (-R+2cr-1)/4, (-R-2cr-1)/4`.
pub fn k4_case_a_values(c: &BigInt, d: &BigInt, r: &BigInt) -> Result<[BigInt; 4]> {
    let big_r = r * r;
    let l1 = exact_div(&big_r + 4 * d * r - 1, 4, "(R+4dr-1)/4")?;
    let l2 = exact_div(&big_r - 4 * d * r - 1, 4, "(R-4dr-1)/4")?;
    let l3 = exact_div(-&big_r + 2 * c * r - 1, 4, "(-R+2cr-1)/4")?;
    let l4 = exact_div(-&big_r - 2 * c * r - 1, 4, "(-R-2cr-1)/4")?;
    Ok([l1, l2, l3, l4])
}

/// Inverts [`k3_case_a_values`]: `a = (3λ₁+1)/r`, `b = (λ₃-λ₂)/(3r)`.
pub fn recover_ab(values: &[BigInt; 3], r: &BigInt) -> Option<(BigInt, BigInt)> {
    let num: BigInt = BigInt::from(3) * &values[0] + 1;
    let (a, ra) = num.div_rem(r);
    let (b, rb) = (&values[2] - &values[1]).div_rem(&(BigInt::from(3) * r));
    (ra.is_zero() && rb.is_zero()).then_some((a, b))
}

/// Inverts [`k4_case_a_values`]: `c = (λ₃-λ₄)/r`, `d = (λ₁-λ₂)/(2r)`.
pub fn recover_cd(values: &[BigInt; 4], r: &BigInt) -> Option<(BigInt, BigInt)> {
    let (c, rc) = (&values[2] - &values[3]).div_rem(r);
    let (d, rd) = (&values[0] - &values[1]).div_rem(&(BigInt::from(2) * r));
    (rc.is_zero() && rd.is_zero()).then_some((c, d))
}

/// Spectrum of `Γ(3, q)` with `∛q = p^{r_exp}` from a representation
/// `a² + 27b² = 4∛q`.
pub fn k3_case_a_spectrum(p: u64, r_exp: u32, a: &BigInt, b: &BigInt) -> Result<Spectrum> {
    let r = BigInt::from(p).pow(r_exp);
    let q = r.pow(3);
    let n = exact_div(&q - 1, 3, "n")?;
    let vals = k3_case_a_values(a, b, &r)?;
    let rest = vals.into_iter().map(|v| (v, n.clone())).collect();
    Ok(Spectrum::with_principal(q, n, BigInt::zero(), rest))
}

/// Spectrum of `Γ(4, q)` with `⁴√q = p^{r_exp}` from `c² + 4d² = √q`.
pub fn k4_case_a_spectrum(p: u64, r_exp: u32, c: &BigInt, d: &BigInt) -> Result<Spectrum> {
    let r = BigInt::from(p).pow(r_exp);
    let q = r.pow(4);
    let n = exact_div(&q - 1, 4, "n")?;
    let vals = k4_case_a_values(c, d, &r)?;
    let rest = vals.into_iter().map(|v| (v, n.clone())).collect();
    Ok(Spectrum::with_principal(q, n, BigInt::zero(), rest))
}

fn semiprimitive_values(k: u32, p: u64, m: u32) -> Result<Vec<(BigInt, BigInt)>> {
    let s = BigInt::from(p).pow(m / 2);
    let q = &s * &s;
    let kk = i64::from(k);
    let n = exact_div(&q - 1, kk, "n")?;
    let two_n = 2 * &n;
    let three_n = 3 * &n;
    let v = |num: BigInt, what: &str| exact_div(num, kk, what);
    let out = match (k, m % 4 == 0) {
        (3, true) => vec![(v(&s - 1, "(s-1)/3")?, two_n), (v(-2 * &s - 1, "(-2s-1)/3")?, n)],
        (3, false) => vec![(v(2 * &s - 1, "(2s-1)/3")?, n), (v(-&s - 1, "(-s-1)/3")?, two_n)],
        (4, true) => vec![(v(&s - 1, "(s-1)/4")?, three_n), (v(-3 * &s - 1, "(-3s-1)/4")?, n)],
        (4, false) => vec![(v(3 * &s - 1, "(3s-1)/4")?, n), (v(-&s - 1, "(-s-1)/4")?, three_n)],
        _ => return Err(Error::OutOfScope(format!("k = {k}"))),
    };
    Ok(out)
}

/// Case (a) coefficient representation used by [`gp_spectrum`].
pub fn case_a_rep(g: &GraphSpec) -> Result<QFRep> {
    match g.require_in_scope()? {
        CaseTag::K3CaseA => dioph::solve_ab(g.p, g.m / 3),
        CaseTag::K4CaseA => dioph::solve_cd(g.p, g.m / 4),
        tag => Err(Error::OutOfScope(format!("{tag:?} has no coefficient representation"))),
    }
}

/// Spectrum of `Γ(k, q)`; the variant field of `g` is ignored.
pub fn gp_spectrum(g: &GraphSpec) -> Result<Spectrum> {
    let tag = g.require_in_scope()?;
    match tag {
        CaseTag::K3CaseA => {
            let rep = case_a_rep(g)?;
            k3_case_a_spectrum(g.p, g.m / 3, &rep.x, &rep.y)
        }
        CaseTag::K4CaseA => {
            let rep = case_a_rep(g)?;
            k4_case_a_spectrum(g.p, g.m / 4, &rep.x, &rep.y)
        }
        CaseTag::K3CaseB | CaseTag::K4CaseB => {
            let rest = semiprimitive_values(g.k, g.p, g.m)?;
            Ok(Spectrum::with_principal(g.order(), g.degree(), BigInt::zero(), rest))
        }
        CaseTag::OutOfScope => unreachable!("checked by require_in_scope"),
    }
}

/// Sum-graph spectrum derived from the spectrum of `Γ(k, q)`.
///
/// For `q` even the two graphs coincide. For `q` odd every non-principal
/// `λ` of multiplicity `μ` splits into `±λ` with multiplicity `μ/2`, and
/// the graph carries `n` loops.
pub fn sum_from_gp(gp: &Spectrum) -> Result<Spectrum> {
    if gp.order.is_even() {
        return Ok(gp.clone());
    }
    let mut rest = Vec::new();
    for (v, mult) in gp.non_principal() {
        let (half, odd) = mult.div_rem(&BigInt::from(2));
        if !odd.is_zero() {
            return Err(Error::invariant(format!("odd multiplicity {mult} for eigenvalue {v}")));
        }
        rest.push((-&v, half.clone()));
        rest.push((v, half));
    }
    Ok(Spectrum::with_principal(
        gp.order.clone(),
        gp.principal.clone(),
        gp.principal.clone(),
        rest,
    ))
}

pub fn gpsum_spectrum(g: &GraphSpec) -> Result<Spectrum> {
    sum_from_gp(&gp_spectrum(g)?)
}

/// Spectrum of the complement of a loopless regular graph: the principal
/// becomes `q - 1 - n` and every other `λ` becomes `-1 - λ`.
pub fn complement_spectrum(s: &Spectrum) -> Result<Spectrum> {
    if !s.loops.is_zero() {
        return Err(Error::HasLoops(s.loops.to_string()));
    }
    let principal = &s.order - 1u32 - &s.principal;
    let rest = s
        .non_principal()
        .into_iter()
        .map(|(v, mult)| (-1 - v, mult))
        .collect();
    Ok(Spectrum::with_principal(s.order.clone(), principal, BigInt::zero(), rest))
}

/// Dispatches on the variant.
pub fn spectrum(g: &GraphSpec) -> Result<Spectrum> {
    match g.variant {
        Variant::Gp => gp_spectrum(g),
        Variant::GpSum => gpsum_spectrum(g),
        Variant::GpComplement => complement_spectrum(&gp_spectrum(g)?),
        Variant::GpSumComplement => complement_spectrum(&gpsum_spectrum(g)?),
    }
}

/// `|λ|` summed with multiplicity.
pub(crate) fn abs_sum(entries: &[(BigInt, BigInt)]) -> BigInt {
    entries.iter().map(|(v, m)| v.abs() * m).sum()
}

/// Every in-scope `Γ(k, p^m)` with `k ∈ {3, 4}` and `p^m ≤ max_q`, ordered
/// by `p`, then `m`, then `k`.
pub fn in_scope_specs(max_q: u64) -> Vec<GraphSpec> {
    let mut out = Vec::new();
    for p in (2..=max_q).filter(|&p| ff::is_prime(p)) {
        let mut m = 1;
        while p.checked_pow(m).is_some_and(|q| q <= max_q) {
            for k in [3, 4] {
                let g = GraphSpec::gp(k, p, m);
                if g.case().in_scope() {
                    out.push(g);
                }
            }
            m += 1;
        }
    }
    out
}
