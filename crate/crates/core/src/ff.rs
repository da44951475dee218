//! Explicit models of `F_{p^m}`.
//!
//! Elements are coefficient vectors over `F_p` in the polynomial basis
//! `1, x, ..., x^{m-1}`. Every element also has an integer index
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`; the index order is the enumeration
//! order used to pick the modulus and the primitive element, so a field built
//! for the same `(p, m)` is identical across runs.
//!
//! Construction builds discrete-log tables over the chosen primitive element,
//! which bounds explicit fields by [`DEFAULT_FIELD_CAP`].

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Largest field that will be built explicitly.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Element of `F_{p^m}` as `m` coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn new(coeffs: Vec<u32>) -> Self {
        FieldElement { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

// Enumeration order: compare from the highest coefficient down.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Dense polynomial arithmetic over F_p; coefficient vectors, constant first,
// with no trailing-zero normalization unless stated.
mod poly {
    pub(super) fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        a
    }

    pub(super) fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    /// `a mod f` for monic `f`.
    pub(super) fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let m = f.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= m {
            r.resize(m, 0);
            return r;
        }
        for i in (m..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for j in 0..=m {
                let idx = i - m + j;
                r[idx] = (r[idx] + p - c * f[j] % p) % p;
            }
        }
        r.truncate(m);
        r
    }

    pub(super) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    pub(super) fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    pub(super) fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let m = f.len() - 1;
        let mut acc = vec![0u64; m.max(1)];
        acc[0] = 1;
        let mut acc = rem(&acc, f, p);
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    fn inv_mod_p(a: u64, p: u64) -> u64 {
        super::pow_mod(a, p - 2, p)
    }

    /// Monic-agnostic gcd over F_p; returns a trimmed vector.
    pub(super) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while degree(&b).is_some() {
            let db = degree(&b).unwrap();
            // reduce a by b
            let lead_inv = if p == 2 { 1 } else { inv_mod_p(b[db], p) };
            while let Some(da) = degree(&a) {
                if da < db {
                    break;
                }
                let c = a[da] * lead_inv % p;
                for j in 0..=db {
                    let idx = da - db + j;
                    a[idx] = (a[idx] + p - c * b[j] % p) % p;
                }
            }
            a = trim(a);
            std::mem::swap(&mut a, &mut b);
        }
        a
    }
}

/// Rabin's irreducibility test for a monic polynomial of degree `m >= 1`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    let x = if m == 1 { poly::rem(&[0, 1], f, p) } else { vec![0, 1] };
    let frob = |times: usize| {
        let mut h = x.clone();
        for _ in 0..times {
            h = poly::powmod(&h, p, f, p);
        }
        h
    };
    let mut xr = x.clone();
    xr.resize(m, 0);
    let mut full = frob(m);
    full.resize(m, 0);
    if full != xr {
        return false;
    }
    for l in prime_divisors(m as u64) {
        let mut h = frob(m / l as usize);
        h.resize(m.max(2), 0);
        // h - x
        h[1] = (h[1] + p - 1) % p;
        let g = poly::gcd(&h, f, p);
        if poly::degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Explicit finite field with a fixed modulus and primitive element.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_basis: Vec<u64>,
}

/// Builds `F_{p^m}` under [`DEFAULT_FIELD_CAP`].
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec> {
    make_field_with_cap(p, m, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(p: u64, m: u32, cap: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if m == 0 {
        return Err(Error::bad_input("field degree m must be at least 1"));
    }
    let q = p
        .checked_pow(m)
        .filter(|&q| q <= cap)
        .ok_or_else(|| Error::CapExceeded {
            what: "field",
            size: format!("{p}^{m}"),
            cap,
        })?;
    let md = m as usize;

    // Smallest monic irreducible of degree m in index order.
    let p_m = q;
    let mut modulus = None;
    for idx in 0..p_m {
        let mut f = digits(idx, p, md);
        f.push(1);
        if is_irreducible(&f, p) {
            modulus = Some(f);
            break;
        }
    }
    let modulus = modulus.ok_or_else(|| Error::invariant(format!("no irreducible polynomial of degree {m} over F_{p}")))?;

    let order = q - 1;
    let factors = prime_divisors(order);
    let mut gen = None;
    for idx in 1..q {
        let g = digits(idx, p, md);
        let primitive = factors.iter().all(|&r| {
            let h = poly::powmod(&g, order / r, &modulus, p);
            !(h[0] == 1 && h[1..].iter().all(|&c| c == 0))
        });
        if primitive {
            gen = Some(g);
            break;
        }
    }
    let gen = gen.ok_or_else(|| Error::invariant(format!("no primitive element in F_{p}^{m}")))?;

    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![u32::MAX; q as usize];
    let mut cur = {
        let mut one = vec![0u64; md];
        one[0] = 1;
        one
    };
    for i in 0..order {
        let idx = undigits(&cur, p);
        if log[idx as usize] != u32::MAX {
            return Err(Error::invariant("generator order is smaller than q - 1"));
        }
        log[idx as usize] = i as u32;
        exp.push(idx as u32);
        cur = poly::mulmod(&cur, &gen, &modulus, p);
    }

    let mut field = FieldSpec {
        p,
        m,
        q,
        modulus,
        generator: FieldElement::new(gen.iter().map(|&c| c as u32).collect()),
        exp,
        log,
        trace_basis: Vec::new(),
    };
    let basis = (0..md)
        .map(|j| {
            let mut c = vec![0u32; md];
            c[j] = 1;
            field.trace(&FieldElement::new(c))
        })
        .collect::<Result<Vec<_>>>()?;
    field.trace_basis = basis;
    Ok(field)
}

fn digits(mut idx: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Monic modulus, constant term first (length `m + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::new(vec![0; self.m as usize])
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element with the given enumeration index (`index < q`).
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.q, "index {index} outside F_{}", self.q);
        FieldElement::new(digits(index, self.p, self.m as usize).into_iter().map(|c| c as u32).collect())
    }

    pub fn index_of(&self, a: &FieldElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.coeffs.iter().rev().fold(0u64, |acc, &d| acc * self.p + u64::from(d)))
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.m as usize || a.coeffs.iter().any(|&c| u64::from(c) >= self.p) {
            return Err(Error::MalformedElement(format!(
                "{:?} is not an element of F_{}^{}",
                a.coeffs, self.p, self.m
            )));
        }
        Ok(())
    }

    fn wide(&self, a: &FieldElement) -> Vec<u64> {
        a.coeffs.iter().map(|&c| u64::from(c)).collect()
    }

    fn narrow(&self, v: Vec<u64>) -> FieldElement {
        let mut v = v;
        v.resize(self.m as usize, 0);
        FieldElement::new(v.into_iter().map(|c| c as u32).collect())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p as u32;
        FieldElement::new(a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p as u32;
        FieldElement::new(a.coeffs.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    /// Product by polynomial multiplication modulo the modulus (no tables).
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.narrow(poly::mulmod(&self.wide(a), &self.wide(b), &self.modulus, self.p))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        self.narrow(poly::powmod(&self.wide(a), e, &self.modulus, self.p))
    }

    /// `Tr(a) = a + a^p + ... + a^{p^{m-1}}`, by direct Frobenius summation.
    pub fn trace(&self, a: &FieldElement) -> Result<u64> {
        self.check(a)?;
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.m {
            cur = self.pow(&cur, self.p);
            acc = self.add(&acc, &cur);
        }
        if acc.coeffs[1..].iter().any(|&c| c != 0) {
            return Err(Error::invariant(format!("trace {:?} left the prime field", acc.coeffs)));
        }
        Ok(u64::from(acc.coeffs[0]))
    }

    /// Trace of the element with the given index, using linearity over the
    /// precomputed traces of the basis monomials.
    pub fn trace_of_index(&self, mut index: u64) -> u64 {
        let mut acc = 0u64;
        for &t in &self.trace_basis {
            acc += (index % self.p) * t;
            index /= self.p;
        }
        acc % self.p
    }

    /// Index of `ω^i` for the fixed primitive element `ω`.
    pub fn exp_index(&self, i: u64) -> u64 {
        u64::from(self.exp[(i % (self.q - 1)) as usize])
    }

    /// Discrete log of a nonzero element index.
    pub fn log_index(&self, index: u64) -> Option<u64> {
        match self.log.get(index as usize) {
            Some(&l) if l != u32::MAX => Some(u64::from(l)),
            _ => None,
        }
    }

    /// Index of `a + b` computed digit-wise on indices.
    pub fn add_index(&self, mut a: u64, mut b: u64) -> u64 {
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    /// Index of `b - a`.
    pub fn sub_index(&self, b: u64, mut a: u64) -> u64 {
        let (mut out, mut place, mut bb) = (0u64, 1u64, b);
        for _ in 0..self.m {
            out += ((bb % self.p + self.p - a % self.p) % self.p) * place;
            a /= self.p;
            bb /= self.p;
            place *= self.p;
        }
        out
    }

    /// Multiplicative order of a nonzero element, by the log table.
    pub fn order_of(&self, a: &FieldElement) -> Result<u64> {
        let idx = self.index_of(a)?;
        let l = self
            .log_index(idx)
            .ok_or_else(|| Error::bad_input("zero has no multiplicative order"))?;
        Ok((self.q - 1) / gcd(l, self.q - 1))
    }

    /// Indices of the `k`-th power residues `ω^0, ω^k, ω^{2k}, ...`.
    pub fn residue_indices(&self, k: u64) -> Result<Vec<u64>> {
        if k == 0 || (self.q - 1) % k != 0 {
            return Err(Error::BadK { k, q_minus_one: self.q - 1 });
        }
        Ok((0..(self.q - 1) / k).map(|j| self.exp_index(j * k)).collect())
    }
}

/// `R_k = {x^k : x ∈ F_q^*}`, listed as `ω^0, ω^k, ω^{2k}, ...`.
pub fn kth_power_residues(f: &FieldSpec, k: u64) -> Result<Vec<FieldElement>> {
    Ok(f.residue_indices(k)?.into_iter().map(|i| f.element(i)).collect())
}

/// Whether `-1` is a power of `p` modulo `k`.
pub fn is_semiprimitive(k: u64, p: u64) -> Result<bool> {
    if k == 0 || gcd(p, k) != 1 {
        return Err(Error::bad_input(format!("gcd({p}, {k}) != 1")));
    }
    let target = (k - 1) % k;
    let mut acc = 1 % k;
    for _ in 0..k {
        acc = acc * (p % k) % k;
        if acc == target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Which closed-form case a triple `(k, p, m)` falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `k = 3`, `p ≡ 1 (mod 3)`, `m = 3t`.
    K3CaseA,
    /// `k = 3`, `p ≡ 2 (mod 3)`, `m = 2t`.
    K3CaseB,
    /// `k = 4`, `p ≡ 1 (mod 4)`, `m = 4t`.
    K4CaseA,
    /// `k = 4`, `p ≡ 3 (mod 4)`, `m = 2t`.
    K4CaseB,
    OutOfScope,
}

impl CaseTag {
    pub fn is_semiprimitive(self) -> bool {
        matches!(self, CaseTag::K3CaseB | CaseTag::K4CaseB)
    }

    pub fn in_scope(self) -> bool {
        self != CaseTag::OutOfScope
    }
}

pub fn theorem_hypotheses(k: u32, p: u64, m: u32) -> CaseTag {
    if m == 0 || !is_prime(p) {
        return CaseTag::OutOfScope;
    }
    let q_at_least_5 = p.checked_pow(m).map_or(true, |q| q >= 5);
    if !q_at_least_5 {
        return CaseTag::OutOfScope;
    }
    match (k, p % k.max(1) as u64) {
        (3, 1) if m % 3 == 0 => CaseTag::K3CaseA,
        (3, 2) if m % 2 == 0 => CaseTag::K3CaseB,
        (4, 1) if m % 4 == 0 => CaseTag::K4CaseA,
        (4, 3) if m % 2 == 0 && !(p == 3 && m == 2) => CaseTag::K4CaseB,
        _ => CaseTag::OutOfScope,
    }
}

/// Human-readable reason a triple is out of scope, for diagnostics.
pub fn scope_diagnostic(k: u32, p: u64, m: u32) -> String {
    if !is_prime(p) {
        return format!("p = {p} is not prime");
    }
    if m == 0 {
        return "m must be at least 1".into();
    }
    if k != 3 && k != 4 {
        return format!("k = {k} is not 3 or 4");
    }
    if let Some(q) = p.checked_pow(m) {
        if q < 5 {
            return format!("q = {q} < 5");
        }
        if k == 4 && q == 9 {
            return "q = 9 is excluded for k = 4".into();
        }
    }
    format!("{k} ∤ (q−1)/(p−1) for q = {p}^{m}")
}
