//! Binary fields GF(2^n) with an optional quadratic-tower view
//! GF(2^m) ⊂ GF(2^{2m}).
//!
//! Elements are residues modulo the canonical modulus of degree `n`: the
//! irreducible polynomial whose coefficient bitstring is least as an
//! integer. A shipped table covers `n <= 40`; larger caps fall back to a
//! sieve. Fields with `n <= 16` carry log/antilog tables.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf2poly::{clmul64, BinPoly};
use crate::nt;

/// Default upper bound on the extension degree.
pub const DEFAULT_DEGREE_CAP: u32 = 40;
/// Hard upper bound: representatives live in a `u64`.
pub const MAX_DEGREE: u32 = 62;
const TABLE_DEGREE_LIMIT: u32 = 16;

/// Least irreducible polynomial of degree `n` over GF(2), indexed by `n - 1`.
const CANONICAL_MODULI: [u64; 40] = [
    0x2,
    0x7,
    0xb,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11b,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201b,
    0x4021,
    0x8003,
    0x1002b,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001b,
    0x2000009,
    0x400001b,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008d,
    0x20000004b,
    0x40000001b,
    0x800000005,
    0x1000000035,
    0x200000003f,
    0x4000000063,
    0x8000000011,
    0x10000000039,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {n} outside 1..={cap}")]
    DegreeOutOfRange { n: u32, cap: u32 },
    #[error("subfield degree {m} does not satisfy n = 2m for n = {n}")]
    InconsistentSubfield { n: u32, m: u32 },
    #[error("elements belong to different fields")]
    ContextMismatch,
    #[error("zero has no inverse")]
    InverseOfZero,
    #[error("zero has no multiplicative order")]
    OrderOfZero,
    #[error("field has no quadratic subfield structure")]
    NoSubfield,
    #[error("GF(2^{0}) contains no primitive cube root of unity")]
    NoCubeRoot(u32),
    #[error("modulus {0} is not irreducible of the requested degree")]
    NotIrreducible(BinPoly),
    #[error("bad element literal: {0}")]
    BadElement(String),
}

struct LogTables {
    log: Vec<u32>,
    // doubled so that exp[log a + log b] needs no reduction
    exp: Vec<u64>,
}

/// A concrete field GF(2^n).
pub struct FieldCtx {
    n: u32,
    modulus: BinPoly,
    modulus_bits: u64,
    subfield_m: Option<u32>,
    group_order: u64,
    group_factors: Vec<u64>,
    generator: u64,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("subfield_m", &self.subfield_m)
            .finish()
    }
}

fn reduce(mut v: u128, modulus: u64, n: u32) -> u64 {
    let top = 127 - v.leading_zeros().min(127);
    if v == 0 {
        return 0;
    }
    let mut k = top;
    while k >= n {
        if v >> k & 1 == 1 {
            v ^= (modulus as u128) << (k - n);
        }
        k -= 1;
    }
    v as u64
}

/// Ben-Or irreducibility test for a polynomial of degree `n` packed in a `u64`.
pub(crate) fn is_irreducible(f: u64, n: u32) -> bool {
    if n == 0 || f >> n != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let fp = BinPoly::from_u64(f);
    let x = 0b10u64;
    let mut p = x;
    for _ in 1..=n / 2 {
        p = reduce(clmul64(p, p), f, n);
        let g = BinPoly::from_u64(p ^ x).gcd(&fp).expect("modulus is nonzero");
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// Least irreducible of degree `n` by exhaustive sieve.
pub(crate) fn sieve_canonical_modulus(n: u32) -> u64 {
    let mut f = 1u64 << n;
    while !is_irreducible(f, n) {
        f += 1;
    }
    f
}

impl FieldCtx {
    /// The field GF(2^n) with its canonical modulus, degree capped at 40.
    pub fn new(n: u32, subfield_m: Option<u32>) -> Result<Self, FieldError> {
        Self::with_cap(n, subfield_m, DEFAULT_DEGREE_CAP)
    }

    /// GF(2^{2m}) viewed as a quadratic extension of GF(2^m).
    pub fn tower(m: u32) -> Result<Self, FieldError> {
        Self::new(2 * m, Some(m))
    }

    pub fn with_cap(n: u32, subfield_m: Option<u32>, cap: u32) -> Result<Self, FieldError> {
        let cap = cap.min(MAX_DEGREE);
        if n == 0 || n > cap {
            return Err(FieldError::DegreeOutOfRange { n, cap });
        }
        let modulus = match CANONICAL_MODULI.get(n as usize - 1) {
            Some(&f) => f,
            None => sieve_canonical_modulus(n),
        };
        Self::build(n, modulus, subfield_m)
    }

    /// Expert constructor bypassing the canonical choice of modulus.
    pub fn with_modulus(modulus: &BinPoly, subfield_m: Option<u32>) -> Result<Self, FieldError> {
        let n = modulus.degree().unwrap_or(0) as u32;
        if n == 0 || n > MAX_DEGREE || !is_irreducible(modulus.low_u64(), n) {
            return Err(FieldError::NotIrreducible(modulus.clone()));
        }
        Self::build(n, modulus.low_u64(), subfield_m)
    }

    fn build(n: u32, modulus_bits: u64, subfield_m: Option<u32>) -> Result<Self, FieldError> {
        if let Some(m) = subfield_m {
            if 2 * m != n {
                return Err(FieldError::InconsistentSubfield { n, m });
            }
        }
        let group_order = (1u64 << n) - 1;
        let group_factors = nt::prime_divisors(group_order);
        let mut ctx = FieldCtx {
            n,
            modulus: BinPoly::from_u64(modulus_bits),
            modulus_bits,
            subfield_m,
            group_order,
            group_factors,
            generator: 1,
            tables: None,
        };
        ctx.generator = (1..=group_order)
            .find(|&g| ctx.is_generator_raw(g))
            .expect("the multiplicative group is cyclic");
        if n <= TABLE_DEGREE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn is_generator_raw(&self, g: u64) -> bool {
        g != 0
            && self
                .group_factors
                .iter()
                .all(|&p| self.pow_raw(g, (self.group_order / p) as u128) != 1)
    }

    fn build_tables(&self) -> LogTables {
        let order = self.group_order as usize;
        let mut log = vec![0u32; order + 1];
        let mut exp = vec![0u64; 2 * order];
        let mut v = 1u64;
        for k in 0..order {
            exp[k] = v;
            exp[k + order] = v;
            log[v as usize] = k as u32;
            v = reduce(clmul64(v, self.generator), self.modulus_bits, self.n);
        }
        LogTables { log, exp }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &BinPoly {
        &self.modulus
    }

    pub fn subfield_m(&self) -> Option<u32> {
        self.subfield_m
    }

    /// `q = 2^m` for a tower context.
    pub fn q(&self) -> Result<u64, FieldError> {
        self.subfield_m.map(|m| 1u64 << m).ok_or(FieldError::NoSubfield)
    }

    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    /// `2^n - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Least element (by bits) generating the multiplicative group.
    pub fn generator(&self) -> FieldElem<'_> {
        self.elem(self.generator)
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn same_as(&self, other: &FieldCtx) -> bool {
        std::ptr::eq(self, other) || (self.n == other.n && self.modulus_bits == other.modulus_bits)
    }

    /// Element from a raw representative; bits above `n` are a caller bug.
    pub fn elem(&self, bits: u64) -> FieldElem<'_> {
        debug_assert!(bits >> self.n == 0, "representative exceeds field degree");
        FieldElem { ctx: self, bits }
    }

    /// Error unless `x` belongs to this field.
    pub fn check_elem(&self, x: FieldElem<'_>) -> Result<(), FieldError> {
        if self.same_as(x.ctx) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn try_elem(&self, bits: u64) -> Result<FieldElem<'_>, FieldError> {
        if bits >> self.n != 0 {
            return Err(FieldError::BadElement(format!(
                "{bits:#x} has degree >= {}",
                self.n
            )));
        }
        Ok(self.elem(bits))
    }

    pub fn zero(&self) -> FieldElem<'_> {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem<'_> {
        self.elem(1)
    }

    /// All field elements in ascending bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem<'_>> + '_ {
        (0..self.size()).map(move |b| self.elem(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => reduce(clmul64(a, b), self.modulus_bits, self.n),
        }
    }

    #[inline]
    pub fn square_raw(&self, a: u64) -> u64 {
        self.mul_raw(a, a)
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow_raw(&self, a: u64, e: u128) -> u64 {
        if a == 0 {
            return u64::from(e == 0);
        }
        let e = (e % self.group_order as u128) as u64;
        if let Some(t) = &self.tables {
            let l = nt::mul_mod(t.log[a as usize] as u64, e, self.group_order);
            return t.exp[l as usize];
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.square_raw(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as u64;
            return Some(t.exp[((self.group_order - l) % self.group_order) as usize]);
        }
        Some(self.pow_raw(a, (self.group_order - 1) as u128))
    }

    /// `x^q` by `m` repeated squarings.
    pub fn frobenius_q_raw(&self, a: u64) -> Result<u64, FieldError> {
        let m = self.subfield_m.ok_or(FieldError::NoSubfield)?;
        Ok((0..m).fold(a, |v, _| self.square_raw(v)))
    }

    /// A primitive cube root of unity: the bit-smaller root of `x^2 + x + 1`.
    pub fn omega(&self) -> Result<FieldElem<'_>, FieldError> {
        if !self.n.is_multiple_of(2) {
            return Err(FieldError::NoCubeRoot(self.n));
        }
        let b = self.pow_raw(self.generator, (self.group_order / 3) as u128);
        let b2 = self.square_raw(b);
        Ok(self.elem(b.min(b2)))
    }

    /// The norm-one subgroup `{x : x^{q+1} = 1}` in ascending bit order.
    pub fn unit_circle(&self) -> Result<Vec<FieldElem<'_>>, FieldError> {
        let q = self.q()?;
        let z = self.pow_raw(self.generator, (q - 1) as u128);
        let mut out = Vec::with_capacity(q as usize + 1);
        let mut v = 1u64;
        for _ in 0..=q {
            out.push(v);
            v = self.mul_raw(v, z);
        }
        out.sort_unstable();
        Ok(out.into_iter().map(|b| self.elem(b)).collect())
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem<'_>, FieldError> {
        let bad = || FieldError::BadElement(s.to_string());
        let (prefix, hex) = s.split_once(':').ok_or_else(bad)?;
        let order: u64 = prefix
            .strip_prefix("gf")
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if order != self.size() {
            return Err(FieldError::ContextMismatch);
        }
        let digits = hex.strip_prefix("0x").ok_or_else(bad)?;
        let bits = u64::from_str_radix(digits, 16).map_err(|_| bad())?;
        self.try_elem(bits)
    }
}

/// An element of a [`FieldCtx`].
#[derive(Clone, Copy)]
pub struct FieldElem<'a> {
    ctx: &'a FieldCtx,
    bits: u64,
}

impl<'a> FieldElem<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.ctx.same_as(other.ctx) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self, FieldError> {
        self.check(&other)?;
        Ok(self.ctx.elem(self.bits ^ other.bits))
    }

    pub fn try_mul(self, other: Self) -> Result<Self, FieldError> {
        self.check(&other)?;
        Ok(self.ctx.elem(self.ctx.mul_raw(self.bits, other.bits)))
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        self.ctx
            .inv_raw(self.bits)
            .map(|b| self.ctx.elem(b))
            .ok_or(FieldError::InverseOfZero)
    }

    /// `self / other`.
    pub fn try_div(self, other: Self) -> Result<Self, FieldError> {
        self.try_mul(other.inv()?)
    }

    pub fn pow(self, e: u128) -> Self {
        self.ctx.elem(self.ctx.pow_raw(self.bits, e))
    }

    pub fn square(self) -> Self {
        self.ctx.elem(self.ctx.square_raw(self.bits))
    }

    /// The conjugate `x^q` over the subfield.
    pub fn frobenius_q(self) -> Result<Self, FieldError> {
        Ok(self.ctx.elem(self.ctx.frobenius_q_raw(self.bits)?))
    }

    /// Whether `self` lies in the subfield GF(2^m).
    pub fn in_base_field(self) -> Result<bool, FieldError> {
        Ok(self.ctx.frobenius_q_raw(self.bits)? == self.bits)
    }

    /// Whether `self^{q+1} = 1`.
    pub fn on_unit_circle(self) -> Result<bool, FieldError> {
        let q = self.ctx.q()?;
        Ok(self.bits != 0 && self.ctx.pow_raw(self.bits, q as u128 + 1) == 1)
    }

    /// Least `k > 0` with `self^k = 1`.
    pub fn mult_order(self) -> Result<u64, FieldError> {
        if self.bits == 0 {
            return Err(FieldError::OrderOfZero);
        }
        let mut order = self.ctx.group_order;
        for &p in &self.ctx.group_factors {
            while order.is_multiple_of(p) && self.ctx.pow_raw(self.bits, (order / p) as u128) == 1 {
                order /= p;
            }
        }
        Ok(order)
    }
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.ctx.same_as(other.ctx)
    }
}

impl Eq for FieldElem<'_> {}

impl Hash for FieldElem<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for FieldElem<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

/// Panics on mixed contexts; use [`FieldElem::try_add`] to get an error.
impl<'a> Add for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("field context mismatch")
    }
}

/// Panics on mixed contexts; use [`FieldElem::try_mul`] to get an error.
impl<'a> Mul for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("field context mismatch")
    }
}

impl fmt::Display for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf{}:{:#x}", self.ctx.size(), self.bits)
    }
}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FieldElem<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        assert_eq!(FieldCtx::new(2, None).unwrap().modulus().to_string(), "x^2+x+1");
        assert_eq!(FieldCtx::new(3, None).unwrap().modulus().to_string(), "x^3+x+1");
        assert_eq!(FieldCtx::new(4, None).unwrap().modulus().to_string(), "x^4+x+1");
    }

    #[test]
    fn shipped_table_matches_sieve() {
        for n in 1..=24 {
            assert_eq!(
                CANONICAL_MODULI[n as usize - 1],
                sieve_canonical_modulus(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FieldCtx::new(0, None).unwrap_err(),
            FieldError::DegreeOutOfRange { n: 0, cap: 40 }
        );
        assert_eq!(
            FieldCtx::new(41, None).unwrap_err(),
            FieldError::DegreeOutOfRange { n: 41, cap: 40 }
        );
        assert_eq!(
            FieldCtx::new(6, Some(2)).unwrap_err(),
            FieldError::InconsistentSubfield { n: 6, m: 2 }
        );
        assert!(FieldCtx::with_modulus(&"x^4+x^2+1".parse().unwrap(), None).is_err());
        let expert = FieldCtx::with_modulus(&"x^4+x^3+1".parse().unwrap(), Some(2)).unwrap();
        assert_eq!(expert.degree(), 4);
    }

    #[test]
    fn beyond_shipped_table_uses_sieve() {
        let f = FieldCtx::with_cap(41, None, 41).unwrap();
        assert!(is_irreducible(f.modulus().low_u64(), 41));
        assert_eq!(f.modulus().degree(), Some(41));
    }

    #[test]
    fn power_and_inverse() {
        for n in [4u32, 7, 18] {
            let f = FieldCtx::new(n, None).unwrap();
            let order = f.group_order() as u128;
            for b in [1u64, 2, 3, 5, (1 << n) - 1] {
                let a = f.elem(b);
                assert!(a.pow(order).is_one());
                assert!((a * a.inv().unwrap()).is_one());
                assert_eq!(a.pow(2), a.square());
            }
            assert!(f.zero().pow(0).is_one());
            assert!(f.zero().pow(5).is_zero());
            assert_eq!(f.zero().inv(), Err(FieldError::InverseOfZero));
        }
    }

    #[test]
    fn squaring_is_additive() {
        let f = FieldCtx::new(10, None).unwrap();
        for a in (0..1024).step_by(37) {
            for b in (0..1024).step_by(53) {
                let (a, b) = (f.elem(a), f.elem(b));
                assert_eq!((a + b).square(), a.square() + b.square());
            }
        }
    }

    #[test]
    fn table_and_plain_multiplication_agree() {
        let f = FieldCtx::new(8, None).unwrap();
        for a in 0..256u64 {
            for b in 0..256u64 {
                assert_eq!(f.mul_raw(a, b), reduce(clmul64(a, b), f.modulus_bits, 8));
            }
        }
    }

    #[test]
    fn omega_in_gf4() {
        let f = FieldCtx::new(2, Some(1)).unwrap();
        let w = f.omega().unwrap();
        // x and x+1 both solve Q; the bit-smaller is x
        assert_eq!(w.bits(), 0b10);
        assert!((w * w.square()).is_one());
        assert!((w + w.square()).is_one());
        assert!(FieldCtx::new(3, None).unwrap().omega().is_err());
    }

    #[test]
    fn omega_relations() {
        for m in 1..=8 {
            let f = FieldCtx::tower(m).unwrap();
            let w = f.omega().unwrap();
            assert!((w.square() + w + f.one()).is_zero());
            assert_eq!(w.mult_order().unwrap(), 3);
            assert!((w + w.square()).is_one());
            let conj = w.frobenius_q().unwrap();
            if m % 2 == 1 {
                assert_eq!(conj, w.square());
                assert!(!w.in_base_field().unwrap());
                assert!(w.on_unit_circle().unwrap());
            } else {
                assert_eq!(conj, w);
                assert!(w.in_base_field().unwrap());
                assert!(!w.on_unit_circle().unwrap());
            }
        }
    }

    #[test]
    fn unit_circle_shape() {
        let f = FieldCtx::tower(1).unwrap();
        let w = f.omega().unwrap();
        let mut want = vec![f.one(), w, w.square()];
        want.sort();
        assert_eq!(f.unit_circle().unwrap(), want);
        for m in 1..=6 {
            let f = FieldCtx::tower(m).unwrap();
            let mu = f.unit_circle().unwrap();
            let q = 1u128 << m;
            assert_eq!(mu.len() as u128, q + 1);
            assert!(mu.windows(2).all(|p| p[0] < p[1]));
            let on: usize = f.elements().filter(|x| x.on_unit_circle().unwrap()).count();
            assert_eq!(on as u128, q + 1);
            let prod = mu.iter().fold(f.one(), |a, &b| a * b);
            if q + 1 > 2 {
                assert!(prod.is_one());
            }
        }
        assert_eq!(
            FieldCtx::new(4, None).unwrap().unit_circle().unwrap_err(),
            FieldError::NoSubfield
        );
    }

    #[test]
    fn frobenius_fixes_subfield() {
        for m in 1..=5 {
            let f = FieldCtx::tower(m).unwrap();
            let fixed = f.elements().filter(|x| x.in_base_field().unwrap()).count();
            assert_eq!(fixed, 1 << m);
            for x in f.elements().step_by(3) {
                assert_eq!(x.frobenius_q().unwrap().frobenius_q().unwrap(), x);
            }
            assert!(f.zero().in_base_field().unwrap());
            assert!(f.one().in_base_field().unwrap());
        }
    }

    #[test]
    fn orders() {
        let f = FieldCtx::new(4, None).unwrap();
        assert_eq!(f.one().mult_order().unwrap(), 1);
        // smallest generator of GF(16)* found by direct search
        let g = f
            .elements()
            .skip(1)
            .find(|x| (1..15u128).all(|k| !x.pow(k).is_one()))
            .unwrap();
        assert_eq!(g.mult_order().unwrap(), 15);
        assert_eq!(f.generator(), g);
        assert_eq!(f.zero().mult_order(), Err(FieldError::OrderOfZero));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = FieldCtx::new(4, None).unwrap();
        let b = FieldCtx::new(5, None).unwrap();
        assert_eq!(a.one().try_mul(b.one()), Err(FieldError::ContextMismatch));
        assert_eq!(a.one().try_add(b.one()), Err(FieldError::ContextMismatch));
        // equal moduli are the same field even across separate contexts
        let a2 = FieldCtx::new(4, None).unwrap();
        assert!(a.one().try_mul(a2.one()).is_ok());
    }

    #[test]
    fn element_text_form() {
        let f = FieldCtx::new(4, None).unwrap();
        assert_eq!(f.elem(9).to_string(), "gf16:0x9");
        assert_eq!(f.parse_elem("gf16:0x9").unwrap(), f.elem(9));
        assert_eq!(f.parse_elem("gf32:0x9").unwrap_err(), FieldError::ContextMismatch);
        assert!(f.parse_elem("gf16:0x1f").is_err());
        assert!(f.parse_elem("nonsense").is_err());
    }
}
