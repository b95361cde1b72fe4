//! Polynomials over GF(2) with bit-packed coefficients.
//!
//! Bit `k` of the packed representation holds the coefficient of `x^k`.
//! Values are kept canonical: no trailing zero words, and the zero
//! polynomial owns an empty word vector.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldElem;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("reversal length {k} is below the degree {degree}")]
    ReverseTooShort { k: usize, degree: usize },
    #[error("Q-multiplicity of the zero polynomial is unbounded")]
    ZeroMultiplicity,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A polynomial in GF(2)[x].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinPoly {
    words: Vec<u64>,
}

/// Carryless product of two 64-bit words.
#[inline]
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    // 4-bit window over `a`; the table holds a * {0..15} without carries.
    let mut table = [0u128; 16];
    let b = b as u128;
    for k in 1..16usize {
        let mut v = 0u128;
        for bit in 0..4 {
            if k >> bit & 1 == 1 {
                v ^= b << bit;
            }
        }
        table[k] = v;
    }
    let mut acc = 0u128;
    let mut shift = 0;
    let mut a = a;
    while a != 0 {
        acc ^= table[(a & 0xf) as usize] << shift;
        a >>= 4;
        shift += 4;
    }
    acc
}

impl BinPoly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    /// `Q(x) = x^2 + x + 1`.
    pub fn q_poly() -> Self {
        Self::from_u64(0b111)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / WORD_BITS + 1];
        words[k / WORD_BITS] = 1 << (k % WORD_BITS);
        Self { words }
    }

    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_u128(bits: u128) -> Self {
        Self::from_words(vec![bits as u64, (bits >> 64) as u64])
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    /// Sum of `x^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut words = Vec::new();
        for e in exps {
            let w = e / WORD_BITS;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1 << (e % WORD_BITS);
        }
        Self::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 coefficients, for polynomials known to fit.
    pub fn low_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / WORD_BITS)
            .is_some_and(|w| w >> (k % WORD_BITS) & 1 == 1)
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents carrying a 1, in ascending order.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
        let ws = shift / WORD_BITS;
        let bs = shift % WORD_BITS;
        let need = ws + src.len() + 1;
        if dst.len() < need {
            dst.resize(need, 0);
        }
        for (k, &s) in src.iter().enumerate() {
            dst[ws + k] ^= s << bs;
            if bs != 0 {
                dst[ws + k + 1] ^= s >> (WORD_BITS - bs);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Self::from_words(words)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.words.iter().enumerate() {
                let p = clmul64(a, b);
                out[i + j] ^= p as u64;
                out[i + j + 1] ^= (p >> 64) as u64;
            }
        }
        Self::from_words(out)
    }

    pub fn square(&self) -> Self {
        // Squaring spreads bits: x^k -> x^{2k}.
        Self::from_exponents(self.exponents().into_iter().map(|e| 2 * e))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut words = Vec::new();
        Self::xor_shifted(&mut words, &self.words, k);
        Self::from_words(words)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot: Vec<u64> = Vec::new();
        loop {
            let r = Self::from_words(std::mem::take(&mut rem));
            match r.degree() {
                Some(rd) if rd >= dd => {
                    let shift = rd - dd;
                    let qw = shift / WORD_BITS;
                    if quot.len() <= qw {
                        quot.resize(qw + 1, 0);
                    }
                    quot[qw] ^= 1 << (shift % WORD_BITS);
                    rem = r.words;
                    Self::xor_shifted(&mut rem, &divisor.words, shift);
                }
                _ => return Ok((Self::from_words(quot), r)),
            }
        }
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self` exactly, else `None`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Formal derivative; in characteristic 2 only odd exponents survive.
    pub fn derivative(&self) -> Self {
        const ODD: u64 = 0xaaaa_aaaa_aaaa_aaaa;
        // x^{2k+1} -> x^{2k} stays inside its word since 64 is even.
        Self::from_words(self.words.iter().map(|&w| (w & ODD) >> 1).collect())
    }

    /// `x^k * a(1/x)`: exponent `e` maps to `k - e`.
    pub fn reverse(&self, k: usize) -> Result<Self, PolyError> {
        if let Some(d) = self.degree() {
            if k < d {
                return Err(PolyError::ReverseTooShort { k, degree: d });
            }
        }
        Ok(Self::from_exponents(self.exponents().into_iter().map(|e| k - e)))
    }

    /// Largest `r` with `Q(x)^r | self`.
    pub fn q_multiplicity(&self) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroMultiplicity);
        }
        let q = Self::q_poly();
        let mut cur = self.clone();
        let mut r = 0;
        while let Some(next) = cur.exact_div(&q)? {
            cur = next;
            r += 1;
        }
        Ok(r)
    }

    /// Horner evaluation at a field element.
    pub fn eval<'a>(&self, x: FieldElem<'a>) -> FieldElem<'a> {
        let ctx = x.ctx();
        let Some(d) = self.degree() else {
            return ctx.zero();
        };
        let xb = x.bits();
        let mut acc = 0u64;
        for k in (0..=d).rev() {
            acc = ctx.mul_raw(acc, xb);
            if self.coeff(k) {
                acc ^= 1;
            }
        }
        ctx.elem(acc)
    }

    /// Little-endian packed coefficient bytes as hex, two digits per byte.
    pub fn to_hex(&self) -> String {
        let Some(d) = self.degree() else {
            return "00".to_string();
        };
        let nbytes = d / 8 + 1;
        (0..nbytes)
            .map(|b| {
                let w = self.words[b / 8];
                format!("{:02x}", (w >> (8 * (b % 8))) & 0xff)
            })
            .collect()
    }

    pub fn from_hex(s: &str) -> Result<Self, PolyError> {
        if s.is_empty() || !s.len().is_multiple_of(2) {
            return Err(PolyError::Parse(format!("odd-length hex string {s:?}")));
        }
        let mut words = vec![0u64; s.len() / 16 + 1];
        for (b, chunk) in s.as_bytes().chunks(2).enumerate() {
            let txt = std::str::from_utf8(chunk).map_err(|e| PolyError::Parse(e.to_string()))?;
            let byte =
                u8::from_str_radix(txt, 16).map_err(|_| PolyError::Parse(format!("bad hex byte {txt:?}")))?;
            words[b / 8] |= (byte as u64) << (8 * (b % 8));
        }
        Ok(Self::from_words(words))
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({self})")
    }
}

impl FromStr for BinPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in s.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| PolyError::Parse(format!("bad term {t:?}")))?,
            };
            exps.push(e);
        }
        Ok(Self::from_exponents(exps))
    }
}

impl Serialize for BinPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;
    fn add(self, rhs: &BinPoly) -> BinPoly {
        BinPoly::add(self, rhs)
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;
    fn mul(self, rhs: &BinPoly) -> BinPoly {
        BinPoly::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(&p("x+1") * &p("x+1"), p("x^2+1"));
        let q = BinPoly::q_poly();
        assert_eq!(&q * &q, p("x^4+x^2+1"));
        assert_eq!(&q * &p("x+1"), p("x^3+1"));
        assert!((&BinPoly::zero() * &q).is_zero());
        assert_eq!(q.pow(2), p("x^4+x^2+1"));
    }

    #[test]
    fn product_degree_adds_across_words() {
        let a = BinPoly::monomial(70).add(&BinPoly::one());
        let b = BinPoly::monomial(100).add(&BinPoly::x());
        let c = &a * &b;
        assert_eq!(c.degree(), Some(170));
        assert_eq!(c, p("x^170+x^100+x^71+x"));
    }

    #[test]
    fn gcd_basics() {
        let q = BinPoly::q_poly();
        assert_eq!(q.gcd(&p("x^3+1")).unwrap(), q);
        assert_eq!(q.gcd(&BinPoly::zero()).unwrap(), q);
        assert_eq!(BinPoly::zero().gcd(&BinPoly::zero()), Err(PolyError::GcdOfZeros));
    }

    #[test]
    fn derivative_rules() {
        assert_eq!(p("x^3+x+1").derivative(), p("x^2+1"));
        assert!(p("x^4").derivative().is_zero());
        assert_eq!(p("x^10+x^9+x^3+x+1").derivative(), p("x^8+x^2+1"));
        assert_eq!(p("x^65+x^64").derivative(), p("x^64"));
    }

    #[test]
    fn reversal() {
        let q = BinPoly::q_poly();
        assert_eq!(q.reverse(2).unwrap(), q);
        assert_eq!(p("x^3").reverse(5).unwrap(), p("x^2"));
        assert_eq!(
            p("x^10+x^9+x^3+x+1").reverse(11).unwrap(),
            p("x^11+x^10+x^8+x^2+x")
        );
        assert_eq!(q.reverse(1), Err(PolyError::ReverseTooShort { k: 1, degree: 2 }));
    }

    #[test]
    fn q_multiplicity_cases() {
        let q = BinPoly::q_poly();
        assert_eq!((&q.pow(2) * &p("x+1")).q_multiplicity().unwrap(), 2);
        assert_eq!(p("x+1").q_multiplicity().unwrap(), 0);
        assert_eq!(BinPoly::zero().q_multiplicity(), Err(PolyError::ZeroMultiplicity));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert_eq!(p("x").div_rem(&BinPoly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn text_and_hex_forms() {
        let h = p("x^10+x^9+x^3+x+1");
        assert_eq!(h.to_string(), "x^10+x^9+x^3+x+1");
        assert_eq!(h.to_hex(), "0b06");
        assert_eq!(BinPoly::from_hex("0b06").unwrap(), h);
        assert_eq!(BinPoly::zero().to_string(), "0");
        assert_eq!(BinPoly::q_poly().to_hex(), "07");
        assert!("x^".parse::<BinPoly>().is_err());
        assert!(BinPoly::from_hex("abc").is_err());
    }

    #[test]
    fn clmul_matches_bitwise() {
        let pairs = [
            (0xffffu64, 0xffffu64),
            (u64::MAX, u64::MAX),
            (0x8000_0000_0000_0001, 3),
        ];
        for (a, b) in pairs {
            let mut want = 0u128;
            for i in 0..64 {
                if b >> i & 1 == 1 {
                    want ^= (a as u128) << i;
                }
            }
            assert_eq!(clmul64(a, b), want);
        }
    }
}
