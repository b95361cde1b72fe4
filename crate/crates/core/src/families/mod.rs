//! The pentanomial classes `f_A`, `f_B`, `f_C` and the general shape
//! `x^t + sum_k x^{r_k (q-1) + t}`.
//!
//! Every class is `f(x) = x^t H(x^{q-1})` with `t = Q1 + Q2 + 1`,
//! `Q1 = 2^i`, `Q2 = 2^j`, and `N(x) = x^t H(1/x)` is the numerator of
//! the companion rational map `g = N/H`.

mod table1;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem, FieldError};
use crate::gf2poly::BinPoly;

pub use table1::{
    all_row_matches, match_row, resolve_registry, table1_registry, PrintedCondition, ResolvedRow, Table1Row,
};

/// Largest accepted `i`, `j`; keeps `H` to a few thousand words.
pub const MAX_SHIFT: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown class {0:?}; expected A, B or C")]
    UnknownClass(String),
    #[error("exponent shift {0} outside 1..={MAX_SHIFT}")]
    ShiftOutOfRange(u32),
    #[error("field has no subfield structure")]
    NoSubfield,
    #[error("invalid pentanomial shape: {0}")]
    BadShape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    A,
    B,
    C,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::A, Class::B, Class::C];

    /// Whether `H` is unchanged by swapping `Q1` and `Q2`.
    pub fn is_symmetric(self) -> bool {
        matches!(self, Class::A | Class::C)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Class::A => "A",
            Class::B => "B",
            Class::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Class {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Class::A),
            "B" | "b" => Ok(Class::B),
            "C" | "c" => Ok(Class::C),
            other => Err(FamilyError::UnknownClass(other.to_string())),
        }
    }
}

/// A member of one of the three classes, fixed by `(class, i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub class: Class,
    pub i: u32,
    pub j: u32,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(i={}, j={})", self.class, self.i, self.j)
    }
}

impl FamilySpec {
    pub fn new(class: Class, i: u32, j: u32) -> Result<Self, FamilyError> {
        for s in [i, j] {
            if !(1..=MAX_SHIFT).contains(&s) {
                return Err(FamilyError::ShiftOutOfRange(s));
            }
        }
        Ok(Self { class, i, j })
    }

    /// Every spec with `1 <= i, j <= max` in (class, i, j) order.
    pub fn grid(max: u32) -> impl Iterator<Item = FamilySpec> {
        Class::ALL.into_iter().flat_map(move |class| {
            (1..=max).flat_map(move |i| (1..=max).map(move |j| FamilySpec { class, i, j }))
        })
    }

    pub fn q1(&self) -> u64 {
        1 << self.i
    }

    pub fn q2(&self) -> u64 {
        1 << self.j
    }

    pub fn t(&self) -> u64 {
        self.q1() + self.q2() + 1
    }

    /// The same spec with `i` and `j` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            class: self.class,
            i: self.j,
            j: self.i,
        }
    }

    /// Exponents of the terms of `H` before char-2 cancellation.
    fn raw_h_terms(&self) -> [u64; 5] {
        let (a, b) = (self.q1(), self.q2());
        match self.class {
            Class::A => [a + b, a + 1, b + 1, 1, 0],
            Class::B => [a + b, a + 1, a, b + 1, 0],
            Class::C => [a + b + 1, a, b, 1, 0],
        }
    }

    /// `H(x)`; coinciding exponents cancel.
    pub fn h_poly(&self) -> BinPoly {
        BinPoly::from_exponents(self.raw_h_terms().map(|e| e as usize))
    }

    /// `N(x) = x^t H(1/x)`.
    pub fn n_poly(&self) -> BinPoly {
        self.h_poly()
            .reverse(self.t() as usize)
            .expect("deg H never exceeds t")
    }

    /// Exponents of `H` after cancellation, descending.
    pub fn h_exponents(&self) -> Vec<u64> {
        let mut e: Vec<u64> = self.h_poly().exponents().into_iter().map(|e| e as u64).collect();
        e.reverse();
        e
    }

    /// Exponents of `f` as pairs `(a, b)` meaning `x^{a q + b}`, sorted
    /// descending.
    pub fn exponent_pairs(&self) -> Vec<(u64, u64)> {
        let t = self.t();
        self.h_exponents().into_iter().map(|k| (k, t - k)).collect()
    }

    /// Exponents of `f` with `q = 2^m` substituted, sorted descending.
    pub fn f_exponents(&self, m: u32) -> Vec<u128> {
        exponents_at(&self.exponent_pairs(), m)
    }

    /// `f(x)` as a sum of monomials.
    pub fn eval_f<'a>(&self, ctx: &'a FieldCtx, x: FieldElem<'a>) -> Result<FieldElem<'a>, FamilyError> {
        let m = ctx.subfield_m().ok_or(FamilyError::NoSubfield)?;
        ctx.check_elem(x)?;
        let v = self
            .f_exponents(m)
            .into_iter()
            .fold(0u64, |acc, e| acc ^ ctx.pow_raw(x.bits(), e));
        Ok(ctx.elem(v))
    }

    /// `f(x)` as `x^t H(x^{q-1})`.
    pub fn eval_f_via_h<'a>(
        &self,
        ctx: &'a FieldCtx,
        x: FieldElem<'a>,
    ) -> Result<FieldElem<'a>, FamilyError> {
        let q = ctx.q().map_err(|_| FamilyError::NoSubfield)?;
        ctx.check_elem(x)?;
        if x.is_zero() {
            return Ok(ctx.zero());
        }
        let y = x.pow(q as u128 - 1);
        Ok(x.pow(self.t() as u128) * self.h_poly().eval(y))
    }

    /// The four-shift shape of this spec, when no terms cancel.
    pub fn general_shape(&self) -> Option<GeneralPentanomial> {
        let e = self.h_exponents();
        if e.len() != 5 || *e.last()? != 0 {
            return None;
        }
        let r = [e[3], e[2], e[1], e[0]].map(|v| v as u32);
        GeneralPentanomial::new(self.t() as u32, r).ok()
    }

    /// Whether `gcd(H, N) = 1`.
    pub fn gcd_condition(&self) -> bool {
        self.h_poly()
            .gcd(&self.n_poly())
            .expect("H has constant term or is nonzero")
            .is_one()
    }
}

/// `x^t + x^{r1(q-1)+t} + ... + x^{r4(q-1)+t}` with `1 <= r1 < ... < r4 <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneralPentanomial {
    pub t: u32,
    pub r: [u32; 4],
}

impl GeneralPentanomial {
    pub fn new(t: u32, r: [u32; 4]) -> Result<Self, FamilyError> {
        if t == 0 {
            return Err(FamilyError::BadShape("t must be positive".into()));
        }
        if r[0] < 1 || r[3] > t || !r.windows(2).all(|w| w[0] < w[1]) {
            return Err(FamilyError::BadShape(format!(
                "need 1 <= r1 < r2 < r3 < r4 <= {t}, got {r:?}"
            )));
        }
        Ok(Self { t, r })
    }

    /// Shape whose `f` has the given symbolic exponents `(a, b)` ~ `a q + b`,
    /// or `None` when the pairs do not come from a single `t`.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Option<Self> {
        let t = pairs.iter().find(|p| p.0 == 0)?.1;
        if pairs.len() != 5 || pairs.iter().any(|&(a, b)| a + b != t) {
            return None;
        }
        let mut r: Vec<u32> = pairs.iter().filter(|p| p.0 != 0).map(|p| p.0 as u32).collect();
        r.sort_unstable();
        Self::new(t as u32, r.try_into().ok()?).ok()
    }

    /// `1 + x^{r1} + x^{r2} + x^{r3} + x^{r4}`.
    pub fn h_poly(&self) -> BinPoly {
        BinPoly::from_exponents(std::iter::once(0).chain(self.r.iter().map(|&v| v as usize)))
    }

    /// `x^t + x^{t-r1} + ... + x^{t-r4}`.
    pub fn companion_poly(&self) -> BinPoly {
        self.h_poly().reverse(self.t as usize).expect("r4 <= t")
    }

    /// The sieve condition `gcd(H, x^t H(1/x)) = 1`.
    pub fn gcd_condition(&self) -> bool {
        self.h_poly()
            .gcd(&self.companion_poly())
            .expect("H is nonzero")
            .is_one()
    }

    /// Symbolic exponents `(a, b)` ~ `a q + b`, sorted descending.
    pub fn exponent_pairs(&self) -> Vec<(u64, u64)> {
        let t = self.t as u64;
        let mut p: Vec<(u64, u64)> = std::iter::once((0, t))
            .chain(self.r.iter().map(|&r| (r as u64, t - r as u64)))
            .collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn f_exponents(&self, m: u32) -> Vec<u128> {
        exponents_at(&self.exponent_pairs(), m)
    }
}

impl fmt::Display for GeneralPentanomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.r;
        write!(f, "t={}, r=({a},{b},{c},{d})", self.t)
    }
}

/// `a q + b` at `q = 2^m`, sorted descending.
pub fn exponents_at(pairs: &[(u64, u64)], m: u32) -> Vec<u128> {
    let q = 1u128 << m;
    let mut e: Vec<u128> = pairs.iter().map(|&(a, b)| a as u128 * q + b as u128).collect();
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Render symbolic exponents as `x^{96q+1}+...`.
pub fn format_pairs(pairs: &[(u64, u64)]) -> String {
    pairs
        .iter()
        .map(|&(a, b)| {
            let qa = match a {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("{a}q"),
            };
            let body = match (qa.is_empty(), b) {
                (true, _) => b.to_string(),
                (false, 0) => qa,
                (false, _) => format!("{qa}+{b}"),
            };
            format!("x^{{{body}}}")
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(c: Class, i: u32, j: u32) -> FamilySpec {
        FamilySpec::new(c, i, j).unwrap()
    }

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn h_polynomials() {
        assert_eq!(spec(Class::A, 3, 1).h_poly(), p("x^10+x^9+x^3+x+1"));
        assert_eq!(spec(Class::A, 1, 1).h_poly(), p("x^4+x+1"));
        assert_eq!(spec(Class::B, 5, 6).h_poly(), p("x^96+x^65+x^33+x^32+1"));
    }

    #[test]
    fn n_polynomials() {
        assert_eq!(spec(Class::A, 3, 1).n_poly(), p("x^11+x^10+x^8+x^2+x"));
        for i in 1..=6 {
            let s = spec(Class::C, i, i);
            let (q1, q2) = (s.q1() as usize, s.q2() as usize);
            let want = BinPoly::from_exponents([0, q1 + 1, q2 + 1, q1 + q2, q1 + q2 + 1]);
            assert_eq!(s.n_poly(), want);
        }
        for s in FamilySpec::grid(6).filter(|s| s.i != s.j) {
            assert_eq!(s.n_poly().degree(), Some(s.t() as usize), "{s}");
        }
    }

    #[test]
    fn symbolic_exponents() {
        assert_eq!(
            spec(Class::B, 5, 6).exponent_pairs(),
            vec![(96, 1), (65, 32), (33, 64), (32, 65), (0, 97)]
        );
        assert_eq!(
            spec(Class::A, 3, 1).exponent_pairs(),
            vec![(10, 1), (9, 2), (3, 8), (1, 10), (0, 11)]
        );
        assert_eq!(
            spec(Class::C, 4, 2).exponent_pairs(),
            vec![(21, 0), (16, 5), (4, 17), (1, 20), (0, 21)]
        );
        assert_eq!(spec(Class::A, 3, 1).f_exponents(2), vec![41, 38, 20, 14, 11]);
        assert_eq!(
            format_pairs(&spec(Class::C, 4, 2).exponent_pairs()),
            "x^{21q}+x^{16q+5}+x^{4q+17}+x^{q+20}+x^{21}"
        );
    }

    #[test]
    fn eval_routes_agree_on_gf16() {
        let ctx = FieldCtx::tower(2).unwrap();
        let s = spec(Class::A, 3, 1);
        for x in ctx.elements() {
            assert_eq!(s.eval_f(&ctx, x).unwrap(), s.eval_f_via_h(&ctx, x).unwrap());
        }
        assert!(s.eval_f(&ctx, ctx.zero()).unwrap().is_zero());
        assert!(s.eval_f(&ctx, ctx.one()).unwrap().is_one());
    }

    #[test]
    fn eval_requires_tower_and_matching_field() {
        let plain = FieldCtx::new(4, None).unwrap();
        let s = spec(Class::B, 1, 2);
        assert_eq!(s.eval_f(&plain, plain.one()), Err(FamilyError::NoSubfield));
        let ctx = FieldCtx::tower(2).unwrap();
        let other = FieldCtx::tower(3).unwrap();
        assert!(matches!(
            s.eval_f(&ctx, other.one()),
            Err(FamilyError::Field(FieldError::ContextMismatch))
        ));
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            FamilySpec::new(Class::A, 0, 1),
            Err(FamilyError::ShiftOutOfRange(0))
        );
        assert_eq!(
            FamilySpec::new(Class::A, 1, 17),
            Err(FamilyError::ShiftOutOfRange(17))
        );
        assert!("D".parse::<Class>().is_err());
        assert_eq!("b".parse::<Class>().unwrap(), Class::B);
        assert_eq!(FamilySpec::grid(8).count(), 192);
    }

    #[test]
    fn gcd_sieve_on_known_shapes() {
        let row2 = GeneralPentanomial::new(11, [1, 3, 9, 10]).unwrap();
        assert!(row2.gcd_condition());
        let row1 = GeneralPentanomial::new(9, [3, 5, 7, 8]).unwrap();
        assert!(row1.gcd_condition());
        // H_B(2,2) collapses to x^8+x^4+1 = Q^4, so N and H share Q^4
        assert!(!spec(Class::B, 2, 2).gcd_condition());
        assert_eq!(spec(Class::B, 2, 2).general_shape(), None);
        assert_eq!(spec(Class::A, 3, 1).general_shape(), Some(row2));
    }

    #[test]
    fn shape_validation_and_pairs() {
        assert!(GeneralPentanomial::new(9, [3, 3, 7, 8]).is_err());
        assert!(GeneralPentanomial::new(9, [0, 3, 7, 8]).is_err());
        assert!(GeneralPentanomial::new(9, [1, 3, 7, 10]).is_err());
        let g = GeneralPentanomial::new(9, [3, 5, 7, 8]).unwrap();
        assert_eq!(g.exponent_pairs(), vec![(8, 1), (7, 2), (5, 4), (3, 6), (0, 9)]);
        assert_eq!(GeneralPentanomial::from_pairs(&g.exponent_pairs()), Some(g));
    }
}
