//! Exhaustive ground truth: permutation sweeps over GF(q^2) and the unit
//! circle, ramification data of rational maps, and degree-one maps.

mod fpoly;
mod mobius;
mod rational;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::{exponents_at, FamilyError, FamilySpec};
use crate::field::{FieldCtx, FieldElem, FieldError};

pub use fpoly::FieldPoly;
pub use mobius::{
    bijects_mu_by_criteria, bijects_mu_by_enumeration, deg1_bijects_mu, deg1_mu_to_p1, mu_to_p1_by_criteria,
    mu_to_p1_by_enumeration, DegreeOneMap,
};
pub use rational::{
    branch_points, critical_point_residual, ramification_index, ramification_report, FieldRational,
    RamificationEntry, RationalMap,
};

/// Default bound on the extension degree `n = 2m` of an exhaustive sweep.
pub const DEFAULT_BRUTE_CAP: u32 = 24;

/// Largest `m` for which the unit circle is enumerated.
pub const MU_CAP: u32 = 20;

/// Largest `q + 1` for which degree-one criteria are cross-checked by enumeration.
pub const ENUMERATION_CHECK_CAP: u64 = 1 << 12;

// walk block length for the parallel sweep
const BLOCK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("GF(2^{n}) exceeds the exhaustive cap 2^{cap}")]
    FieldTooLarge { n: u32, cap: u32 },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("rational map is constant")]
    ConstantMap,
    #[error("degree-one map is degenerate (ad + bc = 0)")]
    Degenerate,
    #[error("criterion and enumeration disagree: {0}")]
    CriterionDisagreement(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// A point of the projective line over a concrete field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint<'a> {
    Finite(FieldElem<'a>),
    Infinity,
}

impl<'a> ProjPoint<'a> {
    pub(crate) fn from_raw(ctx: &'a FieldCtx, v: Option<u64>) -> Self {
        v.map_or(Self::Infinity, |b| Self::Finite(ctx.elem(b)))
    }

    pub(crate) fn raw(&self) -> Option<u64> {
        match self {
            Self::Finite(x) => Some(x.bits()),
            Self::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }
}

impl fmt::Display for ProjPoint<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{x}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ProjPoint<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

fn check_cap(n: u32, cap: u32) -> Result<(), OracleError> {
    if n > cap {
        return Err(OracleError::FieldTooLarge { n, cap });
    }
    Ok(())
}

/// Whether `x -> sum x^e` permutes the field, by a full sweep with a hit bitmap.
///
/// Runs in parallel when the current rayon pool has more than one thread;
/// the answer does not depend on the schedule.
pub fn exponents_permute(ctx: &FieldCtx, exps: &[u128]) -> bool {
    let order = ctx.group_order();
    let g = ctx.generator().bits();
    let red: Vec<u64> = exps.iter().map(|&e| (e % order as u128) as u64).collect();
    let steps: Vec<u64> = red.iter().map(|&e| ctx.pow_raw(g, e as u128)).collect();
    let at_zero = exps.iter().fold(0, |a, &e| a ^ ctx.pow_raw(0, e));
    let words = (ctx.size() as usize).div_ceil(64);
    if rayon::current_num_threads() > 1 && order > BLOCK {
        sweep_parallel(ctx, &red, &steps, at_zero, order, words)
    } else {
        sweep_serial(ctx, &steps, at_zero, order, words)
    }
}

fn sweep_serial(ctx: &FieldCtx, steps: &[u64], at_zero: u64, order: u64, words: usize) -> bool {
    let mut hit = vec![0u64; words];
    hit[(at_zero / 64) as usize] |= 1 << (at_zero % 64);
    let mut acc = vec![1u64; steps.len()];
    for _ in 0..order {
        let v = acc.iter().fold(0, |a, &c| a ^ c);
        let (w, b) = ((v / 64) as usize, v % 64);
        if hit[w] >> b & 1 == 1 {
            return false;
        }
        hit[w] |= 1 << b;
        for (c, &s) in acc.iter_mut().zip(steps) {
            *c = ctx.mul_raw(*c, s);
        }
    }
    true
}

fn sweep_parallel(
    ctx: &FieldCtx,
    red: &[u64],
    steps: &[u64],
    at_zero: u64,
    order: u64,
    words: usize,
) -> bool {
    let hit: Vec<AtomicU64> = (0..words).map(|_| AtomicU64::new(0)).collect();
    hit[(at_zero / 64) as usize].store(1 << (at_zero % 64), Ordering::Relaxed);
    let collided = AtomicBool::new(false);
    let g = ctx.generator().bits();
    let blocks = order.div_ceil(BLOCK);
    (0..blocks).into_par_iter().for_each(|blk| {
        if collided.load(Ordering::Relaxed) {
            return;
        }
        let start = blk * BLOCK;
        let end = (start + BLOCK).min(order);
        let mut acc: Vec<u64> = red
            .iter()
            .map(|&e| ctx.pow_raw(g, start as u128 * e as u128))
            .collect();
        for _ in start..end {
            let v = acc.iter().fold(0, |a, &c| a ^ c);
            let bit = 1u64 << (v % 64);
            if hit[(v / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit != 0 {
                collided.store(true, Ordering::Relaxed);
                return;
            }
            for (c, &s) in acc.iter_mut().zip(steps) {
                *c = ctx.mul_raw(*c, s);
            }
        }
    });
    !collided.load(Ordering::Relaxed)
}

/// Sweep `sum x^{a q + b}` over GF(2^{2m}).
pub fn pairs_permute(pairs: &[(u64, u64)], m: u32, cap: u32) -> Result<bool, OracleError> {
    check_cap(2 * m, cap)?;
    let ctx = FieldCtx::tower(m)?;
    Ok(exponents_permute(&ctx, &exponents_at(pairs, m)))
}

/// Whether `f_s` permutes GF(2^{2m}), for `2m` up to [`DEFAULT_BRUTE_CAP`].
pub fn brute_is_permutation(s: &FamilySpec, m: u32) -> Result<bool, OracleError> {
    brute_is_permutation_capped(s, m, DEFAULT_BRUTE_CAP)
}

pub fn brute_is_permutation_capped(s: &FamilySpec, m: u32, cap: u32) -> Result<bool, OracleError> {
    pairs_permute(&s.exponent_pairs(), m, cap)
}

/// `g_s(x)` evaluated through the reduced form.
pub fn g_eval<'a>(s: &FamilySpec, ctx: &'a FieldCtx, x: FieldElem<'a>) -> Result<ProjPoint<'a>, OracleError> {
    ctx.subfield_m().ok_or(FieldError::NoSubfield)?;
    ctx.check_elem(x)?;
    let g = RationalMap::for_family(s).over(ctx)?;
    Ok(g.eval(ProjPoint::Finite(x)))
}

fn tower_for_mu(m: u32) -> Result<FieldCtx, OracleError> {
    if m > MU_CAP {
        return Err(OracleError::FieldTooLarge {
            n: 2 * m,
            cap: 2 * MU_CAP,
        });
    }
    Ok(FieldCtx::tower(m)?)
}

/// Whether `g_s` maps the unit circle of GF(2^{2m}) bijectively onto itself.
pub fn g_permutes_unit_circle(s: &FamilySpec, m: u32) -> Result<bool, OracleError> {
    let ctx = tower_for_mu(m)?;
    let g = RationalMap::for_family(s).over(&ctx)?;
    let mu: Vec<u64> = ctx.unit_circle()?.iter().map(|x| x.bits()).collect();
    let mut seen = vec![false; mu.len()];
    for &x in &mu {
        let Some(y) = g.eval_raw(Some(x)) else {
            return Ok(false);
        };
        match mu.binary_search(&y) {
            Ok(k) if !seen[k] => seen[k] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Points of the unit circle where `H_s` vanishes, ascending.
pub fn h_roots_on_unit_circle(s: &FamilySpec, m: u32) -> Result<Vec<u64>, OracleError> {
    let ctx = tower_for_mu(m)?;
    let h = FieldPoly::from_binpoly(&ctx, &s.h_poly());
    Ok(ctx
        .unit_circle()?
        .iter()
        .map(|x| x.bits())
        .filter(|&x| h.eval(x) == 0)
        .collect())
}

/// The three-part criterion: `gcd(t, q-1) = 1`, `H` has no roots on the
/// unit circle, and `g` permutes the unit circle.
pub fn unit_circle_criterion(s: &FamilySpec, m: u32) -> Result<bool, OracleError> {
    let q = 1u64 << m;
    Ok(crate::nt::gcd(s.t(), q - 1) == 1
        && h_roots_on_unit_circle(s, m)?.is_empty()
        && g_permutes_unit_circle(s, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Class;

    fn spec(c: Class, i: u32, j: u32) -> FamilySpec {
        FamilySpec::new(c, i, j).unwrap()
    }

    #[test]
    fn harness_monomials() {
        for n in [2, 5, 8] {
            let ctx = FieldCtx::new(n, None).unwrap();
            assert!(exponents_permute(&ctx, &[2]));
        }
        let gf4 = FieldCtx::new(2, None).unwrap();
        assert!(!exponents_permute(&gf4, &[3]));
        // x^q + x is F_q-linear with kernel F_q
        let ctx = FieldCtx::tower(3).unwrap();
        assert!(!exponents_permute(&ctx, &[8, 1]));
    }

    #[test]
    fn row_two_shape_at_small_m() {
        let s = spec(Class::A, 3, 1);
        assert!(brute_is_permutation(&s, 2).unwrap());
        assert!(matches!(
            brute_is_permutation_capped(&s, 5, 8),
            Err(OracleError::FieldTooLarge { n: 10, cap: 8 })
        ));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for s in [spec(Class::A, 3, 1), spec(Class::B, 2, 4), spec(Class::C, 4, 2)] {
            for m in [7, 8] {
                let a = pool1.install(|| brute_is_permutation(&s, m).unwrap());
                let b = pool4.install(|| brute_is_permutation(&s, m).unwrap());
                assert_eq!(a, b, "{s} m={m}");
            }
        }
    }

    #[test]
    fn g_examples() {
        let ctx = FieldCtx::tower(2).unwrap();
        for s in FamilySpec::grid(3) {
            assert_eq!(
                g_eval(&s, &ctx, ctx.one()).unwrap(),
                ProjPoint::Finite(ctx.one()),
                "{s}"
            );
        }
        let s = spec(Class::A, 3, 1);
        for x in ctx.unit_circle().unwrap() {
            match g_eval(&s, &ctx, x).unwrap() {
                ProjPoint::Finite(y) => assert!(y.on_unit_circle().unwrap()),
                ProjPoint::Infinity => panic!("pole on the unit circle"),
            }
        }
        assert!(g_permutes_unit_circle(&s, 2).unwrap());
        assert!(g_permutes_unit_circle(&s, 5).unwrap());
        assert!(h_roots_on_unit_circle(&spec(Class::B, 2, 4), 4)
            .unwrap()
            .is_empty());
        let big = spec(Class::B, 5, 6);
        assert_eq!(
            g_permutes_unit_circle(&big, 12).unwrap(),
            crate::nt::gcd(97, 4097) == 1
        );
    }
}
