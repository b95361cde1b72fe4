//! Closed-form predictions for the three classes.
//!
//! `gcd(N, H) = Q^r` for an integer `r` read off the parities of `i`, `j`;
//! with it, `f` permutes GF(q^2) iff
//!
//! * `m` odd: `r = 0` and `gcd(t, q - 1) = 1`;
//! * `m` even: `gcd(t, q - 1) = 1` and `gcd(t - 2r, q + 1) = 1`.
//!
//! The printed `r` tables carry two slips (the first `r_A` line and a
//! missing both-even `r_C` line). [`r_closed_form`] uses the corrected total
//! tables and [`r_oracle`] recomputes `r` from the actual gcd.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::{Class, FamilySpec};
use crate::gf2poly::BinPoly;
use crate::nt;

/// Largest extension degree `m` handled with exact 128-bit gcds.
pub const MAX_M: u32 = 64;
/// Upper bound on the modulus of a derived m-condition.
pub const MAX_CONDITION_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("ord2_mod needs an odd modulus above 1, got {0}")]
    BadModulus(u64),
    #[error("m = {0} outside 1..={MAX_M}")]
    MOutOfRange(u32),
    #[error("gcd(N, H) = {gcd} for {spec} is not a power of Q(x)")]
    NotAQPower { spec: FamilySpec, gcd: BinPoly },
    #[error("condition modulus {0} exceeds {MAX_CONDITION_MODULUS}")]
    ModulusTooLarge(u64),
}

/// Least `e > 0` with `2^e = 1 (mod k)`.
pub fn ord2_mod(k: u64) -> Result<u64, TheoryError> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(TheoryError::BadModulus(k));
    }
    Ok(nt::multiplicative_order(2, k).expect("2 is a unit modulo odd k"))
}

/// `r` from the parity case analysis.
pub fn r_closed_form(s: &FamilySpec) -> u64 {
    let (q1, q2) = (s.q1(), s.q2());
    let (i_odd, j_odd) = (s.i % 2 == 1, s.j % 2 == 1);
    // the two mixed rows shared by all classes
    let low_first = if q1 <= q2 { q1 } else { q2 + 1 };
    let high_first = if q1 < q2 { q1 + 1 } else { q2 };
    match (s.class, i_odd, j_odd) {
        (Class::A, true, true) => 0,
        (Class::A, false, false) => 1,
        (Class::A, false, true) => low_first,
        (Class::A, true, false) => high_first,

        (Class::B, true, false) => 0,
        (Class::B, false, true) => 1,
        (Class::B, false, false) => low_first,
        (Class::B, true, true) => high_first,

        (Class::C, false, false) => 0,
        (Class::C, true, true) => 1,
        (Class::C, true, false) => low_first,
        (Class::C, false, true) => high_first,
    }
}

/// `r` as the Q-multiplicity of `gcd(N, H)`, checking that the gcd is a
/// pure power of `Q`.
pub fn r_oracle(s: &FamilySpec) -> Result<u64, TheoryError> {
    let g = s.n_poly().gcd(&s.h_poly()).expect("H is nonzero");
    let r = g.q_multiplicity().expect("gcd is nonzero");
    if BinPoly::q_poly().pow(r as u64) != g {
        return Err(TheoryError::NotAQPower { spec: *s, gcd: g });
    }
    Ok(r as u64)
}

/// Whether `H` vanishes somewhere on the unit circle of GF(2^{2m}).
pub fn h_unit_roots_exist(s: &FamilySpec, m: u32) -> bool {
    m % 2 == 1 && r_closed_form(s) > 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    OddM,
    EvenM,
}

impl Serialize for Branch {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Branch::OddM => "m-odd case i",
            Branch::EvenM => "m-even case ii",
        })
    }
}

/// Predicted permutation status together with the quantities it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub spec: FamilySpec,
    pub m: u32,
    pub t: u64,
    pub predicted: bool,
    pub branch: Branch,
    pub r: u64,
    /// `gcd(t, q - 1)`.
    pub gcd1: u128,
    /// `gcd(t - 2r, q + 1)`, even `m` only.
    pub gcd2: Option<u128>,
    /// `r = 0`, which the odd branch requires.
    pub parity_ok: bool,
}

pub fn theorem_verdict(s: &FamilySpec, m: u32) -> Result<Verdict, TheoryError> {
    if !(1..=MAX_M).contains(&m) {
        return Err(TheoryError::MOutOfRange(m));
    }
    let q = 1u128 << m;
    let t = s.t();
    let r = r_closed_form(s);
    let gcd1 = nt::gcd_u128(t as u128, q - 1);
    let parity_ok = r == 0;
    let (branch, gcd2, predicted) = if m % 2 == 1 {
        (Branch::OddM, None, parity_ok && gcd1 == 1)
    } else {
        let g2 = nt::gcd_u128((t - 2 * r) as u128, q + 1);
        (Branch::EvenM, Some(g2), gcd1 == 1 && g2 == 1)
    };
    Ok(Verdict {
        spec: *s,
        m,
        t,
        predicted,
        branch,
        r,
        gcd1,
        gcd2,
        parity_ok,
    })
}

/// A set of admissible `m`, periodic with period `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCondition {
    pub modulus: u64,
    pub allowed: BTreeSet<u64>,
}

impl MCondition {
    /// Residues `k` whose representative (`k`, or `modulus` for `k = 0`)
    /// satisfies `pred`.
    pub fn from_predicate(modulus: u64, pred: impl Fn(u64) -> bool) -> Self {
        let allowed = (0..modulus)
            .filter(|&k| pred(if k == 0 { modulus } else { k }))
            .collect();
        Self { modulus, allowed }
    }

    pub fn contains(&self, m: u64) -> bool {
        self.allowed.contains(&(m % self.modulus))
    }

    /// Same set of `m` with the smallest period.
    pub fn reduced(&self) -> Self {
        for d in nt::divisors(self.modulus) {
            let periodic = (0..self.modulus).all(|k| self.contains(k) == self.contains(k % d));
            if periodic {
                return Self {
                    modulus: d,
                    allowed: self.allowed.iter().filter(|&&k| k < d).copied().collect(),
                };
            }
        }
        self.clone()
    }

    /// Whether both describe the same set of positive integers.
    pub fn same_set(&self, other: &Self) -> bool {
        let l = nt::lcm(self.modulus, other.modulus);
        (1..=l).all(|m| self.contains(m) == other.contains(m))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let l = nt::lcm(self.modulus, other.modulus);
        Self::from_predicate(l, |m| self.contains(m) && other.contains(m)).reduced()
    }

    pub fn text(&self) -> String {
        let md = self.modulus;
        let all: BTreeSet<u64> = (0..md).collect();
        let excluded: Vec<u64> = all.difference(&self.allowed).copied().collect();
        let odd_only = md.is_multiple_of(2) && self.allowed.iter().all(|k| k % 2 == 1);
        let even_excluded = (0..md).filter(|k| k % 2 == 0).count();
        if self.allowed.is_empty() {
            return "no m".into();
        }
        if excluded.is_empty() {
            return "all m".into();
        }
        if md == 2 && odd_only {
            return "m is odd".into();
        }
        if let [k] = excluded.as_slice() {
            return format!("m ≢ {k} (mod {md})");
        }
        if odd_only && excluded.len() == even_excluded + 1 {
            let k = excluded
                .iter()
                .find(|k| *k % 2 == 1)
                .expect("one odd residue excluded");
            return format!("m is odd and m ≢ {k} (mod {md})");
        }
        let list: Vec<String> = self.allowed.iter().map(|k| k.to_string()).collect();
        format!("m mod {md} ∈ {{{}}}", list.join(", "))
    }
}

impl fmt::Display for MCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for MCondition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MCondition", 3)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("allowed", &self.allowed)?;
        st.serialize_field("text", &self.text())?;
        st.end()
    }
}

/// Residue description of every `m` for which [`theorem_verdict`] predicts a
/// permutation, derived without evaluating `2^m`:
/// `p | 2^m - 1` iff `ord_p(2) | m`, and `p | 2^m + 1` iff `ord_p(2)` is even
/// and `m = ord_p(2)/2 (mod ord_p(2))`.
pub fn m_condition(s: &FamilySpec) -> Result<MCondition, TheoryError> {
    let t = s.t();
    let r = r_closed_form(s);
    let order_of = |p: u64| ord2_mod(p).expect("odd prime");
    let t_orders: Vec<u64> = nt::prime_divisors(t).into_iter().map(order_of).collect();
    let u_orders: Vec<u64> = nt::prime_divisors(t - 2 * r).into_iter().map(order_of).collect();
    let mut modulus = 2u64;
    for &o in t_orders.iter().chain(&u_orders) {
        modulus = nt::lcm(modulus, o);
        if modulus > MAX_CONDITION_MODULUS {
            return Err(TheoryError::ModulusTooLarge(modulus));
        }
    }
    let divides_q_minus_1 = |o: u64, m: u64| m.is_multiple_of(o);
    let divides_q_plus_1 = |o: u64, m: u64| o.is_multiple_of(2) && m % o == o / 2;
    let cond = MCondition::from_predicate(modulus, |m| {
        let gcd1_ok = t_orders.iter().all(|&o| !divides_q_minus_1(o, m));
        if m % 2 == 1 {
            r == 0 && gcd1_ok
        } else {
            gcd1_ok && u_orders.iter().all(|&o| !divides_q_plus_1(o, m))
        }
    });
    Ok(cond.reduced())
}

/// Outcome of checking one polynomial identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub spec: FamilySpec,
    /// Exponent `k` of the right-hand side `Q^k`.
    pub q_power: u64,
    pub holds: bool,
}

/// `N'H + NH' = Q^{Q1+Q2}` in GF(2)[x].
pub fn check_identity_derivative(s: &FamilySpec) -> IdentityCheck {
    let (n, h) = (s.n_poly(), s.h_poly());
    let lhs = n.derivative().mul(&h).add(&n.mul(&h.derivative()));
    let k = s.t() - 1;
    IdentityCheck {
        spec: *s,
        q_power: k,
        holds: lhs == BinPoly::q_poly().pow(k),
    }
}

/// `N^2 + NH + H^2 = Q^{Q1+Q2+1}`, i.e. `Q(g) H^2 = Q^t` cleared of
/// denominators.
pub fn check_identity_q(s: &FamilySpec) -> IdentityCheck {
    let (n, h) = (s.n_poly(), s.h_poly());
    let lhs = n.square().add(&n.mul(&h)).add(&h.square());
    let k = s.t();
    IdentityCheck {
        spec: *s,
        q_power: k,
        holds: lhs == BinPoly::q_poly().pow(k),
    }
}

pub fn verify_identity_derivative(s: &FamilySpec) -> bool {
    check_identity_derivative(s).holds
}

pub fn verify_identity_q(s: &FamilySpec) -> bool {
    check_identity_q(s).holds
}

/// A place where the printed `r` table differs from the corrected one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedTableNote {
    pub spec: FamilySpec,
    pub printed: Option<u64>,
    pub corrected: u64,
    pub note: &'static str,
}

/// `r` as literally printed, where the printed table assigns a value.
///
/// The printed `r_A` table opens with `0 : i odd, j even`, which collides
/// with its own fifth and sixth lines; the printed `r_C` table has no line
/// for `i, j` both even. Lines are tried top to bottom.
pub fn r_printed(s: &FamilySpec) -> Option<u64> {
    let (q1, q2) = (s.q1(), s.q2());
    let (i0, j0) = (s.i % 2, s.j % 2);
    match s.class {
        Class::A => match (i0, j0) {
            (1, 0) => Some(0),
            (0, 0) => Some(1),
            (0, 1) => Some(if q1 <= q2 { q1 } else { q2 + 1 }),
            _ => None,
        },
        Class::B => Some(r_closed_form(s)),
        Class::C => match (i0, j0) {
            (1, 1) => Some(1),
            (1, 0) => Some(if q1 <= q2 { q1 } else { q2 + 1 }),
            (0, 1) => Some(if q1 < q2 { q1 + 1 } else { q2 }),
            _ => None,
        },
    }
}

/// Every spec in the grid where [`r_printed`] and [`r_closed_form`] differ.
pub fn printed_table_discrepancies(max: u32) -> Vec<PrintedTableNote> {
    FamilySpec::grid(max)
        .filter_map(|s| {
            let printed = r_printed(&s);
            let corrected = r_closed_form(&s);
            if printed == Some(corrected) {
                return None;
            }
            let note = match s.class {
                Class::A if printed.is_none() => "r_A: no printed line for i, j both odd (proof gives 0)",
                Class::A => "r_A: first printed line (i odd, j even -> 0) shadows the Q1+1 / Q2 lines",
                _ => "r_C: no printed line for i, j both even (proof gives 0)",
            };
            Some(PrintedTableNote {
                spec: s,
                printed,
                corrected,
                note,
            })
        })
        .collect()
}
