//! The seventeen known permutation pentanomials, stored as literal data.
//!
//! Each row keeps the exponent pattern, the printed condition and the
//! printed class/`Q1`/`Q2` columns exactly as published. Resolution to a
//! [`FamilySpec`] is computed by exponent matching, never hard-coded.

use serde::Serialize;

use super::{Class, FamilySpec};
use crate::theory::MCondition;

/// A condition on `m` in one of the forms used by the published table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum PrintedCondition {
    Odd,
    NotCongruent { residue: u64, modulus: u64 },
    CoprimeTo { k: u64 },
    OddAndNotCongruent { residue: u64, modulus: u64 },
}

impl PrintedCondition {
    pub fn holds(&self, m: u64) -> bool {
        match *self {
            Self::Odd => m % 2 == 1,
            Self::NotCongruent { residue, modulus } => m % modulus != residue,
            Self::CoprimeTo { k } => crate::nt::gcd(m, k) == 1,
            Self::OddAndNotCongruent { residue, modulus } => m % 2 == 1 && m % modulus != residue,
        }
    }

    /// The period of [`holds`](Self::holds).
    pub fn period(&self) -> u64 {
        match *self {
            Self::Odd => 2,
            Self::NotCongruent { modulus, .. } => modulus,
            Self::CoprimeTo { k } => k,
            Self::OddAndNotCongruent { modulus, .. } => crate::nt::lcm(2, modulus),
        }
    }

    pub fn to_mcondition(&self) -> MCondition {
        MCondition::from_predicate(self.period(), |m| self.holds(m)).reduced()
    }

    pub fn text(&self) -> String {
        match *self {
            Self::Odd => "m is odd".into(),
            Self::NotCongruent { residue, modulus } => format!("m ≢ {residue} (mod {modulus})"),
            Self::CoprimeTo { k } => format!("gcd(m,{k})=1"),
            Self::OddAndNotCongruent { residue, modulus } => {
                format!("m is odd and m ≢ {residue} (mod {modulus})")
            }
        }
    }
}

/// One published row.
#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub row_no: u32,
    /// `(a, b)` meaning `x^{a q + b}`, in printed order.
    pub pairs: [(u64, u64); 5],
    pub condition: PrintedCondition,
    pub starred: bool,
    pub printed_class: Option<Class>,
    /// Printed `Q1`, `Q2` columns as powers of two (`Q = 2^e`).
    pub printed_q_exponents: Option<(u32, u32)>,
    pub printed_t: Option<u64>,
}

impl Table1Row {
    pub fn t(&self) -> u64 {
        self.pairs.iter().find(|p| p.0 == 0).map_or(0, |p| p.1)
    }

    pub fn sorted_pairs(&self) -> Vec<(u64, u64)> {
        let mut p = self.pairs.to_vec();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

const fn row(
    row_no: u32,
    pairs: [(u64, u64); 5],
    condition: PrintedCondition,
    star: Option<(Class, u32, u32, u64)>,
) -> Table1Row {
    match star {
        Some((class, e1, e2, t)) => Table1Row {
            row_no,
            pairs,
            condition,
            starred: true,
            printed_class: Some(class),
            printed_q_exponents: Some((e1, e2)),
            printed_t: Some(t),
        },
        None => Table1Row {
            row_no,
            pairs,
            condition,
            starred: false,
            printed_class: None,
            printed_q_exponents: None,
            printed_t: None,
        },
    }
}

use PrintedCondition::{CoprimeTo, NotCongruent, Odd, OddAndNotCongruent};

const fn nc(residue: u64, modulus: u64) -> PrintedCondition {
    NotCongruent { residue, modulus }
}

static REGISTRY: [Table1Row; 17] = [
    row(1, [(8, 1), (7, 2), (5, 4), (3, 6), (0, 9)], Odd, None),
    row(
        2,
        [(10, 1), (9, 2), (3, 8), (1, 10), (0, 11)],
        nc(0, 10),
        Some((Class::A, 3, 1, 11)),
    ),
    row(
        3,
        [(10, 1), (8, 3), (6, 5), (4, 7), (0, 11)],
        CoprimeTo { k: 5 },
        None,
    ),
    row(
        4,
        [(12, 1), (9, 4), (8, 5), (5, 8), (0, 13)],
        nc(0, 6),
        Some((Class::B, 3, 2, 13)),
    ),
    row(
        5,
        [(18, 1), (17, 2), (3, 16), (2, 17), (0, 19)],
        nc(0, 18),
        Some((Class::B, 1, 4, 19)),
    ),
    row(
        6,
        [(21, 0), (16, 5), (4, 17), (1, 20), (0, 21)],
        nc(3, 6),
        Some((Class::C, 4, 2, 21)),
    ),
    row(
        7,
        [(22, 1), (18, 5), (8, 15), (4, 19), (0, 23)],
        CoprimeTo { k: 11 },
        None,
    ),
    row(
        8,
        [(24, 1), (17, 8), (9, 16), (8, 17), (0, 25)],
        Odd,
        Some((Class::B, 3, 4, 25)),
    ),
    row(
        9,
        [(34, 1), (33, 2), (3, 32), (1, 34), (0, 35)],
        OddAndNotCongruent {
            residue: 3,
            modulus: 6,
        },
        Some((Class::A, 5, 1, 35)),
    ),
    row(
        10,
        [(36, 1), (33, 4), (32, 5), (5, 32), (0, 37)],
        nc(0, 18),
        Some((Class::B, 2, 5, 37)),
    ),
    row(
        11,
        [(40, 1), (33, 8), (9, 32), (1, 40), (0, 41)],
        nc(0, 10),
        Some((Class::A, 5, 3, 41)),
    ),
    row(
        12,
        [(48, 1), (33, 16), (32, 17), (17, 32), (0, 49)],
        CoprimeTo { k: 3 },
        Some((Class::B, 5, 4, 49)),
    ),
    row(
        13,
        [(66, 1), (65, 2), (3, 64), (2, 65), (0, 67)],
        nc(0, 66),
        Some((Class::B, 1, 6, 67)),
    ),
    row(
        14,
        [(69, 0), (64, 5), (4, 65), (1, 68), (0, 69)],
        nc(11, 22),
        Some((Class::C, 6, 2, 69)),
    ),
    row(
        15,
        [(72, 1), (65, 8), (9, 64), (8, 65), (0, 73)],
        nc(0, 9),
        Some((Class::B, 3, 6, 73)),
    ),
    row(
        16,
        [(81, 0), (64, 17), (16, 65), (1, 80), (0, 81)],
        Odd,
        Some((Class::C, 6, 4, 81)),
    ),
    row(
        17,
        [(96, 1), (65, 32), (33, 64), (32, 65), (0, 97)],
        nc(0, 24),
        Some((Class::B, 6, 5, 97)),
    ),
];

/// All seventeen rows in published order.
pub fn table1_registry() -> &'static [Table1Row] {
    &REGISTRY
}

/// Search bound for row resolution.
const MATCH_SHIFT_MAX: u32 = 8;

/// Every `(class, i, j)` with `i, j <= 8` whose exponent multiset equals
/// the row's.
pub fn all_row_matches(row: &Table1Row) -> Vec<FamilySpec> {
    let want = row.sorted_pairs();
    FamilySpec::grid(MATCH_SHIFT_MAX)
        .filter(|s| s.exponent_pairs() == want)
        .collect()
}

/// The family a row belongs to, if any.
///
/// `H_A` and `H_C` are symmetric in `Q1`, `Q2`, so those rows match both
/// `(i, j)` and `(j, i)`; the representative with `i >= j` is returned.
pub fn match_row(row: &Table1Row) -> Option<FamilySpec> {
    let mut found: Vec<FamilySpec> = all_row_matches(row)
        .into_iter()
        .map(|s| {
            if s.class.is_symmetric() && s.i < s.j {
                s.swapped()
            } else {
                s
            }
        })
        .collect();
    found.sort();
    found.dedup();
    match found.as_slice() {
        [one] => Some(*one),
        _ => None,
    }
}

/// A row together with its computed resolution.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedRow {
    pub row: Table1Row,
    pub resolved: Option<FamilySpec>,
    /// Printed `Q1`/`Q2` columns are the resolved `(j, i)` rather than `(i, j)`.
    pub q_columns_swapped: bool,
    /// Printed class disagrees with the resolved class.
    pub class_mismatch: bool,
}

pub fn resolve_registry() -> Vec<ResolvedRow> {
    table1_registry()
        .iter()
        .map(|row| {
            let resolved = match_row(row);
            let (mut swapped, mut class_mismatch) = (false, false);
            if let (Some(s), Some((e1, e2))) = (resolved, row.printed_q_exponents) {
                swapped = (e1, e2) != (s.i, s.j) && (e1, e2) == (s.j, s.i);
                class_mismatch = row.printed_class != Some(s.class);
            }
            ResolvedRow {
                row: row.clone(),
                resolved,
                q_columns_swapped: swapped,
                class_mismatch,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starred_rows_resolve_uniquely() {
        for r in table1_registry() {
            let s = match_row(r);
            assert_eq!(s.is_some(), r.starred, "row {}", r.row_no);
            if let Some(s) = s {
                assert_eq!(Some(s.class), r.printed_class, "row {}", r.row_no);
                assert_eq!(Some(s.t()), r.printed_t, "row {}", r.row_no);
                let n = all_row_matches(r).len();
                assert_eq!(
                    n,
                    if s.class.is_symmetric() && s.i != s.j {
                        2
                    } else {
                        1
                    }
                );
            }
        }
    }

    #[test]
    fn named_resolutions() {
        let reg = table1_registry();
        assert_eq!(
            match_row(&reg[1]),
            Some(FamilySpec {
                class: Class::A,
                i: 3,
                j: 1
            })
        );
        assert_eq!(
            match_row(&reg[16]),
            Some(FamilySpec {
                class: Class::B,
                i: 5,
                j: 6
            })
        );
        assert_eq!(match_row(&reg[6]), None);
        assert_eq!(match_row(&reg[0]), None);
        assert_eq!(match_row(&reg[2]), None);
    }

    #[test]
    fn column_order_flags() {
        let flagged: Vec<u32> = resolve_registry()
            .into_iter()
            .filter(|r| r.q_columns_swapped)
            .map(|r| r.row.row_no)
            .collect();
        assert_eq!(flagged, vec![10, 17]);
        assert!(resolve_registry().iter().all(|r| !r.class_mismatch));
    }

    #[test]
    fn exponents_distinct_and_t_consistent() {
        for r in table1_registry() {
            let t = r.t();
            assert!(r.pairs.iter().all(|&(a, b)| a + b == t), "row {}", r.row_no);
            for m in 1..=8 {
                let mut e = crate::families::exponents_at(&r.pairs, m);
                e.dedup();
                assert_eq!(e.len(), 5, "row {} m {m}", r.row_no);
            }
        }
    }

    #[test]
    fn printed_condition_text() {
        assert_eq!(table1_registry()[16].condition.text(), "m ≢ 0 (mod 24)");
        assert_eq!(
            table1_registry()[8].condition.text(),
            "m is odd and m ≢ 3 (mod 6)"
        );
        assert_eq!(table1_registry()[2].condition.text(), "gcd(m,5)=1");
    }
}
