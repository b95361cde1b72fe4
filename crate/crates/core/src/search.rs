//! Exhaustive search over general pentanomial shapes.
//!
//! Every shape `x^t + sum_k x^{r_k (q-1) + t}` with `4 <= t < t_max` and
//! `1 <= r1 < r2 < r3 < r4 <= t` is filtered by `gcd(H, x^t H(1/x)) = 1`
//! and then swept over GF(2^{2m}) for each requested `m`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::{exponents_at, table1_registry, GeneralPentanomial};
use crate::field::{FieldCtx, FieldError};
use crate::oracle::{exponents_permute, DEFAULT_BRUTE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("m = {m} needs GF(2^{n}), above the exhaustive cap 2^{cap}", n = 2 * m)]
    MTooLarge { m: u32, cap: u32 },
    #[error("m must be positive")]
    ZeroM,
    #[error("the set of m values is empty")]
    EmptyMSet,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Exclusive upper bound on `t`.
    pub t_max: u32,
    pub m_set: Vec<u32>,
    pub brute_cap: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            t_max: 30,
            m_set: vec![2, 3, 4, 5],
            brute_cap: DEFAULT_BRUTE_CAP,
        }
    }
}

impl SearchConfig {
    pub fn new(t_max: u32, m_set: impl IntoIterator<Item = u32>) -> Result<Self, SearchError> {
        let cfg = Self {
            t_max,
            m_set: m_set.into_iter().collect(),
            ..Self::default()
        };
        cfg.validated()
    }

    /// Sorts and dedups `m_set`, checking every `m` against the cap.
    pub fn validated(mut self) -> Result<Self, SearchError> {
        self.m_set.sort_unstable();
        self.m_set.dedup();
        if self.m_set.is_empty() {
            return Err(SearchError::EmptyMSet);
        }
        for &m in &self.m_set {
            if m == 0 {
                return Err(SearchError::ZeroM);
            }
            if 2 * m > self.brute_cap {
                return Err(SearchError::MTooLarge {
                    m,
                    cap: self.brute_cap,
                });
            }
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub shape: GeneralPentanomial,
    pub survived_m: Vec<u32>,
    /// Published row number with the same exponent pattern, if any.
    pub matched_row: Option<u32>,
}

/// All shapes with `4 <= t < t_max`, ordered by `(t, r)`.
pub fn shapes(t_max: u32) -> impl Iterator<Item = GeneralPentanomial> {
    (4..t_max).flat_map(|t| {
        (1..=t).flat_map(move |a| {
            (a + 1..=t).flat_map(move |b| {
                (b + 1..=t).flat_map(move |c| {
                    (c + 1..=t).map(move |d| {
                        GeneralPentanomial::new(t, [a, b, c, d]).expect("strictly increasing within 1..=t")
                    })
                })
            })
        })
    })
}

/// Shapes passing the gcd sieve that permute for at least one `m`, in `(t, r)` order.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<Candidate>, SearchError> {
    let cfg = cfg.clone().validated()?;
    let fields: Vec<(u32, FieldCtx)> = cfg
        .m_set
        .iter()
        .map(|&m| Ok((m, FieldCtx::tower(m)?)))
        .collect::<Result<_, FieldError>>()?;
    let sieved: Vec<GeneralPentanomial> = shapes(cfg.t_max).filter(|s| s.gcd_condition()).collect();
    let found = sieved
        .par_iter()
        .filter_map(|shape| {
            let pairs = shape.exponent_pairs();
            let survived_m: Vec<u32> = fields
                .iter()
                .filter(|(m, ctx)| exponents_permute(ctx, &exponents_at(&pairs, *m)))
                .map(|(m, _)| *m)
                .collect();
            (!survived_m.is_empty()).then_some(Candidate {
                shape: *shape,
                survived_m,
                matched_row: None,
            })
        })
        .collect();
    Ok(found)
}

/// Sets `matched_row` by comparing exponent patterns with the published rows.
pub fn match_candidates(mut cands: Vec<Candidate>) -> Vec<Candidate> {
    let rows: Vec<(u32, Vec<(u64, u64)>)> = table1_registry()
        .iter()
        .map(|r| (r.row_no, r.sorted_pairs()))
        .collect();
    for c in &mut cands {
        let pairs = c.shape.exponent_pairs();
        c.matched_row = rows.iter().find(|(_, p)| *p == pairs).map(|(n, _)| *n);
    }
    cands
}

fn join_m(ms: &[u32], sep: &str) -> String {
    ms.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

pub fn to_jsonl(cands: &[Candidate]) -> String {
    cands
        .iter()
        .map(|c| serde_json::to_string(c).expect("candidate serializes") + "\n")
        .collect()
}

pub fn to_csv(cands: &[Candidate]) -> String {
    let mut out = String::from("t,r1,r2,r3,r4,survived_m,matched_row\n");
    for c in cands {
        let [a, b, d, e] = c.shape.r;
        let row = c.matched_row.map_or(String::new(), |r| r.to_string());
        let _ = writeln!(
            out,
            "{},{a},{b},{d},{e},{},{row}",
            c.shape.t,
            join_m(&c.survived_m, ";")
        );
    }
    out
}

/// A markdown summary: run metadata, counts, and the matched rows.
pub fn summary_markdown(cfg: &SearchConfig, cands: &[Candidate]) -> String {
    let mut out = String::from("# Pentanomial search\n\n");
    let _ = writeln!(out, "- t range: 4 <= t < {}", cfg.t_max);
    let _ = writeln!(out, "- m set: {{{}}}", join_m(&cfg.m_set, ", "));
    let _ = writeln!(out, "- candidates: {}", cands.len());
    let matched = cands.iter().filter(|c| c.matched_row.is_some()).count();
    let _ = writeln!(out, "- matched published rows: {matched}\n");
    out.push_str("| row | shape | survived m |\n|---|---|---|\n");
    let mut rows: Vec<&Candidate> = cands.iter().filter(|c| c.matched_row.is_some()).collect();
    rows.sort_by_key(|c| c.matched_row);
    for c in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            c.matched_row.unwrap_or_default(),
            c.shape,
            join_m(&c.survived_m, ", ")
        );
    }
    out
}
