//! Subcommand bodies. Each returns a [`Report`] or raw text; usage
//! problems come back as [`UsageError`].

use std::fmt;

use serde_json::{json, Value};

use pentanomial::equivalence::{
    search_bivariate_cert, search_monomial_cert, verify_bivariate_cert, verify_monomial_cert, Pool,
};
use pentanomial::families::{resolve_registry, table1_registry, ResolvedRow};
use pentanomial::oracle::{
    brute_is_permutation_capped, g_permutes_unit_circle, h_roots_on_unit_circle, pairs_permute,
    ramification_report, RationalMap,
};
use pentanomial::search::{
    match_candidates, run_search, summary_markdown, to_csv, to_jsonl, Candidate, SearchConfig,
};
use pentanomial::theory::{
    check_identity_derivative, check_identity_q, m_condition, r_closed_form, r_oracle, r_printed,
    theorem_verdict,
};
use pentanomial::{nt, Class, FamilySpec, FieldCtx, MCondition};

use crate::config::{Format, RunConfig};
use crate::report::{Record, Report};

/// Largest `n = 2m` for which `gcheck` enumerates branch points.
pub const BRANCH_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage<E: fmt::Display>(e: E) -> UsageError {
    UsageError(e.to_string())
}

pub enum Output {
    Report(Report),
    Raw(String),
}

pub fn spec(class: Class, i: u32, j: u32) -> Result<FamilySpec, UsageError> {
    FamilySpec::new(class, i, j).map_err(usage)
}

fn spec_params(s: &FamilySpec) -> Value {
    json!({"class": s.class.to_string(), "i": s.i, "j": s.j})
}

fn with_m(s: &FamilySpec, m: u32) -> Value {
    let mut p = spec_params(s);
    p["m"] = json!(m);
    p
}

fn canonical(s: &FamilySpec) -> FamilySpec {
    if s.class.is_symmetric() && s.i < s.j {
        s.swapped()
    } else {
        *s
    }
}

fn published_row(s: &FamilySpec) -> Option<ResolvedRow> {
    let c = canonical(s);
    resolve_registry().into_iter().find(|r| r.resolved == Some(c))
}

fn odd() -> MCondition {
    MCondition::from_predicate(2, |m| m % 2 == 1)
}

pub fn check(s: &FamilySpec, m: u32, brute: bool, cfg: &RunConfig) -> Result<Report, UsageError> {
    let v = theorem_verdict(s, m).map_err(usage)?;
    let cond = m_condition(s).ok();
    let swept = if brute {
        Some(brute_is_permutation_capped(s, m, cfg.brute_cap).map_err(usage)?)
    } else {
        None
    };
    let agrees = swept.is_none_or(|b| b == v.predicted);
    let mut text = format!(
        "{s} m={m}: predicted permutation {} (r={}, gcd(t,q-1)={}",
        v.predicted, v.r, v.gcd1
    );
    if let Some(g2) = v.gcd2 {
        text.push_str(&format!(", gcd(t-2r,q+1)={g2}"));
    }
    text.push(')');
    if let Some(b) = swept {
        text.push_str(&format!(
            "; exhaustive sweep {b}; {}",
            if agrees { "agree" } else { "DISAGREE" }
        ));
    }
    let mut report = Report::default();
    report.push(Record {
        kind: "check",
        params: with_m(s, m),
        result: json!({
            "verdict": v,
            "condition": cond.as_ref().map(|c| c.text()),
            "brute": swept,
        }),
        agrees,
        text,
    });
    Ok(report)
}

pub fn condition(s: &FamilySpec) -> Result<Report, UsageError> {
    let cond = m_condition(s).map_err(usage)?;
    let row = published_row(s);
    let matches = row
        .as_ref()
        .map(|r| cond.same_set(&r.row.condition.to_mcondition()));
    let mut text = format!("{s}: {cond}");
    if let Some(r) = &row {
        text.push_str(&format!(
            " [published row {}: {}]",
            r.row.row_no,
            r.row.condition.text()
        ));
    }
    let mut report = Report::default();
    report.push(Record {
        kind: "condition",
        params: spec_params(s),
        result: json!({
            "condition": cond,
            "published_row": row.as_ref().map(|r| r.row.row_no),
            "published_condition": row.as_ref().map(|r| r.row.condition.text()),
            "matches_published": matches,
        }),
        agrees: true,
        text,
    });
    Ok(report)
}

pub struct Table1Args {
    pub m_range: Option<(u32, u32)>,
    pub brute: bool,
    pub row: Option<u32>,
}

fn row_record(r: &ResolvedRow) -> Result<Record, UsageError> {
    let printed = r.row.condition.to_mcondition();
    let (engine, matches, note, agrees) = match r.resolved {
        Some(s) => {
            let cond = m_condition(&s).map_err(usage)?;
            let matches = cond.same_set(&printed);
            let oddness = !matches && cond.same_set(&printed.intersect(&odd()));
            let mut notes = Vec::new();
            if oddness {
                notes.push("printed condition omits 'm is odd'; engine requires it");
            }
            if r.q_columns_swapped {
                notes.push("printed Q1/Q2 columns are swapped relative to the resolved family");
            }
            (Some(cond), Some(matches), notes.join("; "), matches || oddness)
        }
        None => (
            None,
            None,
            "no theorem; exhaustive sweeps are the reference".into(),
            true,
        ),
    };
    let resolved = r.resolved.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
    let mut text = format!(
        "row {:>2}: {:<16} published '{}'",
        r.row.row_no,
        resolved,
        r.row.condition.text()
    );
    if let Some(e) = &engine {
        text.push_str(&format!(", engine '{e}'"));
    }
    if !note.is_empty() {
        text.push_str(&format!(" ({note})"));
    }
    Ok(Record {
        kind: "table1_row",
        params: json!({"row": r.row.row_no}),
        result: json!({
            "resolved": r.resolved,
            "published_condition": r.row.condition.text(),
            "engine_condition": engine,
            "condition_matches": matches,
            "q_columns_swapped": r.q_columns_swapped,
            "note": note,
        }),
        agrees,
        text,
    })
}

fn certificate_records(s: &FamilySpec, row_no: u32, cfg: &RunConfig) -> Result<Vec<Record>, UsageError> {
    let mut out = Vec::new();
    for m in [2, 3] {
        if r_closed_form(s) != 0 && m % 2 == 1 {
            continue;
        }
        let mut report = equiv(s, m, &Pool::F4, cfg)?;
        for r in &mut report.records {
            r.params["row"] = json!(row_no);
        }
        out.extend(report.records);
    }
    Ok(out)
}

pub fn table1(args: &Table1Args, cfg: &RunConfig) -> Result<Report, UsageError> {
    let rows: Vec<ResolvedRow> = match args.row {
        Some(n) if !(1..=table1_registry().len() as u32).contains(&n) => {
            return Err(UsageError(format!(
                "row {n} outside 1..={}",
                table1_registry().len()
            )))
        }
        Some(n) => vec![resolve_registry().swap_remove(n as usize - 1)],
        None => resolve_registry(),
    };
    let mut report = Report::default();
    for r in &rows {
        report.push(row_record(r)?);
    }
    let range = match (args.m_range, args.brute) {
        (Some(r), _) => Some(r),
        (None, true) => Some((1, 6)),
        (None, false) => None,
    };
    if let Some((lo, hi)) = range {
        for r in &rows {
            let cond = r.resolved.map(|s| m_condition(&s)).transpose().map_err(usage)?;
            for m in lo..=hi {
                let expected = match &cond {
                    Some(c) => c.contains(m as u64),
                    None => r.row.condition.holds(m as u64),
                };
                let swept = pairs_permute(&r.row.pairs, m, cfg.brute_cap).map_err(usage)?;
                report.push(Record {
                    kind: "table1_brute",
                    params: json!({"row": r.row.row_no, "m": m}),
                    result: json!({"expected": expected, "brute": swept}),
                    agrees: expected == swept,
                    text: format!(
                        "row {:>2} m={m}: expected {expected}, sweep {swept}",
                        r.row.row_no
                    ),
                });
            }
        }
    }
    if let (Some(_), [r]) = (args.row, rows.as_slice()) {
        if let Some(s) = r.resolved {
            for rec in certificate_records(&s, r.row.row_no, cfg)? {
                report.push(rec);
            }
        }
    }
    let resolved = rows.iter().filter(|r| r.resolved.is_some()).count();
    let failures = report.records.iter().filter(|r| !r.agrees).count();
    report.summary = Some(format!(
        "{resolved} rows resolved to a family, {} unresolved; {failures} disagreements",
        rows.len() - resolved
    ));
    Ok(report)
}

fn grid(i_max: u32, j_max: u32) -> Result<Vec<FamilySpec>, UsageError> {
    let mut out = Vec::new();
    for class in Class::ALL {
        for i in 1..=i_max {
            for j in 1..=j_max {
                out.push(spec(class, i, j)?);
            }
        }
    }
    Ok(out)
}

pub fn identities(i_max: u32, j_max: u32) -> Result<Report, UsageError> {
    let mut report = Report::default();
    for s in grid(i_max, j_max)? {
        let (d, q) = (check_identity_derivative(&s), check_identity_q(&s));
        report.push(Record {
            kind: "identity",
            params: spec_params(&s),
            result: json!({"derivative": d, "q_power": q}),
            agrees: d.holds && q.holds,
            text: format!(
                "{s}: N'H+NH' = Q^{} {}; N^2+NH+H^2 = Q^{} {}",
                d.q_power,
                if d.holds { "holds" } else { "FAILS" },
                q.q_power,
                if q.holds { "holds" } else { "FAILS" }
            ),
        });
    }
    let n = report.records.len();
    let ok = report.records.iter().filter(|r| r.agrees).count();
    report.summary = Some(format!("{n} specs checked, {ok} satisfy both identities"));
    Ok(report)
}

pub fn rvalues(i_max: u32, j_max: u32) -> Result<Report, UsageError> {
    let mut report = Report::default();
    for s in grid(i_max, j_max)? {
        let closed = r_closed_form(&s);
        let oracle = r_oracle(&s);
        let printed = r_printed(&s);
        let agrees = oracle.as_ref().is_ok_and(|&o| o == closed);
        let oracle_text = match &oracle {
            Ok(o) => o.to_string(),
            Err(e) => e.to_string(),
        };
        let mut text = format!("{s}: closed form {closed}, gcd oracle {oracle_text}");
        if printed != Some(closed) {
            let p = printed.map_or("no line".to_string(), |p| p.to_string());
            text.push_str(&format!(" (printed table: {p})"));
        }
        report.push(Record {
            kind: "rvalue",
            params: spec_params(&s),
            result: json!({
                "closed_form": closed,
                "oracle": oracle.as_ref().ok(),
                "oracle_error": oracle.as_ref().err().map(|e| e.to_string()),
                "printed": printed,
                "printed_differs": printed != Some(closed),
            }),
            agrees,
            text,
        });
    }
    let n = report.records.len();
    let ok = report.records.iter().filter(|r| r.agrees).count();
    let flagged = report
        .records
        .iter()
        .filter(|r| r.result["printed_differs"] == true)
        .count();
    report.summary = Some(format!(
        "{ok}/{n} closed-form values match the gcd oracle; {flagged} cells differ from the printed tables"
    ));
    Ok(report)
}

pub fn gcheck(s: &FamilySpec, m: u32) -> Result<Report, UsageError> {
    let permutes = g_permutes_unit_circle(s, m).map_err(usage)?;
    let roots = h_roots_on_unit_circle(s, m).map_err(usage)?;
    let r = r_closed_form(s);
    let q = 1u64 << m;
    let predicate = if m.is_multiple_of(2) {
        nt::gcd(s.t() - 2 * r, q + 1) == 1
    } else {
        r == 0 && nt::gcd(s.t(), q - 1) == 1
    };
    let g = RationalMap::for_family(s);
    let mut result = json!({
        "degree": g.degree(),
        "permutes_unit_circle": permutes,
        "predicted": predicate,
        "unit_circle_roots_of_h": roots.len(),
    });
    let mut text = format!(
        "{s} m={m}: reduced g has degree {}; g permutes the unit circle: {permutes} (predicted {predicate}); H roots on the unit circle: {}",
        g.degree(),
        roots.len()
    );
    if 2 * m <= BRANCH_CAP {
        let ctx = FieldCtx::tower(m).map_err(usage)?;
        let gf = g.over(&ctx).map_err(usage)?;
        let w = ctx.omega().map_err(usage)?;
        let label = |p: &pentanomial::ProjPoint<'_>| match p {
            pentanomial::ProjPoint::Finite(x) if *x == w => format!("{p} (w)"),
            pentanomial::ProjPoint::Finite(x) if *x == w.square() => format!("{p} (w^2)"),
            _ => p.to_string(),
        };
        let branch = gf.branch_points();
        let ram = ramification_report(&gf);
        let indices: Vec<usize> = ram.iter().map(|e| e.index).collect();
        text.push_str(&format!(
            "; branch set {{{}}}; indices {indices:?}",
            branch.iter().map(label).collect::<Vec<_>>().join(", ")
        ));
        result["branch_points"] = json!(branch);
        result["ramification"] = json!(ram);
        result["indices"] = json!(indices);
    } else {
        text.push_str(&format!("; branch points skipped above GF(2^{BRANCH_CAP})"));
    }
    let agrees = !roots.is_empty() || permutes == predicate;
    let mut report = Report::default();
    report.push(Record {
        kind: "gcheck",
        params: with_m(s, m),
        result,
        agrees,
        text,
    });
    Ok(report)
}

pub fn equiv(s: &FamilySpec, m: u32, pool: &Pool, cfg: &RunConfig) -> Result<Report, UsageError> {
    if 2 * m > cfg.brute_cap {
        return Err(UsageError(format!(
            "m = {m} exceeds the exhaustive cap 2m <= {}",
            cfg.brute_cap
        )));
    }
    let ctx = FieldCtx::tower(m).map_err(usage)?;
    let swept = brute_is_permutation_capped(s, m, cfg.brute_cap).map_err(usage)?;
    let (cert, verified, test) = if m.is_multiple_of(2) {
        match search_monomial_cert(&ctx, s, pool).map_err(usage)? {
            Some(c) => (
                Some(json!(c)),
                verify_monomial_cert(&c, s).is_ok(),
                Some(c.exponent_test()),
            ),
            None => (None, false, None),
        }
    } else {
        match search_bivariate_cert(&ctx, s, pool).map_err(usage)? {
            Some(c) => (
                Some(json!(c)),
                verify_bivariate_cert(&c, s).is_ok(),
                Some(c.exponent_test()),
            ),
            None => (None, false, None),
        }
    };
    let kind = if m.is_multiple_of(2) {
        "monomial"
    } else {
        "bivariate"
    };
    let (agrees, text) = match test {
        Some(t) => (
            verified && t == swept,
            format!(
                "{s} m={m}: {kind} certificate {}; exponent test {t}, sweep {swept}",
                cert.as_ref().map(|c| c.to_string()).unwrap_or_default()
            ),
        ),
        None => (
            true,
            format!("{s} m={m}: no {kind} certificate in the pool (pool exhausted)"),
        ),
    };
    let mut report = Report::default();
    report.push(Record {
        kind: "certificate",
        params: with_m(s, m),
        result: json!({
            "kind": kind,
            "certificate": cert,
            "verified": verified,
            "exponent_test": test,
            "brute": swept,
        }),
        agrees,
        text,
    });
    Ok(report)
}

fn candidate_line(c: &Candidate) -> String {
    let ms: Vec<String> = c.survived_m.iter().map(u32::to_string).collect();
    let row = c.matched_row.map_or(String::new(), |r| format!("  row {r}"));
    format!("{}  survived m = {{{}}}{row}", c.shape, ms.join(", "))
}

pub fn search(t_max: u32, m_set: Vec<u32>, format: Format, cfg: &RunConfig) -> Result<Output, UsageError> {
    let sc = SearchConfig {
        t_max,
        m_set,
        brute_cap: cfg.brute_cap,
    }
    .validated()
    .map_err(usage)?;
    let cands = match_candidates(run_search(&sc).map_err(usage)?);
    Ok(Output::Raw(match format {
        Format::Json => to_jsonl(&cands),
        Format::Csv => to_csv(&cands),
        Format::Md => summary_markdown(&sc, &cands),
        Format::Text => {
            let mut out: String = cands.iter().map(|c| candidate_line(c) + "\n").collect();
            let matched = cands.iter().filter(|c| c.matched_row.is_some()).count();
            out.push_str(&format!(
                "{} candidates, {matched} matching published rows\n",
                cands.len()
            ));
            out
        }
    }))
}

pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in {s:?}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("need 1 <= LO <= HI, got {s:?}"));
    }
    Ok((lo, hi))
}
