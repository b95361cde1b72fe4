//! Uniform records and their renderings.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::config::Format;

/// One checked fact.
#[derive(Debug, Clone)]
pub struct Record {
    pub kind: &'static str,
    pub params: Value,
    pub result: Value,
    pub agrees: bool,
    /// Human-readable line for text output.
    pub text: String,
}

impl Record {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "params": self.params,
            "result": self.result,
            "agrees": self.agrees,
        })
    }
}

/// Records plus a closing summary line for text output.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Option<String>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn all_agree(&self) -> bool {
        self.records.iter().all(|r| r.agrees)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self
                .records
                .iter()
                .map(|r| r.to_json().to_string() + "\n")
                .collect(),
            Format::Csv => render_csv(&self.records),
            Format::Md => render_md(&self.records),
            Format::Text => {
                let mut out: String = self.records.iter().map(|r| r.text.clone() + "\n").collect();
                if let Some(s) = &self.summary {
                    out.push_str(s);
                    out.push('\n');
                }
                out
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, into: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                into.push((format!("{prefix}.{k}"), cell(inner)));
            }
        }
        other => into.push((prefix.to_string(), cell(other))),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Column names in first-appearance order and one row of cells per record.
fn table(records: &[Record]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut columns = vec!["kind".to_string(), "agrees".to_string()];
    let mut flat = Vec::with_capacity(records.len());
    for r in records {
        let mut cells = vec![
            ("kind".to_string(), r.kind.to_string()),
            ("agrees".to_string(), r.agrees.to_string()),
        ];
        flatten("params", &r.params, &mut cells);
        flatten("result", &r.result, &mut cells);
        for (k, _) in &cells {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
        flat.push(cells.into_iter().collect::<HashMap<String, String>>());
    }
    let rows = flat
        .iter()
        .map(|m| {
            columns
                .iter()
                .map(|c| m.get(c).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    (columns, rows)
}

fn render_csv(records: &[Record]) -> String {
    let (columns, rows) = table(records);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&columns).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn render_md(records: &[Record]) -> String {
    let (columns, rows) = table(records);
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("| {} |\n", columns.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(columns.len())));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| esc(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}
