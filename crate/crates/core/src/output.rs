//! Tabular report format shared by every command.
//!
//! JSON: `{"meta": {...}, "rows": [...]}` where each row carries its key
//! columns (`value`, `s`/`t`, `r1`/`r2`, `quantity`, ...) and, for exact
//! quantities, `num`, `den` and a rounded `float`. Numbers are emitted
//! verbatim so that parsing and re-emitting a report is byte-identical.
//!
//! CSV: one header row naming the key columns present, followed by
//! `<prefix>_num,<prefix>_den,<prefix>_float` where the prefix is
//! `probability` for distributions and `value` otherwise.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::exact::ExactRational;

pub const GENERATOR: &str = concat!("runorder ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u32>,
    pub stat: String,
    pub version: String,
    pub digits: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_policy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Meta {
    pub fn new(stat: impl Into<String>, digits: u32) -> Self {
        Self {
            n1: None,
            n2: None,
            stat: stat.into(),
            version: GENERATOR.to_string(),
            digits,
            observed: None,
            tie_policy: None,
            reps: None,
            seed: None,
        }
    }

    pub fn with_config(mut self, n1: u32, n2: u32) -> Self {
        self.n1 = Some(n1);
        self.n2 = Some(n2);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stat: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_error: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A JSON number carrying exactly the given decimal text.
pub fn number(text: &str) -> Number {
    Number::from_str(text).unwrap_or_else(|_| panic!("not a JSON number: {text}"))
}

/// Fixed-point rendering of an estimate; non-finite values become 0.
pub fn float_number(value: f64, digits: u32) -> Number {
    let value = if value.is_finite() { value } else { 0.0 };
    let text = format!("{:.*}", digits as usize, value);
    let negative_zero = text.starts_with('-') && text[1..].chars().all(|c| c == '0' || c == '.');
    number(if negative_zero { &text[1..] } else { &text })
}

impl Row {
    /// Sets `num`, `den` and the rounded `float` from an exact value.
    pub fn exact(mut self, q: &ExactRational, digits: u32) -> Self {
        self.num = Some(number(&q.numer().to_string()));
        self.den = Some(number(&q.denom().to_string()));
        self.float = Some(number(&q.to_decimal(digits)));
        self
    }

    /// Sets the exact columns when `q` is defined, otherwise records why not.
    pub fn maybe_exact(self, q: Option<&ExactRational>, digits: u32, reason: &str) -> Self {
        match q {
            Some(q) => self.exact(q, digits),
            None => self.note(format!("undefined: {reason}")),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// The exact value, when present.
    pub fn rational(&self) -> Option<ExactRational> {
        let num = self.num.as_ref()?.to_string();
        let den = self.den.as_ref()?.to_string();
        format!("{num}/{den}").parse().ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputTable {
    pub meta: Meta,
    pub rows: Vec<Row>,
    /// CSV numeric column prefix; not part of the JSON document.
    #[serde(skip, default = "default_prefix")]
    pub csv_prefix: &'static str,
}

fn default_prefix() -> &'static str {
    "value"
}

impl OutputTable {
    pub fn new(meta: Meta, csv_prefix: &'static str) -> Self {
        Self {
            meta,
            rows: Vec::new(),
            csv_prefix,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        type Getter = fn(&Row) -> Option<String>;
        let keys: [(&str, Getter); 9] = [
            ("n1", |r| r.n1.map(|v| v.to_string())),
            ("n2", |r| r.n2.map(|v| v.to_string())),
            ("stat", |r| r.stat.clone()),
            ("value", |r| r.value.map(|v| v.to_string())),
            ("s", |r| r.s.map(|v| v.to_string())),
            ("t", |r| r.t.map(|v| v.to_string())),
            ("r1", |r| r.r1.map(|v| v.to_string())),
            ("r2", |r| r.r2.map(|v| v.to_string())),
            ("quantity", |r| r.quantity.clone()),
        ];
        let num = |n: &Option<Number>| n.as_ref().map(|n| n.to_string());
        let mut columns: Vec<(String, Box<dyn Fn(&Row) -> Option<String>>)> = Vec::new();
        for (name, get) in keys {
            if self.rows.iter().any(|r| get(r).is_some()) {
                columns.push((name.to_string(), Box::new(get)));
            }
        }
        let prefix = self.csv_prefix;
        columns.push((format!("{prefix}_num"), Box::new(move |r| num(&r.num))));
        columns.push((format!("{prefix}_den"), Box::new(move |r| num(&r.den))));
        columns.push((format!("{prefix}_float"), Box::new(move |r| num(&r.float))));
        if self.rows.iter().any(|r| r.empirical.is_some()) {
            columns.push(("empirical".into(), Box::new(move |r| num(&r.empirical))));
            columns.push(("std_error".into(), Box::new(move |r| num(&r.std_error))));
        }
        if self.rows.iter().any(|r| r.note.is_some()) {
            columns.push(("note".into(), Box::new(|r| r.note.clone())));
        }

        let mut out = String::new();
        let header: Vec<&str> = columns.iter().map(|(name, _)| name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = columns
                .iter()
                .map(|(_, get)| get(row).map(|v| csv_escape(&v)).unwrap_or_default())
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
