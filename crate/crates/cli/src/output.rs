//! Tables and pass/fail reports, rendered as CSV or JSON.

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

/// Shortest round-trip form, in exponent notation for very small or large
/// magnitudes.
pub fn float(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(x) => float(*x),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(i) => json!(i),
            Value::Float(x) => json!(x),
            Value::Text(s) => json!(s),
            Value::Bool(b) => json!(b),
        }
    }
}

/// A data table with optional `key: value` notes for the header.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub notes: Vec<(String, Value)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.notes.push((key.into(), value.into()));
    }

    /// Numeric column by name, for plotting.
    pub fn column(&self, name: &str) -> Vec<f64> {
        let i = self.columns.iter().position(|c| *c == name).expect("known column");
        self.rows
            .iter()
            .map(|r| match &r[i] {
                Value::Float(x) => *x,
                Value::Int(k) => *k as f64,
                _ => f64::NAN,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub bound: f64,
}

impl Case {
    /// Passes when `measured ≤ bound`.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::with(name, measured <= bound, measured, bound)
    }

    pub fn with(name: impl Into<String>, ok: bool, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            cases: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Report {
        Report {
            suite: self.suite.clone(),
            cases: self.cases.iter().filter(|c| c.status == Status::Fail).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub enum Output {
    Table(Table),
    Report(Report),
}

fn header(config: &RunConfig) -> String {
    let params: Vec<String> = config.params.describe().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "# deformd {}\n# params: {}\n# seed: {}\n",
        config.subcommand,
        params.join(" "),
        config.params.seed()
    )
}

fn csv_rows(columns: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn render(output: &Output, config: &RunConfig, format: Format) -> String {
    match (output, format) {
        (Output::Table(t), Format::Csv) => {
            let mut s = header(config);
            for (k, v) in &t.notes {
                s.push_str(&format!("# {k}: {}\n", v.csv()));
            }
            s + &csv_rows(&t.columns, t.rows.iter().map(|r| r.iter().map(Value::csv).collect()))
        }
        (Output::Table(t), Format::Json) => {
            let params: Map<String, Json> = config.params.describe().into_iter().map(|(k, v)| (k, Json::String(v))).collect();
            let notes: Map<String, Json> = t.notes.iter().map(|(k, v)| (k.clone(), v.json())).collect();
            let rows: Vec<Json> = t.rows.iter().map(|r| Json::Array(r.iter().map(Value::json).collect())).collect();
            let doc = json!({
                "subcommand": config.subcommand,
                "params": params,
                "seed": config.params.seed(),
                "notes": notes,
                "columns": t.columns,
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc).expect("table serializes") + "\n"
        }
        (Output::Report(r), Format::Csv) => {
            header(config)
                + &csv_rows(
                    &["name", "status", "measured", "bound"],
                    r.cases.iter().map(|c| {
                        vec![
                            c.name.clone(),
                            if c.status == Status::Pass { "pass" } else { "fail" }.to_string(),
                            float(c.measured),
                            float(c.bound),
                        ]
                    }),
                )
        }
        (Output::Report(r), Format::Json) => r.to_json(),
    }
}
