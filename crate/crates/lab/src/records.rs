//! Output records.
//!
//! JSON lines: one object per record with keys `op`, `params`, `n`, `q`,
//! `value`, `ci`, `seed`. `params` is an object, `ci` is the 95% half-width
//! or `null`, `n`, `q` and `seed` may be `null`, and `value` is any JSON value.
//!
//! CSV: header `op,params,n,q,value,ci,seed`; `params` and non-scalar values
//! are written as compact JSON, missing fields as empty cells.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub op: String,
    pub params: Map<String, Value>,
    pub n: Option<usize>,
    pub q: Option<f64>,
    pub value: Value,
    pub ci: Option<f64>,
    pub seed: Option<u64>,
}

impl Record {
    pub fn new(op: &str, value: impl Into<Value>) -> Record {
        Record { op: op.to_string(), params: Map::new(), n: None, q: None, value: value.into(), ci: None, seed: None }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Record {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn n(mut self, n: usize) -> Record {
        self.n = Some(n);
        self
    }

    pub fn q(mut self, q: f64) -> Record {
        self.q = Some(q);
        self
    }

    pub fn ci(mut self, half_width: f64) -> Record {
        self.ci = Some(half_width);
        self
    }

    pub fn seed(mut self, seed: u64) -> Record {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    fn csv_fields(&self) -> [String; 7] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let value = match &self.value {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            v => v.to_string(),
        };
        [
            self.op.clone(),
            Value::Object(self.params.clone()).to_string(),
            opt(self.n.map(|n| n.to_string())),
            opt(self.q.map(|q| q.to_string())),
            value,
            opt(self.ci.map(|c| c.to_string())),
            opt(self.seed.map(|s| s.to_string())),
        ]
    }
}

pub const CSV_HEADER: [&str; 7] = ["op", "params", "n", "q", "value", "ci", "seed"];

pub fn write_json_lines<W: Write>(out: W, records: &[Record]) -> std::io::Result<()> {
    let mut out = out;
    for r in records {
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(out: W, records: &[Record]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}
