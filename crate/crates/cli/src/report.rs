use a3d_core::Error;
use serde_json::{Map, Value};

use crate::Format;

pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_CAP: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::BadScalar(_)
        | Error::InvalidMultidegree(_)
        | Error::CharacteristicTwo
        | Error::NotPrime(_)
        | Error::UnsupportedCharacteristic(_) => EXIT_PARSE,
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Internal(_) | Error::Cache(_) | Error::Io(_) => EXIT_INTERNAL,
        _ => EXIT_PRECONDITION,
    }
}

/// A command's result: header fields, an optional table, and the answer.
pub struct Output {
    pub header: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// Printed last in TSV, stored under `result` in JSON.
    pub result: Option<Value>,
    pub status: u8,
}

impl Output {
    pub fn new() -> Self {
        Output { header: Vec::new(), columns: Vec::new(), rows: Vec::new(), result: None, status: 0 }
    }

    pub fn head(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.header.push((key.to_string(), v.into()));
        self
    }

    pub fn table(mut self, columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Self {
        self.columns = columns;
        self.rows = rows;
        self
    }

    pub fn result(mut self, v: impl Into<Value>) -> Self {
        self.result = Some(v.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv(),
            Format::Json => {
                let mut m = Map::new();
                for (k, v) in &self.header {
                    m.insert(k.clone(), v.clone());
                }
                if !self.columns.is_empty() {
                    let rows: Vec<Value> = self
                        .rows
                        .iter()
                        .map(|r| {
                            Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect())
                        })
                        .collect();
                    m.insert("rows".into(), Value::Array(rows));
                }
                if let Some(r) = &self.result {
                    m.insert("result".into(), r.clone());
                }
                format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("json values serialize"))
            }
        }
    }

    fn tsv(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let mut s = String::new();
        for (k, v) in &self.header {
            s.push_str(&format!("# {k}: {}\n", cell(v)));
        }
        if !self.columns.is_empty() {
            s.push_str(&self.columns.join("\t"));
            s.push('\n');
            for r in &self.rows {
                s.push_str(&r.iter().map(cell).collect::<Vec<_>>().join("\t"));
                s.push('\n');
            }
        }
        if let Some(r) = &self.result {
            s.push_str(&cell(r));
            s.push('\n');
        }
        s
    }
}
