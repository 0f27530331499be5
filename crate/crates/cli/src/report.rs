use serde_json::{Map, Value};

use nctwist::linalg::Matrix;
use nctwist::ParamRing;

/// Result of one command, rendered as text and as JSON. serde_json's map is
/// ordered by key, so the JSON is byte-stable.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
    pub certificates: Map<String, Value>,
    pub lines: Vec<String>,
    /// A mathematical negative answer (exit status 1).
    pub negative: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            result: Map::new(),
            certificates: Map::new(),
            lines: Vec::new(),
            negative: false,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.into(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.into(), v.into());
    }

    pub fn cert(&mut self, key: &str, v: impl Into<Value>) {
        self.certificates.insert(key.into(), v.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("result".into(), Value::Object(self.result.clone()));
        m.insert("certificates".into(), Value::Object(self.certificates.clone()));
        m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        Value::Object(m)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("nctwist {}\n", self.command);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

/// Rows of scalar strings.
pub fn matrix_json(m: &Matrix, ring: &ParamRing) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| x.to_string_in(ring).into()).collect()))
            .collect(),
    )
}

/// `[a, b; c, d]`.
pub fn matrix_inline(m: &Matrix, ring: &ParamRing) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string_in(ring)).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}
