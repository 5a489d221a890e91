//! Experiment records and their JSON Lines encoding.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
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

impl From<u64> for Value {
    fn from(x: u64) -> Self {
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

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(x) => Some(*x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentResult {
    pub experiment: String,
    pub params: Vec<(String, Value)>,
    pub results: Vec<(String, Value)>,
    /// Per-node tables (only emitted when nonempty).
    pub series: Vec<(String, Vec<f64>)>,
    pub checks: Vec<Check>,
}

impl ExperimentResult {
    pub fn new(experiment: &str) -> Self {
        Self { experiment: experiment.to_string(), ..Default::default() }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.push((key.to_string(), v.into()));
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.push((key.to_string(), v.into()));
    }

    pub fn series(&mut self, key: &str, v: Vec<f64>) {
        self.series.push((key.to_string(), v));
    }

    /// Records `lhs <= rhs + tol`.
    pub fn check_le(&mut self, name: &str, lhs: f64, rhs: f64, tol: f64) {
        self.push_check(name, lhs <= rhs + tol, lhs, rhs, tol);
    }

    /// Records `lhs >= rhs - tol`.
    pub fn check_ge(&mut self, name: &str, lhs: f64, rhs: f64, tol: f64) {
        self.push_check(name, lhs >= rhs - tol, lhs, rhs, tol);
    }

    /// Records `|lhs - rhs| <= tol`.
    pub fn check_close(&mut self, name: &str, lhs: f64, rhs: f64, tol: f64) {
        self.push_check(name, (lhs - rhs).abs() <= tol, lhs, rhs, tol);
    }

    /// Records `lhs > rhs` strictly.
    pub fn check_gt(&mut self, name: &str, lhs: f64, rhs: f64) {
        self.push_check(name, lhs > rhs, lhs, rhs, 0.0);
    }

    fn push_check(&mut self, name: &str, pass: bool, lhs: f64, rhs: f64, tol: f64) {
        self.checks.push(Check { name: name.to_string(), pass, lhs, rhs, tol });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get_result(&self, key: &str) -> Option<&Value> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn get_param(&self, key: &str) -> Option<&Value> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One JSON object, no trailing newline. Floats carry 17 significant digits.
    pub fn to_json_line(&self) -> String {
        let mut s = String::new();
        s.push_str("{\"experiment\":");
        push_str(&mut s, &self.experiment);
        s.push_str(",\"params\":");
        push_map(&mut s, &self.params);
        s.push_str(",\"results\":");
        push_map(&mut s, &self.results);
        if !self.series.is_empty() {
            s.push_str(",\"series\":{");
            for (i, (k, v)) in self.series.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                push_str(&mut s, k);
                s.push_str(":[");
                for (j, x) in v.iter().enumerate() {
                    if j > 0 {
                        s.push(',');
                    }
                    push_float(&mut s, *x);
                }
                s.push(']');
            }
            s.push('}');
        }
        s.push_str(",\"checks\":[");
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str("{\"name\":");
            push_str(&mut s, &c.name);
            let _ = write!(s, ",\"pass\":{},\"lhs\":", c.pass);
            push_float(&mut s, c.lhs);
            s.push_str(",\"rhs\":");
            push_float(&mut s, c.rhs);
            s.push_str(",\"tol\":");
            push_float(&mut s, c.tol);
            s.push('}');
        }
        s.push_str("]}");
        s
    }
}

fn push_str(s: &mut String, v: &str) {
    s.push_str(&serde_json::to_string(v).expect("string serialization"));
}

/// 17 significant digits in exponent notation; non-finite values become null.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn push_float(s: &mut String, x: f64) {
    s.push_str(&format_float(x));
}

fn push_map(s: &mut String, m: &[(String, Value)]) {
    s.push('{');
    for (i, (k, v)) in m.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        push_str(s, k);
        s.push(':');
        match v {
            Value::Int(n) => {
                let _ = write!(s, "{n}");
            }
            Value::Float(x) => push_float(s, *x),
            Value::Bool(b) => {
                let _ = write!(s, "{b}");
            }
            Value::Text(t) => push_str(s, t),
        }
    }
    s.push('}');
}
