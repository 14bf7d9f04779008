//! Deterministic number formatting and report printing.

use serde_json::{Map, Value};
use std::fmt::Write as _;

/// `%.12g`.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A JSON number holding `x` rounded to twelve significant digits.
pub fn num(x: f64) -> Value {
    let r: f64 = fmt_g(x).parse().unwrap_or(f64::NAN);
    serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

pub fn nums(xs: &[f64]) -> Value {
    let mut v: Vec<f64> = xs.to_vec();
    v.sort_by(f64::total_cmp);
    Value::Array(v.into_iter().map(num).collect())
}

pub fn opt_u8(x: Option<u8>) -> Value {
    x.map_or(Value::Null, Value::from)
}

pub struct Report {
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Value,
}

impl Report {
    pub fn new(inputs: Value, results: Value) -> Self {
        Report { inputs, results, diagnostics: Value::Object(Map::new()) }
    }

    pub fn with_diagnostics(mut self, d: Value) -> Self {
        self.diagnostics = d;
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut m = Map::new();
            m.insert("inputs".into(), self.inputs.clone());
            m.insert("results".into(), self.results.clone());
            m.insert("diagnostics".into(), self.diagnostics.clone());
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut s = String::new();
            flatten("", &self.results, &mut s);
            flatten("", &self.diagnostics, &mut s);
            s
        }
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::Null => "undefined".into(),
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt_g),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(leaf).collect();
            let _ = writeln!(out, "{prefix} = [{}]", items.join(", "));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix} = {}", leaf(v));
        }
    }
}
