//! Report assembly, serialization and schema validation.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

/// Decimal string for a float; `inf`, `-inf` and `nan` spelled out.
pub fn num(x: f64) -> Value {
    Value::String(fmt_f64(x))
}

pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:e}")
    }
}

pub fn int(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn text(x: impl Into<String>) -> Value {
    Value::String(x.into())
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn ints<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| int(x.to_string())).collect())
}

/// CSV table: one header row, then data rows.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Everything a command produces.
#[derive(Debug, Default)]
pub struct Report {
    pub config: BTreeMap<String, Value>,
    pub result: BTreeMap<String, Value>,
    pub constants: BTreeMap<String, Value>,
    pub witnesses: Vec<Value>,
    pub table: Table,
    /// Resonance or an infinite value was found.
    pub infinite: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.config.insert("command".into(), text(command));
        r
    }

    pub fn config(&mut self, key: &str, v: Value) -> &mut Self {
        self.config.insert(key.into(), v);
        self
    }

    pub fn result(&mut self, key: &str, v: Value) -> &mut Self {
        self.result.insert(key.into(), v);
        self
    }

    pub fn constant(&mut self, key: &str, v: f64) -> &mut Self {
        self.constants.insert(key.into(), num(v));
        self
    }

    pub fn witness(&mut self, v: Value) -> &mut Self {
        self.witnesses.push(v);
        self
    }

    pub fn to_json(&self, elapsed_ms: u128, threads: usize) -> Value {
        let obj = |m: &BTreeMap<String, Value>| Value::Object(m.iter().map(|(k, v)| (k.clone(), v.clone())).collect());
        let mut diag = Map::new();
        diag.insert("constants".into(), obj(&self.constants));
        diag.insert("witnesses".into(), Value::Array(self.witnesses.clone()));
        let mut timing = Map::new();
        timing.insert("elapsed_ms".into(), int(elapsed_ms));
        timing.insert("threads".into(), int(threads));
        let mut top = Map::new();
        top.insert("config".into(), obj(&self.config));
        top.insert("result".into(), obj(&self.result));
        top.insert("diagnostics".into(), Value::Object(diag));
        top.insert("timing".into(), Value::Object(timing));
        Value::Object(top)
    }
}

/// Checks the report layout: the four top-level blocks, the diagnostics
/// sub-blocks, and that no leaf is a JSON number.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let top = v.as_object().ok_or("report is not an object")?;
    let keys: Vec<&str> = top.keys().map(String::as_str).collect();
    let mut want = vec!["config", "diagnostics", "result", "timing"];
    want.sort_unstable();
    let mut have = keys.clone();
    have.sort_unstable();
    if have != want {
        return Err(format!("top-level keys {keys:?}"));
    }
    for k in ["config", "result", "timing"] {
        if !top[k].is_object() {
            return Err(format!("{k} is not an object"));
        }
    }
    if !top["config"]["command"].is_string() {
        return Err("config.command missing".into());
    }
    let diag = top["diagnostics"].as_object().ok_or("diagnostics is not an object")?;
    if !diag.get("constants").is_some_and(Value::is_object) {
        return Err("diagnostics.constants missing".into());
    }
    if !diag.get("witnesses").is_some_and(Value::is_array) {
        return Err("diagnostics.witnesses missing".into());
    }
    if !top["timing"]["elapsed_ms"].is_string() {
        return Err("timing.elapsed_ms missing".into());
    }
    no_numbers(v, "")
}

fn no_numbers(v: &Value, path: &str) -> Result<(), String> {
    match v {
        Value::Number(_) => Err(format!("numeric leaf at {path}")),
        Value::Array(xs) => xs.iter().enumerate().try_for_each(|(i, x)| no_numbers(x, &format!("{path}[{i}]"))),
        Value::Object(m) => m.iter().try_for_each(|(k, x)| no_numbers(x, &format!("{path}.{k}"))),
        _ => Ok(()),
    }
}

/// The report with its timing block removed, for reproducibility checks.
pub fn without_timing(v: &Value) -> Value {
    let mut v = v.clone();
    if let Some(m) = v.as_object_mut() {
        m.remove("timing");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_strings_round_trip() {
        for x in [0.1, 1e-300, 3.0, -2.5e10, f64::MIN_POSITIVE, 28.0 / 3.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn schema() {
        let mut r = Report::new("x");
        r.result("v", num(1.5)).constant("c", 2.0);
        let v = r.to_json(3, 1);
        validate_report(&v).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        validate_report(&serde_json::from_str(&text).unwrap()).unwrap();
        let mut bad = v.clone();
        bad["result"]["n"] = Value::from(3);
        assert!(validate_report(&bad).is_err());
        let mut bad = v;
        bad.as_object_mut().unwrap().remove("timing");
        assert!(validate_report(&bad).is_err());
    }

    #[test]
    fn csv_quotes() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1,2".into(), "x".into()]);
        assert_eq!(t.render(), "a,b\n\"1,2\",x\n");
    }
}
