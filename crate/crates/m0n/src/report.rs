//! The serialized result of one command.

use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

/// A command result: a JSON payload plus its human-readable and Graphviz
/// renderings. `ok` is false when a check ran and disagreed.
#[derive(Debug, Clone)]
pub struct Report {
    pub module: &'static str,
    pub params: Map<String, Value>,
    pub payload: Map<String, Value>,
    pub table: String,
    pub dot: Option<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(module: &'static str) -> Self {
        Self {
            module,
            params: Map::new(),
            payload: Map::new(),
            table: String::new(),
            dot: None,
            ok: true,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.payload.insert(key.into(), value.into());
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.table.push_str(text.as_ref());
        self.table.push('\n');
    }

    /// `{"schema": 1, "provenance": {...}, <payload>}` with keys sorted.
    pub fn to_value(&self) -> Value {
        let mut top = self.payload.clone();
        top.insert("schema".into(), SCHEMA.into());
        let mut prov = Map::new();
        prov.insert("module".into(), self.module.into());
        prov.insert("params".into(), Value::Object(self.params.clone()));
        prov.insert("tool".into(), env!("CARGO_PKG_NAME").into());
        prov.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        top.insert("provenance".into(), Value::Object(prov));
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let render = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = render(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for r in rows {
        out.push_str(&render(r.clone()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_cannot_hide_schema() {
        let mut r = Report::new("strata").param("n", 5);
        r.set("schema", 7);
        let v = r.to_value();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["provenance"]["params"]["n"], 5);
    }

    #[test]
    fn columns_align() {
        let t = table(&["a", "bb"], &[vec!["100".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n100  x\n");
    }
}
