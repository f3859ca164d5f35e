//! Report model shared by all verbs and its three renderings.
//!
//! A report is a list of named scalar or list fields plus any number of named
//! tables. JSON carries everything; CSV carries the first table only (or the
//! fields as `field,value` rows when the verb has no table); text is meant for
//! reading.

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Default)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    /// `false` when an identity or check failed.
    pub pass: bool,
    pub fields: Vec<(String, Value)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            pass: true,
            fields: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn field(&mut self, name: &str, value: impl Into<Value>) {
        self.fields.push((name.into(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
        }
    }

    pub fn json(&self) -> Value {
        let mut root = Map::new();
        root.insert("schemaVersion".into(), SCHEMA_VERSION.into());
        root.insert("command".into(), self.command.clone().into());
        root.insert("status".into(), if self.pass { "ok" } else { "fail" }.into());
        let fields: Map<String, Value> = self.fields.iter().cloned().collect();
        root.insert("result".into(), Value::Object(fields));
        let mut tables = Map::new();
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            tables.insert(t.name.clone(), Value::Array(rows));
        }
        root.insert("tables".into(), Value::Object(tables));
        Value::Object(root)
    }

    fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {}\n",
            self.command,
            if self.pass { "ok" } else { "FAIL" }
        ));
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) => {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  {}\n", scalar_text(item)));
                    }
                }
                _ => out.push_str(&format!("{k:<width$}  {}\n", scalar_text(v))),
            }
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&format!("[{}] {} rows\n", t.name, t.rows.len()));
            let cells: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| r.iter().map(scalar_text).collect())
                .collect();
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for r in &cells {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            out.push_str(&aligned(&t.columns, &widths));
            for r in &cells {
                out.push_str(&aligned(r, &widths));
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        match self.tables.first() {
            Some(t) => {
                w.write_record(&t.columns).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r.iter().map(scalar_text)).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["field", "value"]).expect("in-memory write");
                for (k, v) in &self.fields {
                    let v = match v {
                        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(";"),
                        v => scalar_text(v),
                    };
                    w.write_record([k.as_str(), v.as_str()]).expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

fn aligned(cells: &[String], widths: &[usize]) -> String {
    let mut line = String::new();
    for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
        if i > 0 {
            line.push_str("  ");
        }
        line.push_str(c);
        if i + 1 < cells.len() {
            line.extend(std::iter::repeat(' ').take(w - c.chars().count()));
        }
    }
    line.truncate(line.trim_end().len());
    line.push('\n');
    line
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let mut r = Report::new("x");
        let mut t = Table::new("t", &["a", "b"]);
        t.push(vec!["1, 2".into(), "say \"hi\"".into()]);
        r.tables.push(t);
        assert_eq!(r.render(Format::Csv), "a,b\n\"1, 2\",\"say \"\"hi\"\"\"\n");

        let mut r = Report::new("x");
        r.field("list", vec![1, 2]);
        assert_eq!(r.render(Format::Csv), "field,value\nlist,1;2\n");
    }
}
