//! Rendering a command result as JSON, CSV or text.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Report {
    json: Value,
    text: String,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Self { json, text, table: None }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
            Format::Text => format!("{}\n", self.text),
            Format::Csv => match &self.table {
                Some((header, rows)) => {
                    let mut out = csv_line(header);
                    for r in rows {
                        out += &csv_line(r);
                    }
                    out
                }
                None => flat_csv(&self.json),
            },
        }
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> std::io::Result<()> {
        let body = self.render(format);
        match path {
            Some(p) => std::fs::write(p, body),
            None => std::io::stdout().lock().write_all(body.as_bytes()),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",") + "\n"
}

/// `key,value` lines for the top-level fields of an object.
fn flat_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, x) in map {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out += &csv_line(&[k.clone(), s]);
        }
    }
    out
}
