use serde_json::Value;

use crate::args::Format;

/// What a verb produced: the JSON document, its tabular projection, and whether every check passed.
pub struct Outcome {
    pub json: Value,
    pub table: Table,
    pub passed: bool,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&str>) -> Self {
        Table { header: header.into_iter().map(String::from).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

impl Outcome {
    pub fn ok(json: Value, table: Table) -> Self {
        Outcome { json, table, passed: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.json).expect("values serialize");
                text.push('\n');
                text
            }
            Format::Tsv => {
                let mut text = self.table.header.join("\t");
                text.push('\n');
                for row in &self.table.rows {
                    text.push_str(&row.join("\t"));
                    text.push('\n');
                }
                text
            }
        }
    }
}

/// A TSV cell: strings verbatim, everything else as compact JSON.
pub fn cell<T: serde::Serialize + ?Sized>(value: &T) -> String {
    match serde_json::to_value(value).expect("values serialize") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}
