//! Row-oriented output in plain, CSV, or JSON form.
//!
//! The same header/rows drive all three formats: plain text pads columns,
//! CSV quotes only when needed (header row mandatory), JSON emits an array
//! of objects keyed by the header names.

use clap::ValueEnum;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub struct Table {
    format: Format,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(format: Format) -> Self {
        Table {
            format,
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn header(&mut self, columns: Vec<String>) {
        self.columns = columns;
    }

    pub fn row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn finish(self) {
        match self.format {
            Format::Table => self.print_plain(),
            Format::Csv => self.print_csv(),
            Format::Json => self.print_json(),
        }
    }

    fn print_plain(&self) {
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            println!("{}", padded.join("  ").trim_end());
        };
        line(&self.columns);
        for row in &self.rows {
            line(row);
        }
    }

    fn print_csv(&self) {
        let escape = |cell: &String| {
            if cell.contains([',', '"', '\n']) {
                format!("\"{}\"", cell.replace('"', "\"\""))
            } else {
                cell.clone()
            }
        };
        let emit = |cells: &[String]| {
            println!("{}", cells.iter().map(escape).collect::<Vec<_>>().join(","));
        };
        emit(&self.columns);
        for row in &self.rows {
            emit(row);
        }
    }

    fn print_json(&self) {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                        .collect(),
                )
            })
            .collect();
        let doc = serde_json::json!({ "rows": rows });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("string table serializes")
        );
    }
}
