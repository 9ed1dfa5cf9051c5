//! Output rendering: pretty JSON, CSV, and aligned text tables.
//!
//! Every subcommand builds an [`Artifact`]: a JSON document plus an optional
//! tabular view of the same data. Scalars are serialized with their exact
//! coefficient vector and a 30-digit decimal; table cells use a shorter
//! decimal controlled by `--digits`. All output is deterministic: keys are
//! sorted by `serde_json`, rows are emitted in construction order, and no
//! timestamps or durations are included.

use std::io::Write;

use iet_core::{ExactScalar, Interval};
use serde_json::{json, Value};

/// Decimal digits carried alongside exact coefficients in JSON documents.
pub const JSON_DIGITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a subcommand produced: a one-line summary, the full JSON document,
/// and (when the data is naturally tabular) a table for `csv`/`table` modes.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub summary: String,
    pub json: Value,
    pub table: Option<Table>,
}

impl Artifact {
    pub fn new(summary: impl Into<String>, json: Value) -> Artifact {
        Artifact {
            summary: summary.into(),
            json,
            table: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> Artifact {
        self.table = Some(table);
        self
    }

    /// Render in the requested format. CSV requires a tabular view.
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&self.json)?)),
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("this report has no tabular form; use --format json"))?;
                render_csv(table)
            }
            Format::Table => {
                let mut out = String::new();
                out.push_str(&self.summary);
                out.push('\n');
                if let Some(table) = &self.table {
                    out.push('\n');
                    out.push_str(&render_table(table));
                }
                Ok(out)
            }
        }
    }

    /// Write to `path` when given, otherwise to `sink`.
    pub fn emit(
        &self,
        format: Format,
        out_path: Option<&std::path::Path>,
        sink: &mut impl Write,
    ) -> anyhow::Result<()> {
        let text = self.render(format)?;
        match out_path {
            Some(path) => {
                std::fs::write(path, &text)?;
                writeln!(sink, "{}", path.display())?;
            }
            None => sink.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn render_csv(table: &Table) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.headers)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render_table(table: &Table) -> String {
    let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:w$}", c, w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&table.headers);
    out.push('\n');
    out.push_str(
        &widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("  "),
    );
    out.push('\n');
    for row in &table.rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// JSON value for a scalar: exact coefficients plus a 30-digit decimal.
pub fn scalar_value(x: &ExactScalar) -> Value {
    serde_json::to_value(x).unwrap_or_else(|_| json!({"coeffs": x.coeff_strings()}))
}

/// JSON value for a half-open interval.
pub fn interval_value(iv: &Interval) -> Value {
    json!({
        "left": scalar_value(&iv.left),
        "right": scalar_value(&iv.right),
        "width": scalar_value(&iv.width()),
    })
}

/// Table/CSV cell for a scalar: a plain decimal.
pub fn scalar_cell(x: &ExactScalar, digits: u32) -> String {
    x.to_decimal(digits)
        .unwrap_or_else(|_| format!("[{}]", x.coeff_strings().join(", ")))
}

/// Table/CSV cell for an interval.
pub fn interval_cell(iv: &Interval, digits: u32) -> String {
    format!(
        "[{}, {})",
        scalar_cell(&iv.left, digits),
        scalar_cell(&iv.right, digits)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use iet_core::presets::golden;

    #[test]
    fn tables_align_and_csv_quotes() {
        let mut t = Table::new(&["name", "value"]);
        t.push(vec!["a".into(), "1".into()]);
        t.push(vec!["long name".into(), "x,y".into()]);
        let rendered = render_table(&t);
        assert!(rendered.starts_with("name       value\n"));
        let csv = render_csv(&t).unwrap();
        assert!(csv.contains("\"x,y\""));
    }

    #[test]
    fn scalar_json_carries_coeffs_and_decimal() {
        let g = golden();
        let v = scalar_value(g.length(0));
        assert_eq!(v["coeffs"][0], "-1/2");
        assert!(v["decimal"].as_str().unwrap().starts_with("0.618033988749"));
    }

    #[test]
    fn csv_rendering_requires_a_table() {
        let art = Artifact::new("nothing tabular", json!({"a": 1}));
        assert!(art.render(Format::Csv).is_err());
        assert!(art.render(Format::Json).unwrap().contains("\"a\": 1"));
    }
}
