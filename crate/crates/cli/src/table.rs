use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};

/// Output format for sweep tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One computed row. Cells line up with the table's column names; a cell is
/// `None` when the module refused that input, and `error` carries its message.
#[derive(Debug, Clone)]
pub struct Row {
    pub values: Vec<Option<f64>>,
    pub error: Option<String>,
}

impl Row {
    pub fn ok(values: Vec<f64>) -> Self {
        Row { values: values.into_iter().map(Some).collect(), error: None }
    }

    /// A row whose abscissa is known but whose dependent cells all failed.
    pub fn failed(abscissa: f64, width: usize, message: String) -> Self {
        let mut values = vec![None; width];
        values[0] = Some(abscissa);
        Row { values, error: Some(message) }
    }
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
}

impl SweepTable {
    pub fn new(columns: Vec<&'static str>) -> Self {
        SweepTable { columns, rows: Vec::new() }
    }
}

/// 12 significant digits: enough that a CSV round trip reproduces the same
/// string, short enough to keep files diffable.
pub fn fmt12(v: f64) -> String {
    if !v.is_finite() {
        return "NaN".to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v:.11e}")
}

fn cell(v: Option<f64>) -> String {
    match v {
        Some(v) => fmt12(v),
        None => "NaN".to_string(),
    }
}

pub fn write_csv(table: &SweepTable, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.values.iter().map(|v| cell(*v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(table: &SweepTable, meta: &Value, out: &mut dyn Write) -> Result<()> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (name, v) in table.columns.iter().zip(&row.values) {
                obj.insert(name.to_string(), match v {
                    Some(v) => json!(v),
                    None => Value::Null,
                });
            }
            if let Some(msg) = &row.error {
                obj.insert("error".to_string(), json!(msg));
            }
            Value::Object(obj)
        })
        .collect();
    let doc = json!({ "meta": meta, "rows": rows });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Write the table to `out` (stdout when `None`) in the requested format.
pub fn emit(
    table: &SweepTable,
    meta: &Value,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<()> {
    let mut sink: Box<dyn Write> = match out {
        None => Box::new(std::io::stdout().lock()),
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
    };
    match format {
        OutputFormat::Csv => write_csv(table, &mut sink)?,
        OutputFormat::Json => write_json(table, meta, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

/// Machine-readable account of every failed row, for stderr when exiting nonzero.
pub fn failure_summary(table: &SweepTable) -> Option<Value> {
    let failures: Vec<Value> = table
        .rows
        .iter()
        .enumerate()
        .filter_map(|(i, row)| {
            row.error.as_ref().map(|msg| {
                json!({
                    "row": i,
                    (table.columns[0]): row.values[0],
                    "error": msg,
                })
            })
        })
        .collect();
    if failures.is_empty() {
        None
    } else {
        Some(json!({ "row_failures": failures }))
    }
}
