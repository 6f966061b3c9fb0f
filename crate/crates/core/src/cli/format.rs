//! Rendering sequence prefixes: aligned table, CSV, JSON and OEIS b-file.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::sequence::SequenceTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
    Bfile,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Self::Table),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "bfile" => Ok(Self::Bfile),
            other => Err(format!("unknown format `{other}` (expected table, csv, json or bfile)")),
        }
    }
}

#[derive(Serialize)]
struct JsonSequence<'a> {
    kind: &'a str,
    d: u32,
    offset: usize,
    values: Vec<String>,
}

/// Render entries `offset..=n_max` (all present in `table`).
pub fn render(table: &SequenceTable, format: OutputFormat, offset: usize) -> String {
    let rows: Vec<(usize, String)> = table
        .iter()
        .filter(|&(n, _)| n >= offset)
        .map(|(n, v)| (n, v.to_string()))
        .collect();
    match format {
        OutputFormat::Table => {
            let width = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(1).max(5);
            let n_width = rows.iter().map(|(n, _)| n.to_string().len()).max().unwrap_or(1).max(1);
            let mut out = String::new();
            writeln!(
                out,
                "# {}(d={})",
                table.kind(),
                table.dimension()
            )
            .unwrap();
            writeln!(out, "{:>n_width$}  {:>width$}", "n", "value").unwrap();
            for (n, v) in &rows {
                writeln!(out, "{n:>n_width$}  {v:>width$}").unwrap();
            }
            out
        }
        OutputFormat::Csv => {
            let values: Vec<&str> = rows.iter().map(|(_, v)| v.as_str()).collect();
            format!("{}\n", values.join(","))
        }
        OutputFormat::Json => {
            let doc = JsonSequence {
                kind: table.kind().as_str(),
                d: table.dimension(),
                offset,
                values: rows.into_iter().map(|(_, v)| v).collect(),
            };
            format!("{}\n", serde_json::to_string(&doc).expect("serialisable"))
        }
        OutputFormat::Bfile => rows.iter().fold(String::new(), |mut out, (n, v)| {
            writeln!(out, "{n} {v}").unwrap();
            out
        }),
    }
}
