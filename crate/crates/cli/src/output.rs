//! Tables and formal sums rendered as text, JSON or CSV.

use atkinson_core::forest::Forest;
use atkinson_core::scalar::Scalar;
use atkinson_core::word::Word;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::CliError;

/// A value with its text and JSON renderings.
#[derive(Debug, Clone)]
pub struct Cell {
    pub text: String,
    pub json: Value,
}

impl Cell {
    pub fn word(w: &Word) -> Cell {
        Cell {
            text: w.to_syntax(),
            json: json!(w.values()),
        }
    }

    pub fn forest(f: &Forest) -> Cell {
        Cell {
            text: f.to_syntax(),
            json: json!(f.to_syntax()),
        }
    }

    pub fn scalar<S: Scalar>(x: &S) -> Cell {
        Cell {
            text: x.render(),
            json: x.to_json(),
        }
    }

    pub fn flag(b: bool) -> Cell {
        Cell {
            text: if b { "yes" } else { "no" }.into(),
            json: json!(b),
        }
    }

    pub fn text(s: impl Into<String>) -> Cell {
        let s = s.into();
        Cell {
            json: json!(s),
            text: s,
        }
    }

    pub fn count(n: usize) -> Cell {
        Cell {
            text: n.to_string(),
            json: json!(n),
        }
    }

    /// Big integers go to JSON as strings to keep them exact.
    pub fn integer(n: &impl ToString) -> Cell {
        let s = n.to_string();
        Cell {
            json: json!(s),
            text: s,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra top-level JSON fields.
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table {
            columns,
            rows: Vec::new(),
            meta: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text()),
            Format::Json => Ok(self.json_string()),
            Format::Csv => self.csv(),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, cell)| (c.to_string(), cell.json.clone()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let mut out = self.meta.clone();
        out.insert("rows".into(), Value::Array(rows));
        Value::Object(out)
    }

    fn json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.text.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{:<width$}", s, width = *w))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = vec![line(self.columns.clone())];
        for r in &self.rows {
            out.push(line(r.iter().map(|c| c.text.as_str()).collect()));
        }
        out.join("\n")
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Input(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| c.text.as_str()))
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(String::from_utf8(bytes)
            .expect("utf-8")
            .trim_end()
            .to_string())
    }
}

/// A formal sum: text is its canonical rendering, JSON its term list.
pub fn lincomb(
    text: String,
    json_terms: Value,
    input: Value,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(text),
        Format::Json => {
            let mut v = json!({ "input": input, "text": text });
            v["result"] = json_terms;
            Ok(serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Csv => Err(CliError::Input(
            "csv output is only available for scalar tables".into(),
        )),
    }
}
