//! Small column-ordered tables rendered as CSV, JSON or plain text.

use std::io::Write;

use crate::args::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    /// JSON has no non-finite numbers; those become null.
    fn json(&self) -> Result<String, CliError> {
        Ok(match self {
            Cell::Num(v) if !v.is_finite() => "null".to_string(),
            Cell::Num(v) => serde_json::to_string(v)?,
            Cell::Text(s) => serde_json::to_string(s)?,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.header.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::plain).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|j| self.rows.iter().map(|r| r[j].plain().len()).chain([self.header[j].len()]).max().unwrap_or(0))
                    .collect();
                let line = |cells: Vec<String>| {
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
                };
                writeln!(out, "{}", line(self.header.clone()))?;
                for row in &self.rows {
                    writeln!(out, "{}", line(row.iter().map(Cell::plain).collect()))?;
                }
            }
            Format::Json => {
                writeln!(out, "[")?;
                for (i, row) in self.rows.iter().enumerate() {
                    let fields = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| Ok(format!("{}: {}", serde_json::to_string(h)?, c.json()?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    let sep = if i + 1 < self.rows.len() { "," } else { "" };
                    writeln!(out, "  {{{}}}{sep}", fields.join(", "))?;
                }
                writeln!(out, "]")?;
            }
        }
        Ok(())
    }
}
