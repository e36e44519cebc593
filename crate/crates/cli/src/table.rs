//! Minimal CSV table: one `#` comment line, a header row, then data rows.

use std::fmt::Write as _;

/// A single CSV field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    /// Written as an empty field.
    Missing,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Real)
    }
}

fn write_cell(out: &mut String, c: Cell) {
    match c {
        Cell::Int(i) => write!(out, "{i}"),
        // 17 significant digits round-trip every f64
        Cell::Real(v) => write!(out, "{v:.16e}"),
        Cell::Missing => Ok(()),
    }
    .expect("writing to a String cannot fail");
}

#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<Cell>>) {
        for r in rows {
            self.push(r);
        }
    }

    /// Renders the table with `comment` as its first line.
    pub fn render(&self, comment: &str) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(comment);
        out.push('\n');
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, &c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_cell(&mut out, c);
            }
            out.push('\n');
        }
        out
    }
}
