//! CSV tables and the companion gnuplot scripts.

use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64.
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }
}

/// Plot recipe for a subcommand: axes, optional log scales and the
/// `(x column, y column)` series to draw. An x column of `#` plots against
/// the row index, labelled by the first column.
pub struct PlotSpec {
    pub xlabel: &'static str,
    pub ylabel: &'static str,
    pub logscale: &'static str,
    pub series: Vec<(&'static str, &'static str)>,
    /// Column whose values split the data into separate curves.
    pub split_by: Option<&'static str>,
}

pub fn gnuplot_script(table: &Table, csv_path: &Path, spec: &PlotSpec) -> String {
    let file = csv_path.display().to_string().replace('\'', "\\'");
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set xlabel '{}'\nset ylabel '{}'\n", spec.xlabel, spec.ylabel));
    if !spec.logscale.is_empty() {
        s.push_str(&format!("set logscale {}\n", spec.logscale));
    }
    s.push_str("set key outside\n");
    let col = |name: &str| table.column(name).map(|i| i + 1).unwrap_or(1);
    let xy = |x: &str, y: &str| match x {
        "#" => format!("0:{}:xticlabels(1)", col(y)),
        _ => format!("{}:{}", col(x), col(y)),
    };
    let mut parts = Vec::new();
    for &(x, y) in &spec.series {
        match spec.split_by {
            Some(key) => {
                let k = col(key);
                let mut seen: Vec<String> = Vec::new();
                for row in &table.rows {
                    let v = row[k - 1].render();
                    if !seen.contains(&v) {
                        seen.push(v);
                    }
                }
                for v in seen {
                    parts.push(format!(
                        "'{file}' skip 1 using (strcol({k}) eq '{v}' ? ${} : NaN):{} with linespoints title '{y} {v}'",
                        col(x),
                        col(y)
                    ));
                }
            }
            None => parts.push(format!("'{file}' skip 1 using {} with linespoints title '{y}'", xy(x, y))),
        }
    }
    s.push_str("plot ");
    s.push_str(&parts.join(", \\\n     "));
    s.push('\n');
    s
}
