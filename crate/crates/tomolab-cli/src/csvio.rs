//! CSV emission. Floats are written with `f64`'s `Display` (shortest string
//! that round-trips), so identical numbers always produce identical bytes.

use std::fs;
use std::io;
use std::path::Path;

pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub struct CsvWriter {
    columns: usize,
    buf: String,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        CsvWriter {
            columns: header.len(),
            buf: format!("{}\n", header.join(",")),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "csv row width mismatch");
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        fs::write(path, &self.buf)
    }
}
