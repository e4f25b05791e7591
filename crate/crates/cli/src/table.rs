//! Numeric CSV tables. Values are written in Rust's shortest round-trip
//! float format, so reading a table back gives the same bits.

use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|x| format!("{x:?}")))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
        let mut table = Self::new(header);
        for (i, record) in r.records().enumerate() {
            let record = record?;
            if record.len() != table.header.len() {
                bail!(
                    "row {} has {} fields, expected {}",
                    i + 1,
                    record.len(),
                    table.header.len()
                );
            }
            let row = record
                .iter()
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .with_context(|| format!("row {}: `{f}` is not a number", i + 1))
                })
                .collect::<Result<Vec<_>>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file =
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        self.write(std::io::BufWriter::new(file))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file =
            std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        Self::read(std::io::BufReader::new(file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_bits() {
        let mut t = Table::new(vec!["t".into(), "x".into()]);
        t.push(vec![0.1, 1.0 / 3.0]);
        t.push(vec![-1e-300, f64::INFINITY]);
        t.push(vec![f64::NAN, 2.0]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        let back = Table::read(buf.as_slice()).unwrap();
        assert_eq!(back.header, t.header);
        for (a, b) in back.rows.iter().flatten().zip(t.rows.iter().flatten()) {
            assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(Table::read("a,b\n1\n".as_bytes()).is_err());
        assert!(Table::read("a\nx\n".as_bytes()).is_err());
    }
}
