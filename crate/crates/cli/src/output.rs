//! Record encoding. CSV and JSON lines carry the same seven string fields.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use quartika::Quadruple;
use serde::{Deserialize, Serialize};

pub const HEADER: [&str; 7] = ["source", "n", "x", "y", "z", "w", "meta"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub source: String,
    pub n: String,
    pub x: String,
    pub y: String,
    pub z: String,
    pub w: String,
    /// `key=value` pairs joined by `;`
    pub meta: String,
}

impl OutputRecord {
    pub fn new(source: &str, q: &Quadruple, meta: &[(&str, String)]) -> Self {
        let meta = meta.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        OutputRecord {
            source: source.to_string(),
            n: q.n().to_string(),
            x: q.x().to_string(),
            y: q.y().to_string(),
            z: q.z().to_string(),
            w: q.w().to_string(),
            meta,
        }
    }

    /// Re-parses the decimal fields and checks the equation from scratch.
    pub fn verifies(&self) -> bool {
        let parsed: Option<Vec<quartika::Integer>> =
            [&self.n, &self.x, &self.y, &self.z, &self.w].iter().map(|s| s.parse().ok()).collect();
        match parsed.as_deref() {
            Some([n, x, y, z, w]) => quartika::exact_arith::verify(n, x, y, z, w),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub enum Sink {
    Csv(Box<csv::Writer<Box<dyn Write>>>),
    Json(Box<dyn Write>),
}

impl Sink {
    pub fn open(format: Format, out: Option<&Path>) -> io::Result<Sink> {
        let raw: Box<dyn Write> = match out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(raw);
                w.write_record(HEADER)?;
                Sink::Csv(Box::new(w))
            }
            Format::Json => Sink::Json(raw),
        })
    }

    pub fn emit(&mut self, rec: &OutputRecord) -> io::Result<()> {
        match self {
            Sink::Csv(w) => w.serialize(rec).map_err(io::Error::other),
            Sink::Json(w) => {
                serde_json::to_writer(&mut *w, rec)?;
                w.write_all(b"\n")
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self {
            Sink::Csv(mut w) => w.flush(),
            Sink::Json(mut w) => w.flush(),
        }
    }
}
