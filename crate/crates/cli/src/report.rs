use std::io::{self, Write};

use clap::ValueEnum;
use opkls::Result;
use serde_json::Value;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's output in all three renderings.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    /// Header row first.
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn emit(&self, format: Format) -> Result<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json)?;
                writeln!(out)?;
            }
            Format::Text => write!(out, "{}", self.text)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for row in &self.rows {
                    w.write_record(row).map_err(io::Error::from)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
