use std::fs;
use std::path::PathBuf;

use opkls::poset::{build_lattice, Caps, GeometricLattice, MatroidSpec};
use opkls::{Error, Result};

#[derive(Debug, Clone)]
pub enum Source {
    Builtin(String),
    File(PathBuf),
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::Builtin(name) => name.clone(),
            Source::File(path) => path.display().to_string(),
        }
    }

    pub fn spec(&self) -> Result<MatroidSpec> {
        match self {
            Source::Builtin(name) => MatroidSpec::builtin(name),
            Source::File(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                let value: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                MatroidSpec::from_json(&value)
            }
        }
    }

    pub fn lattice(&self, caps: &Caps) -> Result<GeometricLattice> {
        build_lattice(&self.spec()?, caps)
    }
}
