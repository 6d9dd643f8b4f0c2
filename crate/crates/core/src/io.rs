//! The JSON function file: three `2^M × 2^M` grids of exact rationals.
//!
//! ```json
//! { "M": 1,
//!   "F1": [["1", "0"], ["0", "0"]],
//!   "F2": [["1/2", "-3"], ["0", "2"]],
//!   "F3": [["1", "1"], ["1", "1"]] }
//! ```
//!
//! Rows are indexed by ascending `y` cell, columns by ascending `x` cell.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar;
use crate::stepfun::StepFun2D;
use crate::triple::Triple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFile {
    #[serde(rename = "M")]
    pub resolution: u32,
    #[serde(rename = "F1")]
    pub f1: Vec<Vec<String>>,
    #[serde(rename = "F2")]
    pub f2: Vec<Vec<String>>,
    #[serde(rename = "F3")]
    pub f3: Vec<Vec<String>>,
}

fn grid_strings(f: &StepFun2D) -> Vec<Vec<String>> {
    f.rows().map(|row| row.iter().map(scalar::render).collect()).collect()
}

fn parse_grid(name: &str, m: u32, rows: &[Vec<String>]) -> Result<StepFun2D> {
    let side = 1usize << m;
    if rows.len() != side {
        return Err(Error::Shape(format!("{name}: expected {side} rows at M={m}, got {}", rows.len())));
    }
    let mut cells = Vec::with_capacity(side * side);
    for (y, row) in rows.iter().enumerate() {
        if row.len() != side {
            return Err(Error::Shape(format!(
                "{name}: row {y} has {} entries, expected {side}",
                row.len()
            )));
        }
        for (x, s) in row.iter().enumerate() {
            cells.push(scalar::parse(s).map_err(|e| Error::Parse(format!("{name}[{y}][{x}]: {e}")))?);
        }
    }
    StepFun2D::new(m, cells)
}

impl FunctionFile {
    pub fn from_triple(triple: &Triple) -> Self {
        Self {
            resolution: triple.resolution(),
            f1: grid_strings(triple.f1()),
            f2: grid_strings(triple.f2()),
            f3: grid_strings(triple.f3()),
        }
    }

    pub fn to_triple(&self) -> Result<Triple> {
        if self.resolution > 12 {
            return Err(Error::Shape(format!("M={} is too large for a function file", self.resolution)));
        }
        let m = self.resolution;
        Triple::new(
            parse_grid("F1", m, &self.f1)?,
            parse_grid("F2", m, &self.f2)?,
            parse_grid("F3", m, &self.f3)?,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("function file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("string grids serialise")
    }

    pub fn read(path: &Path) -> Result<Triple> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)?.to_triple()
    }
}
