//! JSON density-matrix files: `{"matrix": [[[re, im], ...], ...], "label": "..."}`.

use crate::CliError;
use ghzsym::linalg::{c, ComplexMatrix8, DensityMatrix, DIM};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix8, label: Option<String>) -> Self {
        let matrix =
            m.0.iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect();
        MatrixFile { matrix, label }
    }

    pub fn from_density(rho: &DensityMatrix, label: Option<String>) -> Self {
        Self::from_matrix(rho.matrix(), label)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::input("MalformedMatrixFile", e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input("Io", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("matrix file serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::input("Io", format!("{}: {e}", path.display())))
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix8, CliError> {
        if self.matrix.len() != DIM || self.matrix.iter().any(|row| row.len() != DIM) {
            return Err(CliError::input(
                "MalformedMatrixFile",
                format!("expected an {DIM}x{DIM} array of [re, im] pairs"),
            ));
        }
        if self
            .matrix
            .iter()
            .flatten()
            .flatten()
            .any(|v| !v.is_finite())
        {
            return Err(CliError::input(
                "MalformedMatrixFile",
                "matrix entries must be finite",
            ));
        }
        Ok(ComplexMatrix8::from_fn(|i, j| {
            let [re, im] = self.matrix[i][j];
            c(re, im)
        }))
    }

    /// Parses and validates as a density matrix.
    pub fn to_density(&self) -> Result<DensityMatrix, CliError> {
        Ok(DensityMatrix::new(self.to_matrix()?)?)
    }
}
