//! JSON state files: `{"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}`.

use std::fs;
use std::path::Path;

use realign_core::qstate::diagnose;
use realign_core::{
    validate_density_matrix, BipartiteDims, Complex64, ComplexMatrix, DensityMatrix,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::format::sig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let dims = rho.dims();
        Self {
            dims: [dims.d_a(), dims.d_b()],
            matrix: rho
                .matrix()
                .to_rows()
                .into_iter()
                // `+ 0.0` folds negative zeros so files never show `-0.0`.
                .map(|row| row.into_iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed state file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// One matrix row per line; numbers use the shortest round-trip form.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| {
                format!(
                    "    {}",
                    serde_json::to_string(row).expect("finite entries serialize")
                )
            })
            .collect();
        format!(
            "{{\n  \"dims\": [{}, {}],\n  \"matrix\": [\n{}\n  ]\n}}\n",
            self.dims[0],
            self.dims[1],
            rows.join(",\n")
        )
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
    }

    /// Checks the shape and builds the raw matrix without validating it as a
    /// state.
    pub fn to_matrix(&self) -> Result<(BipartiteDims, ComplexMatrix)> {
        let dims = BipartiteDims::new(self.dims[0], self.dims[1])?;
        let side = dims.total();
        if self.matrix.len() != side || self.matrix.iter().any(|r| r.len() != side) {
            return Err(CliError::Input(format!(
                "DimensionMismatch: matrix must be {side}x{side} for dims {}x{}",
                self.dims[0], self.dims[1]
            )));
        }
        let data = self
            .matrix
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Ok((dims, ComplexMatrix::new(side, side, data)?))
    }

    /// Validated density matrix. Validation failures carry the measured
    /// trace, Hermiticity and spectral deviations in the message.
    pub fn to_state(&self, tol: f64) -> Result<DensityMatrix> {
        let (dims, m) = self.to_matrix()?;
        let diag = diagnose(&m, tol);
        validate_density_matrix(m, dims, tol).map_err(|e| {
            let min_eig = diag.min_eigenvalue.map_or("n/a".to_string(), |v| sig(v, 6));
            CliError::Input(format!(
                "{e}\n  trace deviation: {:.3e}\n  hermiticity deviation: {:.3e}\n  min eigenvalue: {min_eig}",
                diag.trace_deviation, diag.hermiticity_deviation
            ))
        })
    }
}
