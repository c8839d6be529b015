// Copyright 2026 The stcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! JSON documents for states, PDMs, channels and correlation tables.
//!
//! ```json
//! { "kind": "pdm", "payload": { "matrix": [[[re, im], ...], ...], "table": [[...]] } }
//! ```
//!
//! Complex scalars are `[re, im]` pairs and matrices are row-major nested
//! arrays. Every kind is validated on load: states must be PSD with unit
//! trace, channels CPTP, correlation tables must have `T[0][0] = 1`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{Channel, PauliTransferMatrix};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PauliTable};
use crate::pdm::{
    causality_f_tr, corr_vec3, pdm_from_correlations, require_density_matrix, Pdm, QubitState,
};

/// Default number of significant digits in emitted numbers.
pub const DEFAULT_PRECISION: usize = 12;

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let digits = digits.clamp(1, 17);
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Text form of a number rounded to `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r == 0.0 {
        "0".to_string()
    } else if r.abs() < 1e-4 || r.abs() >= 1e15 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds every number in a JSON value to `digits` significant digits.
pub fn round_json(v: &mut serde_json::Value, digits: usize) {
    match v {
        serde_json::Value::Number(n) => {
            if n.is_f64() {
                if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x, digits))) {
                    *n = r;
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(|x| round_json(x, digits)),
        serde_json::Value::Object(map) => map.values_mut().for_each(|x| round_json(x, digits)),
        _ => {}
    }
}

pub type MatrixRows = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_rows(m: &ComplexMatrix, digits: usize) -> MatrixRows {
    m.to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|z| [round_sig(z.re, digits), round_sig(z.im, digits)])
                .collect()
        })
        .collect()
}

pub fn rows_to_matrix(rows: &MatrixRows) -> Result<ComplexMatrix> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Format("matrix must be square".into()));
    }
    let entries: Vec<Complex64> = rows
        .iter()
        .flatten()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    ComplexMatrix::from_row_major(dim, &entries)
}

fn round_table(t: &[[f64; 4]; 4], digits: usize) -> [[f64; 4]; 4] {
    t.map(|row| row.map(|x| round_sig(x, digits)))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatePayload {
    /// 2×2 (one qubit) or 4×4 (two qubits).
    pub matrix: MatrixRows,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PdmPayload {
    pub matrix: Option<MatrixRows>,
    /// Authoritative on load; the matrix, when present, must agree with it.
    pub table: [[f64; 4]; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_tr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corr: Option<[f64; 3]>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ChannelPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<MatrixRows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ptm: Option<[[f64; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choi: Option<MatrixRows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorrelationsPayload {
    pub table: [[f64; 4]; 4],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum MatrixDocument {
    State(StatePayload),
    Pdm(PdmPayload),
    Channel(ChannelPayload),
    Correlations(CorrelationsPayload),
}

/// A document after kind-specific validation.
#[derive(Clone, Debug)]
pub enum Loaded {
    Qubit(QubitState),
    /// Two-qubit density matrix.
    TwoQubit(ComplexMatrix),
    Pdm(Pdm),
    Channel(Channel),
    Correlations(PauliTable),
}

impl MatrixDocument {
    pub fn from_pdm(p: &Pdm, digits: usize) -> Self {
        let c = corr_vec3(p);
        MatrixDocument::Pdm(PdmPayload {
            matrix: Some(matrix_to_rows(p.matrix(), digits)),
            table: round_table(&p.table().0, digits),
            eigenvalues: Some(p.eigenvalues().iter().map(|x| round_sig(*x, digits)).collect()),
            f_tr: Some(round_sig(causality_f_tr(p), digits)),
            corr: Some(c.to_array().map(|x| round_sig(x, digits))),
        })
    }

    pub fn from_state(m: &ComplexMatrix, digits: usize) -> Self {
        MatrixDocument::State(StatePayload {
            matrix: matrix_to_rows(m, digits),
        })
    }

    pub fn from_channel(c: &Channel, digits: usize) -> Self {
        MatrixDocument::Channel(ChannelPayload {
            kraus: c
                .kraus()
                .ok()
                .map(|ops| ops.iter().map(|k| matrix_to_rows(k, digits)).collect()),
            ptm: Some(round_table(&c.ptm().0, digits)),
            choi: Some(matrix_to_rows(c.choi(), digits)),
        })
    }

    pub fn from_correlations(t: &PauliTable, digits: usize) -> Self {
        MatrixDocument::Correlations(CorrelationsPayload {
            table: round_table(&t.0, digits),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MatrixDocument::State(_) => "state",
            MatrixDocument::Pdm(_) => "pdm",
            MatrixDocument::Channel(_) => "channel",
            MatrixDocument::Correlations(_) => "correlations",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    /// Runs the kind-specific validation.
    pub fn load(&self) -> Result<Loaded> {
        match self {
            MatrixDocument::State(s) => {
                let m = rows_to_matrix(&s.matrix)?;
                if m.dim() == 2 {
                    Ok(Loaded::Qubit(QubitState::from_matrix(m)?))
                } else {
                    require_density_matrix(&m)?;
                    Ok(Loaded::TwoQubit(m))
                }
            }
            MatrixDocument::Pdm(p) => {
                let pdm = pdm_from_correlations(&PauliTable(p.table))?;
                if let Some(rows) = &p.matrix {
                    let m = rows_to_matrix(rows)?;
                    let d = m.max_abs_diff(pdm.matrix());
                    if d > 1e-9 {
                        return Err(Error::validation(format!(
                            "PDM matrix and table disagree by {d:.3e}"
                        )));
                    }
                }
                Ok(Loaded::Pdm(pdm))
            }
            MatrixDocument::Channel(c) => {
                let channel = if let Some(ptm) = c.ptm {
                    Channel::from_ptm(PauliTransferMatrix(ptm))?
                } else if let Some(choi) = &c.choi {
                    Channel::from_choi(rows_to_matrix(choi)?)?
                } else if let Some(kraus) = &c.kraus {
                    let ops = kraus.iter().map(rows_to_matrix).collect::<Result<Vec<_>>>()?;
                    Channel::from_kraus(ops)?
                } else {
                    return Err(Error::Format(
                        "channel document needs one of 'ptm', 'choi', 'kraus'".into(),
                    ));
                };
                if let Some(choi) = &c.choi {
                    let d = rows_to_matrix(choi)?.max_abs_diff(channel.choi());
                    if d > 1e-9 {
                        return Err(Error::validation(format!(
                            "channel representations disagree by {d:.3e}"
                        )));
                    }
                }
                channel.require_cptp()?;
                Ok(Loaded::Channel(channel))
            }
            MatrixDocument::Correlations(c) => {
                let t = PauliTable(c.table);
                pdm_from_correlations(&t)?;
                Ok(Loaded::Correlations(t))
            }
        }
    }
}
