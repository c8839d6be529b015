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

//! Two-point pseudo-density matrices.
//!
//! A PDM is a Hermitian unit-trace 4×4 operator whose Pauli coefficients are
//! two-point correlations. Spatial PDMs are ordinary density matrices;
//! temporal ones, built from a qubit state and a channel between two
//! measurement times, may have negative eigenvalues.

use serde::Serialize;

use crate::channel::{check_weights, Channel};
use crate::error::{Error, Result};
use crate::geometry::CorrVec3;
use crate::linalg::{
    anticommutator, bloch_components, hermitian_eigenvalues, kron, partial_transpose_a,
    pauli_decompose, pauli_reconstruct, sigma, swap, trace_norm, ComplexMatrix, PauliTable,
    HERMITIAN_TOL, SPECTRAL_TOL,
};

/// PSD tolerance for states.
pub const STATE_PSD_TOL: f64 = 1e-10;

/// `f_tr` values within `CAUSALITY_CLAMP` of zero are reported as zero.
pub const CAUSALITY_CLAMP: f64 = 1e-12;

/// A single-qubit density matrix with its Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    matrix: ComplexMatrix,
    bloch: [f64; 3],
}

impl QubitState {
    /// `ρ = ½ (I + r·σ)` with `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("Bloch vector has non-finite entries"));
        }
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1.0 + 1e-9 {
            return Err(Error::validation(format!(
                "Bloch vector length {norm} exceeds 1"
            )));
        }
        let mut m = sigma(0);
        for (k, rk) in r.iter().enumerate() {
            m = m + sigma(k + 1).scale(*rk);
        }
        Ok(QubitState {
            matrix: m.scale(0.5),
            bloch: r,
        })
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        m.require_dim(2, "qubit state")?;
        let ev = hermitian_eigenvalues(&m)?;
        if ev[0] < -STATE_PSD_TOL {
            return Err(Error::validation(format!(
                "state is not PSD (min eigenvalue {:.3e})",
                ev[0]
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::validation(format!("state trace is {tr}, expected 1")));
        }
        Ok(QubitState {
            matrix: m,
            bloch: bloch_components(&m)?,
        })
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch([0.0; 3]).expect("origin")
    }

    /// `|0⟩⟨0|`
    pub fn zero() -> Self {
        Self::from_bloch([0.0, 0.0, 1.0]).expect("pole")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }
}

/// Pseudo-density matrix together with its Pauli correlation table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pdm {
    matrix: ComplexMatrix,
    table: PauliTable,
}

impl Pdm {
    /// Wraps a Hermitian unit-trace matrix. PSD is not required.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_dim(4, "PDM")?;
        let table = pauli_decompose(&matrix)?;
        Self::from_parts(matrix, table)
    }

    fn from_parts(matrix: ComplexMatrix, table: PauliTable) -> Result<Self> {
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::validation(format!("PDM trace is {tr}, expected 1")));
        }
        let worst = table.max_abs_entry();
        if worst > 1.0 + 1e-9 {
            return Err(Error::validation(format!(
                "Pauli correlation of magnitude {worst} exceeds 1"
            )));
        }
        Ok(Pdm { matrix, table })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn table(&self) -> &PauliTable {
        &self.table
    }

    /// Ascending spectrum; negative values witness temporal structure.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("PDM is Hermitian by construction")
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.eigenvalues()[0] >= -tol
    }
}

/// `(I_A ⊗ ε){ρ ⊗ I/2, SWAP}`: anticommutator first, then the channel on B.
pub fn pdm_temporal(rho: &QubitState, eps: &Channel) -> Result<Pdm> {
    eps.require_cptp()?;
    let half_id = sigma(0).scale(0.5);
    let pre = anticommutator(&kron(rho.matrix(), &half_id)?, &swap())?;
    Pdm::from_matrix(eps.apply_to_b(&pre)?)
}

/// The operator `E = Σ_ij (I ⊗ ε)(|i⟩⟨j| ⊗ |j⟩⟨i|) = (I ⊗ ε)(SWAP)`,
/// obtained here from the Choi matrix as `2 · Choiᵀᴬ`.
pub fn jamiolkowski_operator(eps: &Channel) -> Result<ComplexMatrix> {
    Ok(partial_transpose_a(eps.choi())?.scale(2.0))
}

/// Jordan-product form `{ρ ⊗ I/2, E}`, computed independently of [`pdm_temporal`].
pub fn pdm_jordan(rho: &QubitState, eps: &Channel) -> Result<Pdm> {
    eps.require_cptp()?;
    let e = jamiolkowski_operator(eps)?;
    let half_id = sigma(0).scale(0.5);
    Pdm::from_matrix(anticommutator(&kron(rho.matrix(), &half_id)?, &e)?)
}

/// A two-qubit density matrix viewed as a (spatial) PDM.
pub fn pdm_spatial(rho_ab: &ComplexMatrix) -> Result<Pdm> {
    require_density_matrix(rho_ab)?;
    Pdm::from_matrix(*rho_ab)
}

pub(crate) fn require_density_matrix(rho_ab: &ComplexMatrix) -> Result<()> {
    rho_ab.require_dim(4, "two-qubit density matrix")?;
    let ev = hermitian_eigenvalues(rho_ab)?;
    if ev[0] < -SPECTRAL_TOL {
        return Err(Error::validation(format!(
            "density matrix is not PSD (min eigenvalue {:.3e})",
            ev[0]
        )));
    }
    let tr = rho_ab.trace();
    if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
        return Err(Error::validation(format!(
            "density matrix trace is {tr}, expected 1"
        )));
    }
    Ok(())
}

/// `R = ¼ Σ T[i][j] σi⊗σj` from a correlation table.
pub fn pdm_from_correlations(t: &PauliTable) -> Result<Pdm> {
    if (t.0[0][0] - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "correlation table must have T[0][0] = 1, got {}",
            t.0[0][0]
        )));
    }
    if let Some(bad) = t.0.iter().flatten().find(|x| !x.is_finite() || x.abs() > 1.0 + 1e-9) {
        return Err(Error::invalid(format!(
            "correlation {bad} lies outside [-1, 1]"
        )));
    }
    Pdm::from_parts(pauli_reconstruct(t), *t)
}

/// Convex combination of PDMs.
pub fn mix_pdm(pdms: &[Pdm], weights: &[f64]) -> Result<Pdm> {
    if pdms.len() != weights.len() {
        return Err(Error::invalid(format!(
            "{} PDMs but {} weights",
            pdms.len(),
            weights.len()
        )));
    }
    check_weights(weights)?;
    let mut m = ComplexMatrix::zeros(4)?;
    for (p, &w) in pdms.iter().zip(weights) {
        m = m + p.matrix.scale(w);
    }
    let tables: Vec<PauliTable> = pdms.iter().map(|p| p.table).collect();
    Pdm::from_parts(m, PauliTable::combine(&tables, weights))
}

/// `⟨σi σj⟩ = Tr[(σi⊗σj) R]`.
pub fn correlation(r: &Pdm, i: usize, j: usize) -> Result<f64> {
    if i > 3 || j > 3 {
        return Err(Error::invalid(format!(
            "Pauli indices must be in 0..=3, got ({i}, {j})"
        )));
    }
    Ok(r.table.0[i][j])
}

/// `(⟨σ1σ1⟩, ⟨σ2σ2⟩, ⟨σ3σ3⟩)`
pub fn corr_vec3(r: &Pdm) -> CorrVec3 {
    let t = &r.table.0;
    CorrVec3::new(t[1][1], t[2][2], t[3][3])
}

/// Closed form of `⟨σkσk⟩` for the temporal PDM of `(ρ, ε)`:
/// `½ Tr[⟨σk⟩_ρ ε(σ0) σk + ε(σk) σk] = PTM[k][k] + r_k · PTM[k][0]`.
pub fn temporal_correlation_kk(rho: &QubitState, eps: &Channel, k: usize) -> Result<f64> {
    if !(1..=3).contains(&k) {
        return Err(Error::invalid(format!("k must be in 1..=3, got {k}")));
    }
    let ptm = eps.ptm();
    Ok(ptm.get(k, k) + rho.bloch()[k - 1] * ptm.get(k, 0))
}

/// Fast path for the correlation triple of a temporal PDM.
pub fn temporal_corr_vec3(rho: &QubitState, eps: &Channel) -> CorrVec3 {
    let c = |k| temporal_correlation_kk(rho, eps, k).expect("k in range");
    CorrVec3::new(c(1), c(2), c(3))
}

/// Causality measure `‖R‖_tr − 1`.
pub fn causality_f_tr(r: &Pdm) -> f64 {
    let f = trace_norm(&r.matrix).expect("PDM is Hermitian by construction") - 1.0;
    if f.abs() <= CAUSALITY_CLAMP {
        0.0
    } else {
        f.max(0.0)
    }
}

/// Negativity `(‖ρ^{T_A}‖_tr − 1)/2` of a two-qubit density matrix.
pub fn negativity(rho_ab: &ComplexMatrix) -> Result<f64> {
    require_density_matrix(rho_ab)?;
    let n = 0.5 * (trace_norm(&partial_transpose_a(rho_ab)?)? - 1.0);
    Ok(n.max(0.0))
}

/// Partial transpose of a PDM over A.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChoiOfPdm {
    #[serde(skip)]
    pub matrix: ComplexMatrix,
    /// False when the result is not PSD, i.e. the PDM did not come from a
    /// maximally mixed input.
    pub premise_holds: bool,
    pub min_eigenvalue: f64,
}

/// For PDMs with a maximally mixed input this is the channel's unit-trace
/// Choi matrix, and `f_tr(R) = 2·negativity(Choi)`.
pub fn choi_of_pdm(r: &Pdm) -> Result<ChoiOfPdm> {
    let matrix = partial_transpose_a(&r.matrix)?;
    let min_eigenvalue = hermitian_eigenvalues(&matrix)?[0];
    Ok(ChoiOfPdm {
        matrix,
        premise_holds: min_eigenvalue >= -SPECTRAL_TOL,
        min_eigenvalue,
    })
}
