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

//! Qubit CPTP channels held in Kraus, Pauli-transfer and Choi form.
//!
//! A [`Channel`] always carries its Pauli-transfer matrix (PTM) and its
//! unit-trace Choi matrix; Kraus operators are cached whenever the map is
//! completely positive. All representations are fixed at construction.
//!
//! Conventions:
//! * `PTM[i][j] = ½ Tr[σi · ε(σj)]`, so row 0 is `(1, 0, 0, 0)` for a
//!   trace-preserving map and column 0 carries the non-unital shift.
//! * `Choi = ½ Σ_ij |i⟩⟨j| ⊗ ε(|i⟩⟨j|)`, input on the major factor.
//! * Kraus operators act as `ε(ρ) = Σ K ρ K†`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen4, kron, min_eigenvalue, partial_trace_b, pauli_decompose, pauli_reconstruct,
    sigma, ComplexMatrix, Pauli, PauliTable,
};

/// Tolerance for CPTP validation and representation agreement.
pub const CPTP_TOL: f64 = 1e-9;

/// Eigenvalues of the Choi matrix below this are dropped when extracting Kraus operators.
const KRAUS_CUTOFF: f64 = 1e-14;

/// Real 4×4 Pauli-transfer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTransferMatrix(pub [[f64; 4]; 4]);

impl PauliTransferMatrix {
    pub fn identity() -> Self {
        Self::diagonal([1.0; 4])
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = [[0.0; 4]; 4];
        for k in 0..4 {
            m[k][k] = d[k];
        }
        PauliTransferMatrix(m)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// Non-unital shift: where the channel sends the maximally mixed state's Bloch vector.
    pub fn shift(&self) -> [f64; 3] {
        [self.0[1][0], self.0[2][0], self.0[3][0]]
    }
}

/// A bijection of the Pauli axes `{1, 2, 3}`, stored as images of 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u8; 3]", into = "[u8; 3]")]
pub struct AxisPermutation([u8; 3]);

impl AxisPermutation {
    pub const IDENTITY: AxisPermutation = AxisPermutation([1, 2, 3]);

    /// All six permutations, identity first.
    pub const ALL: [AxisPermutation; 6] = [
        AxisPermutation([1, 2, 3]),
        AxisPermutation([1, 3, 2]),
        AxisPermutation([2, 1, 3]),
        AxisPermutation([2, 3, 1]),
        AxisPermutation([3, 1, 2]),
        AxisPermutation([3, 2, 1]),
    ];

    pub fn new(images: [u8; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &a in &images {
            if !(1..=3).contains(&a) || seen[(a - 1) as usize] {
                return Err(Error::invalid(format!(
                    "axis permutation must be a bijection on {{1,2,3}}, got {images:?}"
                )));
            }
            seen[(a - 1) as usize] = true;
        }
        Ok(AxisPermutation(images))
    }

    /// Image of a Pauli index; 0 is fixed.
    pub fn apply(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.0[k - 1] as usize
        }
    }

    pub fn images(&self) -> [u8; 3] {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl TryFrom<[u8; 3]> for AxisPermutation {
    type Error = Error;

    fn try_from(images: [u8; 3]) -> Result<Self> {
        AxisPermutation::new(images)
    }
}

impl From<AxisPermutation> for [u8; 3] {
    fn from(p: AxisPermutation) -> [u8; 3] {
        p.0
    }
}

impl fmt::Display for AxisPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Parameters of the extremal trigonometric channel family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalParams {
    u: f64,
    v: f64,
    permutation: AxisPermutation,
}

impl ExtremalParams {
    /// `u ∈ [0, 2π]`, `v ∈ [0, π]`.
    pub fn new(u: f64, v: f64, permutation: AxisPermutation) -> Result<Self> {
        if !(0.0..=TAU).contains(&u) {
            return Err(Error::invalid(format!("u must lie in [0, 2π], got {u}")));
        }
        if !(0.0..=PI).contains(&v) {
            return Err(Error::invalid(format!("v must lie in [0, π], got {v}")));
        }
        Ok(ExtremalParams { u, v, permutation })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn permutation(&self) -> AxisPermutation {
        self.permutation
    }
}

/// Outcome of a CPTP check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CptpReport {
    /// Smallest eigenvalue of the unit-trace Choi matrix.
    pub min_choi_eigenvalue: f64,
    /// `max |2·Tr_out(Choi) − I|`, zero for trace-preserving maps.
    pub tp_residual: f64,
    /// Largest disagreement between the stored representations.
    pub representation_residual: f64,
    pub passed: bool,
}

/// A linear map on one qubit, normally CPTP.
#[derive(Clone, Debug)]
pub struct Channel {
    kraus: Option<Vec<ComplexMatrix>>,
    ptm: PauliTransferMatrix,
    choi: ComplexMatrix,
}

impl Channel {
    /// Channel with Schrödinger action `ρ → Σ K ρ K†`.
    pub fn from_kraus(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let choi = kraus_to_choi(&ops)?;
        let ptm = kraus_to_ptm(&ops)?;
        Ok(Channel {
            kraus: Some(ops),
            ptm,
            choi,
        })
    }

    /// Any real PTM is accepted; Kraus operators exist only when the map is CP.
    pub fn from_ptm(ptm: PauliTransferMatrix) -> Result<Self> {
        if !ptm.is_finite() {
            return Err(Error::invalid("PTM has non-finite entries"));
        }
        let choi = ptm_to_choi(&ptm);
        let kraus = choi_to_kraus(&choi).ok();
        Ok(Channel { kraus, ptm, choi })
    }

    /// From a unit-trace Choi matrix.
    pub fn from_choi(choi: ComplexMatrix) -> Result<Self> {
        choi.require_dim(4, "Choi matrix")?;
        let ptm = choi_to_ptm(&choi)?;
        let kraus = choi_to_kraus(&choi).ok();
        Ok(Channel { kraus, ptm, choi })
    }

    /// Conjugation by a single-qubit unitary.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        u.require_dim(2, "unitary")?;
        let defect = u.adjoint().matmul(&u)?.max_abs_diff(&ComplexMatrix::identity(2)?);
        if defect > CPTP_TOL {
            return Err(Error::invalid(format!("matrix is not unitary (defect {defect:.3e})")));
        }
        Self::from_kraus(vec![u])
    }

    pub fn identity() -> Self {
        Self::from_kraus(vec![sigma(0)]).expect("identity")
    }

    /// `ρ → σk ρ σk`
    pub fn pauli_unitary(k: Pauli) -> Self {
        Self::from_kraus(vec![k.matrix()]).expect("Pauli unitary")
    }

    /// `ρ → (1 − p) ρ + p I/2`
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_unit_interval("depolarizing strength", p)?;
        Self::pauli_mixture([1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p])
    }

    /// The constant map to `I/2`.
    pub fn fully_depolarizing() -> Self {
        Self::depolarizing(1.0).expect("p = 1")
    }

    /// `ρ → (1 − p/2) ρ + (p/2) σ3 ρ σ3`; `p = 1` erases all coherence.
    pub fn dephasing(p: f64) -> Result<Self> {
        check_unit_interval("dephasing strength", p)?;
        Self::pauli_mixture([1.0 - 0.5 * p, 0.0, 0.0, 0.5 * p])
    }

    /// Amplitude damping towards `|0⟩` with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        check_unit_interval("damping probability", gamma)?;
        let k0 = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()])?;
        let k1 = ComplexMatrix::from_real(2, &[0.0, gamma.sqrt(), 0.0, 0.0])?;
        Self::from_kraus(vec![k0, k1])
    }

    /// Pauli channel `ρ → Σ p_k σk ρ σk`.
    pub fn pauli_mixture(probs: [f64; 4]) -> Result<Self> {
        check_weights(&probs)?;
        let ops = Pauli::ALL
            .iter()
            .zip(probs)
            .filter(|(_, p)| *p > 0.0)
            .map(|(s, p)| s.matrix().scale(p.sqrt()))
            .collect();
        Self::from_kraus(ops)
    }

    /// Transposition in the computational basis: positive and trace
    /// preserving but not completely positive.
    pub fn transpose_map() -> Self {
        Self::from_ptm(PauliTransferMatrix::diagonal([1.0, 1.0, -1.0, 1.0])).expect("finite")
    }

    /// Looks up a named channel, `name[:param]`.
    pub fn named(name: &str, param: Option<f64>) -> Result<Self> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::invalid(format!("channel '{what}' requires a parameter")))
        };
        match name {
            "identity" => Ok(Self::identity()),
            "fully-depolarizing" => Ok(Self::fully_depolarizing()),
            "depolarizing" => Self::depolarizing(need(name)?),
            "dephasing" => Self::dephasing(need(name)?),
            "amplitude-damping" => Self::amplitude_damping(need(name)?),
            "pauli-x" => Ok(Self::pauli_unitary(Pauli::X)),
            "pauli-y" => Ok(Self::pauli_unitary(Pauli::Y)),
            "pauli-z" => Ok(Self::pauli_unitary(Pauli::Z)),
            "transpose" => Ok(Self::transpose_map()),
            other => Err(Error::invalid(format!("unknown channel '{other}'"))),
        }
    }

    pub fn ptm(&self) -> &PauliTransferMatrix {
        &self.ptm
    }

    /// Unit-trace Choi matrix.
    pub fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }

    /// Kraus operators; absent when the map is not completely positive.
    pub fn kraus(&self) -> Result<&[ComplexMatrix]> {
        self.kraus.as_deref().ok_or_else(|| {
            Error::State("no Kraus representation: map is not completely positive".into())
        })
    }

    pub fn validate(&self) -> CptpReport {
        validate_cptp(self)
    }

    /// Errors unless the channel passes [`validate_cptp`].
    pub fn require_cptp(&self) -> Result<()> {
        let report = self.validate();
        if report.passed {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "channel is not CPTP (min Choi eigenvalue {:.3e}, TP residual {:.3e})",
                report.min_choi_eigenvalue, report.tp_residual
            )))
        }
    }

    pub fn is_unital(&self) -> bool {
        is_unital(self)
    }

    /// Schrödinger action on a single-qubit operator.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        rho.require_dim(2, "single-qubit input")?;
        match &self.kraus {
            Some(ops) => {
                let mut out = ComplexMatrix::zeros(2)?;
                for k in ops {
                    out = out + k.conjugate(rho)?;
                }
                Ok(out)
            }
            None => Ok(apply_ptm(&self.ptm, rho)),
        }
    }

    /// `(I ⊗ ε)(m)` on a two-qubit operator.
    pub fn apply_to_b(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        m.require_dim(4, "two-qubit input")?;
        let mut out = ComplexMatrix::zeros(4)?;
        for a in 0..2 {
            for c in 0..2 {
                let block = ComplexMatrix::from_fn(2, |r, s| m[(2 * a + r, 2 * c + s)])?;
                let mapped = match &self.kraus {
                    Some(ops) => {
                        let mut acc = ComplexMatrix::zeros(2)?;
                        for k in ops {
                            acc = acc + k.matmul(&block)?.matmul(&k.adjoint())?;
                        }
                        acc
                    }
                    None => apply_ptm(&self.ptm, &block),
                };
                for r in 0..2 {
                    for s in 0..2 {
                        out[(2 * a + r, 2 * c + s)] = mapped[(r, s)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Channel whose axes are relabelled by `perm`: `PTM'[π(i)][π(j)] = PTM[i][j]`.
    pub fn permute_axes(&self, perm: AxisPermutation) -> Result<Self> {
        if perm.is_identity() {
            return Ok(self.clone());
        }
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[perm.apply(i)][perm.apply(j)] = self.ptm.0[i][j];
            }
        }
        Self::from_ptm(PauliTransferMatrix(out))
    }
}

fn check_unit_interval(what: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} must lie in [0, 1], got {x}")))
    }
}

/// Weights must be nonnegative and sum to one within 1e-12.
pub(crate) fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::invalid("empty weight list"));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::invalid(format!("weights must be nonnegative, got {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!("weights must sum to 1, got {total}")));
    }
    Ok(())
}

/// `ε(X)` computed from the PTM by linearity; valid for any complex `X`.
fn apply_ptm(ptm: &PauliTransferMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2).expect("2x2");
    for j in 0..4 {
        let coeff = sigma(j).matmul(x).expect("2x2").trace() * 0.5;
        for i in 0..4 {
            let w = ptm.0[i][j];
            if w != 0.0 {
                out = out + sigma(i).scale_complex(coeff * w);
            }
        }
    }
    out
}

/// Unit-trace Choi matrix straight from the definition `½ Σ |i⟩⟨j| ⊗ Σ K|i⟩⟨j|K†`.
pub fn kraus_to_choi(ops: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    if ops.is_empty() {
        return Err(Error::State("empty Kraus list".into()));
    }
    for k in ops {
        k.require_dim(2, "Kraus operator")?;
    }
    let mut choi = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            let mut eij = ComplexMatrix::zeros(2)?;
            eij[(i, j)] = Complex64::new(1.0, 0.0);
            let mut image = ComplexMatrix::zeros(2)?;
            for k in ops {
                image = image + k.conjugate(&eij)?;
            }
            choi = choi + kron(&eij, &image)?;
        }
    }
    Ok(choi.scale(0.5))
}

/// PTM from Kraus operators by mapping each Pauli.
pub fn kraus_to_ptm(ops: &[ComplexMatrix]) -> Result<PauliTransferMatrix> {
    if ops.is_empty() {
        return Err(Error::State("empty Kraus list".into()));
    }
    let mut ptm = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut image = ComplexMatrix::zeros(2)?;
        for k in ops {
            k.require_dim(2, "Kraus operator")?;
            image = image + k.conjugate(&sigma(j))?;
        }
        for (i, row) in ptm.iter_mut().enumerate() {
            row[j] = 0.5 * sigma(i).matmul(&image)?.trace().re;
        }
    }
    Ok(PauliTransferMatrix(ptm))
}

/// The Choi matrix has Pauli coefficients `c[a][b] = sign(σaᵀ) · PTM[b][a]`.
pub fn ptm_to_choi(ptm: &PauliTransferMatrix) -> ComplexMatrix {
    let mut t = PauliTable::zeros();
    for a in 0..4 {
        let sign = Pauli::ALL[a].transpose_sign();
        for b in 0..4 {
            t.0[a][b] = sign * ptm.0[b][a];
        }
    }
    pauli_reconstruct(&t)
}

pub fn choi_to_ptm(choi: &ComplexMatrix) -> Result<PauliTransferMatrix> {
    let t = pauli_decompose(choi)?;
    let mut ptm = [[0.0; 4]; 4];
    for a in 0..4 {
        let sign = Pauli::ALL[a].transpose_sign();
        for b in 0..4 {
            ptm[b][a] = sign * t.0[a][b];
        }
    }
    Ok(PauliTransferMatrix(ptm))
}

/// Canonical Kraus operators from the eigendecomposition of a PSD Choi matrix.
pub fn choi_to_kraus(choi: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let eig = hermitian_eigen4(choi)?;
    if eig[0].0 < -CPTP_TOL {
        return Err(Error::validation(format!(
            "Choi matrix is not PSD (min eigenvalue {:.3e})",
            eig[0].0
        )));
    }
    let mut ops = Vec::new();
    for (lambda, v) in eig.into_iter().rev() {
        if lambda <= KRAUS_CUTOFF {
            continue;
        }
        // Choi = ½ Σ |K⟩⟩⟨⟨K| with |K⟩⟩[2i + b] = K[b][i].
        let s = (2.0 * lambda).sqrt();
        ops.push(ComplexMatrix::from_fn(2, |b, i| v[2 * i + b] * s)?);
    }
    if ops.is_empty() {
        return Err(Error::validation("Choi matrix is zero"));
    }
    Ok(ops)
}

/// Checks complete positivity, trace preservation and representation agreement.
pub fn validate_cptp(c: &Channel) -> CptpReport {
    let min_choi_eigenvalue = min_eigenvalue(&c.choi).unwrap_or(f64::NEG_INFINITY);
    let tp_residual = partial_trace_b(&c.choi)
        .map(|m| m.scale(2.0).max_abs_diff(&sigma(0)))
        .unwrap_or(f64::INFINITY);
    let mut representation_residual = ptm_to_choi(&c.ptm).max_abs_diff(&c.choi);
    if let Some(ops) = &c.kraus {
        let via_kraus = kraus_to_choi(ops)
            .map(|k| k.max_abs_diff(&c.choi))
            .unwrap_or(f64::INFINITY);
        representation_residual = representation_residual.max(via_kraus);
    }
    let passed = min_choi_eigenvalue >= -CPTP_TOL
        && tp_residual <= CPTP_TOL
        && representation_residual <= CPTP_TOL;
    CptpReport {
        min_choi_eigenvalue,
        tp_residual,
        representation_residual,
        passed,
    }
}

/// `ε(I) = I`, i.e. PTM column 0 equals `(1, 0, 0, 0)`.
pub fn is_unital(c: &Channel) -> bool {
    (c.ptm.0[0][0] - 1.0).abs() <= CPTP_TOL
        && c.ptm.shift().iter().all(|s| s.abs() <= CPTP_TOL)
}

/// Convex combination of channels.
pub fn mix(channels: &[Channel], weights: &[f64]) -> Result<Channel> {
    if channels.len() != weights.len() {
        return Err(Error::invalid(format!(
            "{} channels but {} weights",
            channels.len(),
            weights.len()
        )));
    }
    check_weights(weights)?;
    let mut choi = ComplexMatrix::zeros(4)?;
    let mut ptm = [[0.0; 4]; 4];
    for (c, &w) in channels.iter().zip(weights) {
        choi = choi + c.choi.scale(w);
        for i in 0..4 {
            for j in 0..4 {
                ptm[i][j] += w * c.ptm.0[i][j];
            }
        }
    }
    // Stacking √w·K is an exact Kraus set for the mixture.
    let kraus = channels
        .iter()
        .zip(weights)
        .filter(|(_, w)| **w > 0.0)
        .map(|(c, w)| {
            c.kraus
                .as_ref()
                .map(|ops| ops.iter().map(|k| k.scale(w.sqrt())).collect::<Vec<_>>())
        })
        .collect::<Option<Vec<_>>>()
        .map(|lists| lists.concat());
    Ok(Channel {
        kraus,
        ptm: PauliTransferMatrix(ptm),
        choi,
    })
}

/// Member of the extremal trigonometric family.
///
/// The stored Kraus operators are the adjoints of
/// `K+ = cos(v/2)cos(u/2) σ0 + sin(v/2)sin(u/2) σ3` and
/// `K- = sin(v/2)cos(u/2) σ1 − i cos(v/2)sin(u/2) σ2`, which gives the action
/// `σ0 → σ0 + sin u sin v σ3`, `σ1 → cos u σ1`, `σ2 → cos v σ2`,
/// `σ3 → cos u cos v σ3` and `Σ K†K = I`. The axis permutation then relabels
/// the Pauli axes.
pub fn extremal_channel(p: &ExtremalParams) -> Channel {
    let (su, cu) = (0.5 * p.u).sin_cos();
    let (sv, cv) = (0.5 * p.v).sin_cos();
    let k_plus = sigma(0).scale(cv * cu) + sigma(3).scale(sv * su);
    let k_minus = sigma(1).scale(sv * cu) + sigma(2).scale_complex(Complex64::new(0.0, -cv * su));
    let base = Channel::from_kraus(vec![k_plus.adjoint(), k_minus.adjoint()]).expect("2x2 Kraus");
    base.permute_axes(p.permutation)
        .expect("axis permutation of a finite PTM")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, BellState};

    fn params(u: f64, v: f64) -> ExtremalParams {
        ExtremalParams::new(u, v, AxisPermutation::IDENTITY).unwrap()
    }

    fn assert_ptm(c: &Channel, expected: [[f64; 4]; 4], tol: f64) {
        let d = c.ptm().max_abs_diff(&PauliTransferMatrix(expected));
        assert!(d <= tol, "PTM off by {d}: {:?}", c.ptm());
    }

    #[test]
    fn extremal_identity_point() {
        let c = extremal_channel(&params(0.0, 0.0));
        assert_ptm(&c, PauliTransferMatrix::identity().0, 1e-15);
        assert!(c.validate().passed);
    }

    #[test]
    fn extremal_u_pi_is_sigma2_conjugation() {
        let c = extremal_channel(&params(PI, 0.0));
        assert_ptm(&c, PauliTransferMatrix::diagonal([1.0, -1.0, 1.0, -1.0]).0, 1e-15);
        // Oracle: conjugate each Pauli by σ2 explicitly.
        let y = Channel::pauli_unitary(Pauli::Y);
        assert!(c.ptm().max_abs_diff(y.ptm()) < 1e-15);
    }

    #[test]
    fn extremal_u_equals_v_is_amplitude_damping() {
        for theta in [0.1, 0.4, 0.9, 1.3, PI / 2.0] {
            let c = extremal_channel(&params(theta, theta));
            let s2 = theta.sin().powi(2);
            let mut expected = PauliTransferMatrix::diagonal([
                1.0,
                theta.cos(),
                theta.cos(),
                theta.cos().powi(2),
            ])
            .0;
            expected[3][0] = s2;
            assert_ptm(&c, expected, 1e-12);
            let ad = Channel::amplitude_damping(s2).unwrap();
            assert!(c.ptm().max_abs_diff(ad.ptm()) < 1e-12, "theta = {theta}");
        }
    }

    #[test]
    fn extremal_action_lines_on_grid() {
        for a in 0..=40 {
            for b in 0..=20 {
                let (u, v) = (a as f64 * PI / 20.0, b as f64 * PI / 20.0);
                let c = extremal_channel(&params(u.min(TAU), v.min(PI)));
                let mut expected =
                    PauliTransferMatrix::diagonal([1.0, u.cos(), v.cos(), u.cos() * v.cos()]).0;
                expected[3][0] = u.sin() * v.sin();
                assert_ptm(&c, expected, 1e-9);
                let r = c.validate();
                assert!(r.passed, "{r:?} at u={u} v={v}");
                let ops = c.kraus().unwrap();
                let completeness = ops
                    .iter()
                    .fold(ComplexMatrix::zeros(2).unwrap(), |acc, k| {
                        acc + k.adjoint().matmul(k).unwrap()
                    });
                assert!(completeness.max_abs_diff(&sigma(0)) < 1e-9);
            }
        }
    }

    #[test]
    fn permutation_relabels_axes() {
        let perm = AxisPermutation::new([3, 1, 2]).unwrap();
        let (u, v) = (1.1, 0.7);
        let c = extremal_channel(&ExtremalParams::new(u, v, perm).unwrap());
        let ptm = c.ptm();
        assert!((ptm.get(3, 3) - u.cos()).abs() < 1e-12);
        assert!((ptm.get(1, 1) - v.cos()).abs() < 1e-12);
        assert!((ptm.get(2, 2) - u.cos() * v.cos()).abs() < 1e-12);
        assert!((ptm.get(2, 0) - u.sin() * v.sin()).abs() < 1e-12);
        assert!(c.validate().passed);
        assert!(c.kraus().is_ok());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ExtremalParams::new(-0.1, 0.0, AxisPermutation::IDENTITY).is_err());
        assert!(ExtremalParams::new(0.0, 3.2, AxisPermutation::IDENTITY).is_err());
        assert!(AxisPermutation::new([1, 1, 2]).is_err());
        assert!(AxisPermutation::new([0, 1, 2]).is_err());
    }

    #[test]
    fn identity_and_depolarizing_choi() {
        let id = Channel::identity();
        assert!(id.choi().max_abs_diff(&BellState::PhiPlus.density_matrix()) < 1e-15);
        let r = id.validate();
        assert!(r.passed);
        assert!(r.min_choi_eigenvalue.abs() < 1e-12);

        let dep = Channel::fully_depolarizing();
        let quarter = ComplexMatrix::identity(4).unwrap().scale(0.25);
        assert!(dep.choi().max_abs_diff(&quarter) < 1e-15);
        assert_ptm(&dep, PauliTransferMatrix::diagonal([1.0, 0.0, 0.0, 0.0]).0, 1e-15);
    }

    #[test]
    fn transpose_map_fails_cptp() {
        let t = Channel::transpose_map();
        let r = validate_cptp(&t);
        assert!(!r.passed);
        // Oracle: eigensolve of the Choi matrix, which is SWAP/2.
        let ev = hermitian_eigenvalues(t.choi()).unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-12);
        assert!((r.min_choi_eigenvalue + 0.5).abs() < 1e-12);
        assert!(r.tp_residual < 1e-12);
        assert!(matches!(t.kraus(), Err(Error::State(_))));
        assert!(t.require_cptp().is_err());
    }

    #[test]
    fn unitality() {
        assert!(is_unital(&extremal_channel(&params(PI, 0.7))));
        assert!(is_unital(&extremal_channel(&params(0.4, 0.0))));
        assert!(is_unital(&extremal_channel(&params(0.4, PI))));
        assert!(!is_unital(&extremal_channel(&params(PI / 2.0, PI / 2.0))));
        let c = extremal_channel(&params(PI / 2.0, PI / 2.0));
        assert!((c.ptm().shift()[2] - 1.0).abs() < 1e-15);
        let h = ComplexMatrix::from_real(2, &[1.0, 1.0, 1.0, -1.0])
            .unwrap()
            .scale(std::f64::consts::FRAC_1_SQRT_2);
        assert!(is_unital(&Channel::unitary(h).unwrap()));
        assert!(!is_unital(&Channel::amplitude_damping(0.3).unwrap()));
    }

    #[test]
    fn mixing() {
        let id = Channel::identity();
        let single = mix(std::slice::from_ref(&id), &[1.0]).unwrap();
        assert!(single.ptm().max_abs_diff(id.ptm()) < 1e-15);

        let paulis: Vec<Channel> = Pauli::ALL.iter().map(|p| Channel::pauli_unitary(*p)).collect();
        let dep = mix(&paulis, &[0.25; 4]).unwrap();
        assert!(dep.ptm().max_abs_diff(Channel::fully_depolarizing().ptm()) < 1e-15);

        let half = mix(&[id, Channel::pauli_unitary(Pauli::Y)], &[0.5, 0.5]).unwrap();
        assert_ptm(&half, PauliTransferMatrix::diagonal([1.0, 0.0, 1.0, 0.0]).0, 1e-15);
        assert!(half.validate().passed);

        assert!(mix(&paulis, &[0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(mix(&paulis, &[0.3, 0.3, 0.3, 0.3]).is_err());
        assert!(mix(&paulis[..2], &[1.0]).is_err());
    }

    #[test]
    fn apply_examples() {
        let rho = ComplexMatrix::from_real(2, &[0.8, 0.3, 0.3, 0.2]).unwrap();
        assert!(Channel::identity().apply(&rho).unwrap().max_abs_diff(&rho) < 1e-15);
        let half = sigma(0).scale(0.5);
        assert!(Channel::fully_depolarizing().apply(&rho).unwrap().max_abs_diff(&half) < 1e-15);
        assert!(Channel::identity().apply(&sigma2_dummy()).is_err());
    }

    fn sigma2_dummy() -> ComplexMatrix {
        ComplexMatrix::identity(4).unwrap()
    }

    #[test]
    fn apply_to_b_factorizes_on_products() {
        let a = ComplexMatrix::from_real(2, &[0.3, 0.1, 0.1, 0.7]).unwrap();
        let b = ComplexMatrix::from_row_major(
            2,
            &[
                Complex64::new(0.6, 0.0),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.4, 0.0),
            ],
        )
        .unwrap();
        for c in [
            extremal_channel(&params(1.0, 2.0)),
            Channel::amplitude_damping(0.4).unwrap(),
            Channel::transpose_map(),
        ] {
            let lhs = c.apply_to_b(&kron(&a, &b).unwrap()).unwrap();
            let rhs = kron(&a, &c.apply(&b).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-14);
        }
    }

    #[test]
    fn standard_channel_examples() {
        assert!(Channel::depolarizing(0.0)
            .unwrap()
            .ptm()
            .max_abs_diff(&PauliTransferMatrix::identity())
            < 1e-15);
        assert_ptm(
            &Channel::dephasing(1.0).unwrap(),
            PauliTransferMatrix::diagonal([1.0, 0.0, 0.0, 1.0]).0,
            1e-15,
        );
        let ad = Channel::amplitude_damping(1.0).unwrap();
        let ket1 = ComplexMatrix::from_real(2, &[0.0, 0.0, 0.0, 1.0]).unwrap();
        let ket0 = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(ad.apply(&ket1).unwrap().max_abs_diff(&ket0) < 1e-15);
        assert!(ad.apply(&sigma(0).scale(0.5)).unwrap().max_abs_diff(&ket0) < 1e-15);
        assert!(Channel::depolarizing(1.5).is_err());
        assert!(Channel::dephasing(-0.1).is_err());
        assert!(Channel::amplitude_damping(2.0).is_err());
    }

    #[test]
    fn representation_round_trips() {
        for c in [
            extremal_channel(&params(2.3, 0.4)),
            Channel::amplitude_damping(0.35).unwrap(),
            Channel::depolarizing(0.2).unwrap(),
        ] {
            let choi = kraus_to_choi(c.kraus().unwrap()).unwrap();
            let ptm = choi_to_ptm(&choi).unwrap();
            assert!(ptm_to_choi(&ptm).max_abs_diff(&choi) < 1e-12);
            let rebuilt = Channel::from_kraus(choi_to_kraus(&choi).unwrap()).unwrap();
            assert!(rebuilt.ptm().max_abs_diff(c.ptm()) < 1e-12);
            assert!(Channel::from_choi(choi).unwrap().validate().passed);
        }
    }

    #[test]
    fn named_lookup() {
        assert!(Channel::named("identity", None).is_ok());
        assert!(Channel::named("depolarizing", Some(0.5)).is_ok());
        assert!(Channel::named("depolarizing", None).is_err());
        assert!(Channel::named("bogus", None).is_err());
    }
}
