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

//! Fixed-size complex matrix algebra over the Pauli basis.
//!
//! Everything here works on 2×2 (one qubit) or 4×4 (two qubits) matrices.
//! Two-qubit operators use the convention that subsystem A is the major
//! (left) tensor factor: basis index `2 * a + b`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::Matrix4;
pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute entrywise tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Tolerance for spectral identities (eigenvalue sums, PSD checks).
pub const SPECTRAL_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix of dimension 2 or 4, stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; 16],
}

impl ComplexMatrix {
    fn check_dim(dim: usize) -> Result<()> {
        if dim == 2 || dim == 4 {
            Ok(())
        } else {
            Err(Error::invalid(format!("matrix dimension must be 2 or 4, got {dim}")))
        }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(ComplexMatrix {
            dim,
            data: [ZERO; 16],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let mut data = [ZERO; 16];
        data[..entries.len()].copy_from_slice(entries);
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_major(dim, &c)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        Ok(m)
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::invalid("outer product of vectors with different lengths"));
        }
        Self::from_fn(a.len(), |r, c| a[r] * b[c].conj())
    }

    /// Projector onto the (not necessarily normalized) vector `psi`.
    pub fn projector(psi: &[Complex64]) -> Result<Self> {
        Self::outer(psi, psi)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major view of the `dim * dim` entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] = self[(c, r)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(r, c)] = self[(c, r)];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut out = *self;
        for z in out.data[..self.dim * self.dim].iter_mut() {
            *z = f(*z);
        }
        out
    }

    /// Matrix product, rejecting mismatched dimensions.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::invalid(format!(
                "dimension mismatch in product: {} vs {}",
                self.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = (0..n).map(|k| self[(r, k)] * rhs[(k, c)]).sum();
            }
        }
        Ok(out)
    }

    /// `self · m · self†`
    pub fn conjugate(&self, m: &Self) -> Result<Self> {
        self.matmul(m)?.matmul(&self.adjoint())
    }

    /// Largest absolute entrywise difference between `self` and `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation between the matrix and its conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub(crate) fn require_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITIAN_TOL || deviation.is_nan() {
            Err(Error::NotHermitian { deviation })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_dim(&self, dim: usize, what: &str) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "{what} must be {dim}x{dim}, got {0}x{0}",
                self.dim
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Rows as nested vectors, convenient for serialization.
    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)]).collect())
            .collect()
    }

    fn to_nalgebra4(self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|r, c| self[(r, c)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.dim && c < self.dim, "index ({r}, {c}) out of range");
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.dim && c < self.dim, "index ({r}, {c}) out of range");
        &mut self.data[r * self.dim + c]
    }
}

/// Panics if the dimensions differ.
impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(mut self, rhs: ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        self
    }
}

/// Panics if the dimensions differ.
impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        self + (-rhs)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Panics if the dimensions differ; use [`ComplexMatrix::matmul`] for a checked product.
impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        self.matmul(&rhs).expect("dimension mismatch in product")
    }
}

impl Mul<f64> for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, s: f64) -> ComplexMatrix {
        self.scale(s)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})[", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli operator labels, `σ0 = I, σ1 = X, σ2 = Y, σ3 = Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Pauli::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::invalid(format!("Pauli index must be in 0..=3, got {i}")))
    }

    pub fn matrix(self) -> ComplexMatrix {
        let e = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -I, I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        ComplexMatrix::from_row_major(2, &e).expect("2x2 literal")
    }

    /// `σᵀ = sign · σ`; only `Y` flips sign under transposition.
    pub fn transpose_sign(self) -> f64 {
        if self == Pauli::Y {
            -1.0
        } else {
            1.0
        }
    }

    /// Whether two single-qubit Paulis anticommute.
    pub fn anticommutes_with(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }
}

/// `σ_i` for `i ∈ 0..=3`. Panics on other indices.
pub fn sigma(i: usize) -> ComplexMatrix {
    Pauli::from_index(i).expect("Pauli index").matrix()
}

/// `σ_i ⊗ σ_j`
pub fn sigma2(i: usize, j: usize) -> ComplexMatrix {
    kron(&sigma(i), &sigma(j)).expect("2x2 factors")
}

/// Kronecker product of two single-qubit operators, A-index major.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_dim(2, "left Kronecker factor")?;
    b.require_dim(2, "right Kronecker factor")?;
    ComplexMatrix::from_fn(4, |r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// `a·b + b·a`
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(a.matmul(b)? + b.matmul(a)?)
}

/// `a·b − b·a`
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(a.matmul(b)? - b.matmul(a)?)
}

/// The two-qubit SWAP operator, `|ij⟩ → |ji⟩`.
pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_fn(4, |r, c| {
        let (i, j) = (c / 2, c % 2);
        if r == 2 * j + i {
            ONE
        } else {
            ZERO
        }
    })
    .expect("4x4")
}

/// Transposition over subsystem A:
/// `out[(2i + j, 2k + l)] = m[(2k + j, 2i + l)]`.
pub fn partial_transpose_a(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.require_dim(4, "partial transpose input")?;
    ComplexMatrix::from_fn(4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        m[(2 * k + j, 2 * i + l)]
    })
}

/// Partial trace over subsystem B (the minor factor) of a 4×4 operator.
pub fn partial_trace_b(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.require_dim(4, "partial trace input")?;
    ComplexMatrix::from_fn(2, |a, c| m[(2 * a, 2 * c)] + m[(2 * a + 1, 2 * c + 1)])
}

/// Real spectrum of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.require_hermitian()?;
    let mut ev = match m.dim() {
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let mean = 0.5 * (a + d);
            let radius = (0.25 * (a - d) * (a - d) + m[(0, 1)].norm_sqr()).sqrt();
            vec![mean - radius, mean + radius]
        }
        _ => m
            .to_nalgebra4()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect(),
    };
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Eigenvalues (ascending) with matching orthonormal eigenvectors of a
/// Hermitian 4×4 matrix.
pub(crate) fn hermitian_eigen4(m: &ComplexMatrix) -> Result<Vec<(f64, [Complex64; 4])>> {
    m.require_dim(4, "eigendecomposition input")?;
    m.require_hermitian()?;
    let eig = m.to_nalgebra4().symmetric_eigen();
    let mut pairs: Vec<(f64, [Complex64; 4])> = (0..4)
        .map(|k| {
            let col = eig.eigenvectors.column(k);
            (eig.eigenvalues[k], [col[0], col[1], col[2], col[3]])
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

/// Real 4×4 table of two-point Pauli correlations `T[i][j] = Tr[(σi⊗σj)·M]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTable(pub [[f64; 4]; 4]);

impl PauliTable {
    pub fn zeros() -> Self {
        PauliTable([[0.0; 4]; 4])
    }

    /// Table of the maximally mixed two-qubit state: only `T[0][0] = 1`.
    pub fn unit() -> Self {
        let mut t = Self::zeros();
        t.0[0][0] = 1.0;
        t
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut t = Self::zeros();
        for (k, v) in d.into_iter().enumerate() {
            t.0[k][k] = v;
        }
        t
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &PauliTable) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Convex (or any linear) combination of tables.
    pub fn combine(tables: &[PauliTable], weights: &[f64]) -> PauliTable {
        let mut out = Self::zeros();
        for (t, &w) in tables.iter().zip(weights) {
            for i in 0..4 {
                for j in 0..4 {
                    out.0[i][j] += w * t.0[i][j];
                }
            }
        }
        out
    }
}

/// Pauli-basis coefficients of a Hermitian two-qubit operator.
pub fn pauli_decompose(m: &ComplexMatrix) -> Result<PauliTable> {
    m.require_dim(4, "Pauli decomposition input")?;
    m.require_hermitian()?;
    let mut t = PauliTable::zeros();
    for i in 0..4 {
        for j in 0..4 {
            t.0[i][j] = sigma2(i, j).matmul(m)?.trace().re;
        }
    }
    Ok(t)
}

/// `(1/4) Σ T[i][j] σi⊗σj`
pub fn pauli_reconstruct(t: &PauliTable) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4).expect("4x4");
    for i in 0..4 {
        for j in 0..4 {
            if t.0[i][j] != 0.0 {
                m = m + sigma2(i, j).scale(0.25 * t.0[i][j]);
            }
        }
    }
    m
}

/// Single-qubit Bloch coordinates `(⟨σ1⟩, ⟨σ2⟩, ⟨σ3⟩)` of a 2×2 operator.
pub fn bloch_components(m: &ComplexMatrix) -> Result<[f64; 3]> {
    m.require_dim(2, "single-qubit operator")?;
    let c = |k: usize| sigma(k).matmul(m).map(|p| p.trace().re);
    Ok([c(1)?, c(2)?, c(3)?])
}

/// The four Bell states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn ket(self) -> [Complex64; 4] {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            BellState::PhiPlus => [h, ZERO, ZERO, h],
            BellState::PhiMinus => [h, ZERO, ZERO, -h],
            BellState::PsiPlus => [ZERO, h, h, ZERO],
            BellState::PsiMinus => [ZERO, h, -h, ZERO],
        }
    }

    pub fn density_matrix(self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.ket()).expect("4-vector")
    }

    pub fn name(self) -> &'static str {
        match self {
            BellState::PhiPlus => "bell-phi-plus",
            BellState::PhiMinus => "bell-phi-minus",
            BellState::PsiPlus => "bell-psi-plus",
            BellState::PsiMinus => "bell-psi-minus",
        }
    }
}
