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

//! Pseudo-density matrices (PDMs) for one qubit at two times or two qubits
//! at one time, and the geometry of the correlation triples
//! `(⟨σ1σ1⟩, ⟨σ2σ2⟩, ⟨σ3σ3⟩)` they produce.
//!
//! Spatial correlations from two-qubit states fill the tetrahedron `T_s`.
//! Temporal correlations from a qubit sent through a CPTP map fill the
//! elliptope bounded by the inflated tetrahedron, with `T_t` its unital /
//! maximally-mixed core. Both tetrahedra meet in the octahedron of
//! separable and causally trivial correlations.
//!
//! ```
//! use stcorr::{channel::Channel, pdm::{corr_vec3, pdm_temporal, QubitState}};
//!
//! let r = pdm_temporal(&QubitState::maximally_mixed(), &Channel::identity()).unwrap();
//! assert_eq!(corr_vec3(&r).to_array(), [1.0, 1.0, 1.0]);
//! ```

pub mod channel;
pub mod document;
pub mod error;
pub mod figures;
pub mod geometry;
pub mod inference;
pub mod linalg;
pub mod pdm;
pub mod report;
pub mod sampling;

pub use channel::{extremal_channel, AxisPermutation, Channel, ExtremalParams, PauliTransferMatrix};
pub use error::{Error, Result};
pub use geometry::{classify, dist_to_octahedron, CorrVec3, RegionReport};
pub use inference::{infer_causal, CausalHypothesis};
pub use linalg::{ComplexMatrix, Pauli, PauliTable};
pub use pdm::{pdm_jordan, pdm_spatial, pdm_temporal, Pdm, QubitState};
