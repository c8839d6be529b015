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

//! Causal-structure inference from a correlation triple.

use serde::Serialize;

use crate::geometry::{classify, CorrVec3, RegionReport};

/// Numerical evidence behind a [`CausalHypothesis`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witnesses {
    pub ts_margins: [f64; 4],
    pub tt_margins: [f64; 4],
    pub elliptope_defect: f64,
    pub dist_octahedron: f64,
    pub max_abs_coordinate: f64,
}

/// Which causal explanations are compatible with an observed triple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CausalHypothesis {
    /// Reachable by measurements on a shared two-qubit state.
    pub compatible_spatial: bool,
    /// Reachable by two measurements on one qubit with a CPTP map in between.
    pub compatible_temporal_cptp: bool,
    /// Reachable by a separable two-qubit state.
    pub compatible_separable: bool,
    /// Only a probabilistic mixture of spatial and temporal structure explains it.
    pub requires_mixture: bool,
    /// Outside the cube; no quantum explanation.
    pub unphysical: bool,
    pub witnesses: Witnesses,
}

impl CausalHypothesis {
    pub fn from_report(r: &RegionReport) -> Self {
        let unphysical = !r.in_cube;
        CausalHypothesis {
            compatible_spatial: r.in_ts && !unphysical,
            compatible_temporal_cptp: r.in_elliptope && !unphysical,
            compatible_separable: r.in_octahedron && !unphysical,
            requires_mixture: r.in_cube && !r.in_ts && !r.in_elliptope,
            unphysical,
            witnesses: Witnesses {
                ts_margins: r.ts_margins,
                tt_margins: r.tt_margins,
                elliptope_defect: r.elliptope_defect,
                dist_octahedron: r.dist_octahedron,
                max_abs_coordinate: r.point.max_abs(),
            },
        }
    }

    /// Short label for reports.
    pub fn summary(&self) -> &'static str {
        match (
            self.unphysical,
            self.compatible_separable,
            self.compatible_spatial,
            self.compatible_temporal_cptp,
        ) {
            (true, ..) => "unphysical",
            (false, true, ..) => "separable-compatible",
            (false, false, true, true) => "spatial-or-temporal (entangled or causal)",
            (false, false, true, false) => "spatial-only",
            (false, false, false, true) => "temporal-only",
            (false, false, false, false) => "requires-mixture",
        }
    }
}

pub fn infer_causal(c: CorrVec3, tol: f64) -> CausalHypothesis {
    CausalHypothesis::from_report(&classify(c, tol))
}
