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

//! Full analysis of a PDM, as printed by `stcorr analyze`.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{classify, d_s, d_t, CorrVec3, RegionReport};
use crate::inference::CausalHypothesis;
use crate::linalg::{partial_transpose_a, trace_norm, PauliTable};
use crate::pdm::{causality_f_tr, corr_vec3, Pdm};

#[derive(Clone, Debug, Serialize)]
pub struct PdmAnalysis {
    pub table: PauliTable,
    pub f_tr: f64,
    pub eigenvalues: Vec<f64>,
    /// `(‖R^{T_A}‖_tr − 1)/2`; the negativity when R is a state.
    pub pt_negativity: f64,
    pub corr: CorrVec3,
    pub region: RegionReport,
    pub hypothesis: CausalHypothesis,
    /// `2 f_tr / √3`
    pub d_t: f64,
    /// `4 · pt_negativity / √3`
    pub d_s: f64,
}

pub fn analyze(p: &Pdm, tol: f64) -> Result<PdmAnalysis> {
    let f_tr = causality_f_tr(p);
    let pt_negativity = (0.5 * (trace_norm(&partial_transpose_a(p.matrix())?)? - 1.0)).max(0.0);
    let corr = corr_vec3(p);
    let region = classify(corr, tol);
    Ok(PdmAnalysis {
        table: *p.table(),
        f_tr,
        eigenvalues: p.eigenvalues(),
        pt_negativity,
        corr,
        region,
        hypothesis: CausalHypothesis::from_report(&region),
        d_t: d_t(f_tr)?,
        d_s: d_s(pt_negativity)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GEOMETRY_TOL;
    use crate::linalg::{BellState, PauliTable};
    use crate::pdm::{pdm_from_correlations, pdm_spatial};

    #[test]
    fn half_swap() {
        let p = pdm_from_correlations(&PauliTable::diagonal([1.0; 4])).unwrap();
        let a = analyze(&p, GEOMETRY_TOL).unwrap();
        assert!((a.f_tr - 1.0).abs() < 1e-12);
        assert!((a.region.dist_octahedron - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((a.d_t - a.region.dist_octahedron).abs() < 1e-12);
        assert!(a.pt_negativity.abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed() {
        let a = analyze(&pdm_from_correlations(&PauliTable::unit()).unwrap(), GEOMETRY_TOL).unwrap();
        assert_eq!(a.f_tr, 0.0);
        assert_eq!(a.region.dist_octahedron, 0.0);
        assert!(a.hypothesis.compatible_separable);
    }

    #[test]
    fn bell_state() {
        let p = pdm_spatial(&BellState::PhiMinus.density_matrix()).unwrap();
        let a = analyze(&p, GEOMETRY_TOL).unwrap();
        assert!((a.pt_negativity - 0.5).abs() < 1e-12);
        assert!(a.hypothesis.compatible_spatial && !a.hypothesis.compatible_temporal_cptp);
        assert!((a.d_s - a.region.dist_octahedron).abs() < 1e-12);
    }
}
