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

//! Geometry of two-point correlation triples `(⟨σ1σ1⟩, ⟨σ2σ2⟩, ⟨σ3σ3⟩)`.
//!
//! Bodies, all closed:
//! * spatial tetrahedron: hull of the odd-parity cube vertices (Bell states);
//! * temporal tetrahedron: hull of the even-parity vertices, the spatial one
//!   reflected in the second coordinate;
//! * octahedron: their intersection, `|x| + |y| + |z| ≤ 1`;
//! * elliptope (inflated tetrahedron): `1 + 2xyz − x² − y² − z² ≥ 0` inside
//!   the cube, bounded by the surface `(cos u, cos v, cos(u − v))`;
//! * cube `[−1, 1]³`.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Pauli;

/// Default tolerance for membership tests.
pub const GEOMETRY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CorrVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CorrVec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        CorrVec3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        CorrVec3::new(a[0], a[1], a[2])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(self, o: CorrVec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn distance(self, o: CorrVec3) -> f64 {
        (self - o).norm()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl Add for CorrVec3 {
    type Output = CorrVec3;
    fn add(self, o: CorrVec3) -> CorrVec3 {
        CorrVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for CorrVec3 {
    type Output = CorrVec3;
    fn sub(self, o: CorrVec3) -> CorrVec3 {
        CorrVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for CorrVec3 {
    type Output = CorrVec3;
    fn mul(self, s: f64) -> CorrVec3 {
        CorrVec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Vertices of the spatial tetrahedron (odd parity, the four Bell states).
pub const SPATIAL_VERTICES: [CorrVec3; 4] = [
    CorrVec3::new(1.0, 1.0, -1.0),
    CorrVec3::new(1.0, -1.0, 1.0),
    CorrVec3::new(-1.0, 1.0, 1.0),
    CorrVec3::new(-1.0, -1.0, -1.0),
];

/// Vertices of the temporal tetrahedron (even parity).
pub const TEMPORAL_VERTICES: [CorrVec3; 4] = [
    CorrVec3::new(1.0, -1.0, -1.0),
    CorrVec3::new(1.0, 1.0, 1.0),
    CorrVec3::new(-1.0, -1.0, 1.0),
    CorrVec3::new(-1.0, 1.0, -1.0),
];

pub const OCTAHEDRON_VERTICES: [CorrVec3; 6] = [
    CorrVec3::new(1.0, 0.0, 0.0),
    CorrVec3::new(-1.0, 0.0, 0.0),
    CorrVec3::new(0.0, 1.0, 0.0),
    CorrVec3::new(0.0, -1.0, 0.0),
    CorrVec3::new(0.0, 0.0, 1.0),
    CorrVec3::new(0.0, 0.0, -1.0),
];

/// The eight cube corners, spatial vertices first.
pub fn cube_vertices() -> [CorrVec3; 8] {
    let mut out = [CorrVec3::default(); 8];
    out[..4].copy_from_slice(&SPATIAL_VERTICES);
    out[4..].copy_from_slice(&TEMPORAL_VERTICES);
    out
}

/// `1 − facet value` for the four facets of the spatial tetrahedron.
/// Nonnegative margins (within tolerance) mean membership.
pub fn tetra_s_margins(c: CorrVec3) -> [f64; 4] {
    let CorrVec3 { x, y, z } = c;
    [
        1.0 - (x + y + z),
        1.0 - (x - y - z),
        1.0 - (-x + y - z),
        1.0 - (-x - y + z),
    ]
}

/// Facet margins of the temporal tetrahedron.
pub fn tetra_t_margins(c: CorrVec3) -> [f64; 4] {
    let CorrVec3 { x, y, z } = c;
    [
        1.0 - (x + y - z),
        1.0 - (x - y + z),
        1.0 - (-x + y + z),
        1.0 - (-x - y - z),
    ]
}

fn all_nonneg(margins: &[f64], tol: f64) -> bool {
    margins.iter().all(|m| *m >= -tol)
}

pub fn in_tetra_s(c: CorrVec3, tol: f64) -> bool {
    all_nonneg(&tetra_s_margins(c), tol)
}

pub fn in_tetra_t(c: CorrVec3, tol: f64) -> bool {
    all_nonneg(&tetra_t_margins(c), tol)
}

pub fn in_octahedron(c: CorrVec3, tol: f64) -> bool {
    c.x.abs() + c.y.abs() + c.z.abs() <= 1.0 + tol
}

pub fn in_cube(c: CorrVec3, tol: f64) -> bool {
    c.max_abs() <= 1.0 + tol
}

/// `1 + 2xyz − x² − y² − z²`; zero on the inflated-tetrahedron surface.
pub fn elliptope_cubic(c: CorrVec3) -> f64 {
    let CorrVec3 { x, y, z } = c;
    1.0 + 2.0 * x * y * z - x * x - y * y - z * z
}

pub fn in_elliptope(c: CorrVec3, tol: f64) -> bool {
    in_cube(c, tol) && elliptope_cubic(c) >= -tol
}

/// Euclidean projection onto the ℓ1 ball of the given radius.
///
/// Sign-fold, sort the magnitudes, find the soft threshold, unfold.
pub fn project_l1_ball(c: CorrVec3, radius: f64) -> CorrVec3 {
    let v = c.to_array();
    let mags = v.map(f64::abs);
    if mags.iter().sum::<f64>() <= radius {
        return c;
    }
    let mut sorted = mags;
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &s) in sorted.iter().enumerate() {
        cumulative += s;
        let t = (cumulative - radius) / (k + 1) as f64;
        if s - t > 0.0 {
            theta = t;
        }
    }
    let mut out = [0.0; 3];
    for k in 0..3 {
        out[k] = v[k].signum() * (mags[k] - theta).max(0.0);
    }
    CorrVec3::from_array(out)
}

/// Exact Euclidean distance to the unit octahedron; zero inside.
pub fn dist_to_octahedron(c: CorrVec3) -> f64 {
    c.distance(project_l1_ball(c, 1.0))
}

/// Distance from a spatial point to the separable octahedron, `4 f_N / √3`.
pub fn d_s(negativity: f64) -> Result<f64> {
    if !(negativity >= 0.0) {
        return Err(Error::invalid(format!(
            "negativity must be nonnegative, got {negativity}"
        )));
    }
    Ok(4.0 * negativity / 3f64.sqrt())
}

/// Distance from a temporal point to the octahedron, `2 f_tr / √3`.
pub fn d_t(f_tr: f64) -> Result<f64> {
    if !(f_tr >= 0.0) {
        return Err(Error::invalid(format!(
            "causality measure must be nonnegative, got {f_tr}"
        )));
    }
    Ok(2.0 * f_tr / 3f64.sqrt())
}

/// Point `(cos u, cos v, cos(u − v))` on the inflated-tetrahedron surface.
pub fn surface_point(u: f64, v: f64) -> Result<CorrVec3> {
    if !(0.0..=TAU).contains(&u) {
        return Err(Error::invalid(format!("u must lie in [0, 2π], got {u}")));
    }
    if !(0.0..=PI).contains(&v) {
        return Err(Error::invalid(format!("v must lie in [0, π], got {v}")));
    }
    Ok(CorrVec3::new(u.cos(), v.cos(), (u - v).cos()))
}

/// Membership of a point in every body, with margins and distances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionReport {
    pub point: CorrVec3,
    pub in_ts: bool,
    pub in_tt: bool,
    pub in_octahedron: bool,
    pub in_elliptope: bool,
    pub in_cube: bool,
    pub dist_octahedron: f64,
    /// `1 + 2xyz − x² − y² − z²`
    pub elliptope_defect: f64,
    pub ts_margins: [f64; 4],
    pub tt_margins: [f64; 4],
}

pub fn classify(c: CorrVec3, tol: f64) -> RegionReport {
    let ts_margins = tetra_s_margins(c);
    let tt_margins = tetra_t_margins(c);
    let in_ts = all_nonneg(&ts_margins, tol);
    let in_tt = all_nonneg(&tt_margins, tol);
    let in_cube = in_cube(c, tol);
    // The eight tetrahedron facets are the eight sign patterns of the ℓ1
    // norm, so this equals `in_octahedron(c, tol)` for every tolerance.
    let in_octahedron = in_ts && in_tt;
    // T_t ⊆ elliptope; near-boundary round-off must not break the implication.
    let in_elliptope = in_tt || in_elliptope(c, tol);
    RegionReport {
        point: c,
        in_ts,
        in_tt,
        in_octahedron,
        in_elliptope,
        in_cube: in_cube || in_ts || in_tt,
        dist_octahedron: dist_to_octahedron(c),
        elliptope_defect: elliptope_cubic(c),
        ts_margins,
        tt_margins,
    }
}

/// A pair of Pauli labels `(σ_A, σ_B)` naming the observable `σ_A ⊗ σ_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliPair(pub Pauli, pub Pauli);

impl PauliPair {
    pub fn from_indices(a: usize, b: usize) -> Result<Self> {
        Ok(PauliPair(Pauli::from_index(a)?, Pauli::from_index(b)?))
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.0.index(), self.1.index())
    }
}

/// Commutation data of two two-qubit Pauli observables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PauliPairRelation {
    pub commute: bool,
    /// How many of the four single-qubit factors are the identity.
    pub identity_factors: usize,
}

impl PauliPairRelation {
    pub fn of(p1: PauliPair, p2: PauliPair) -> Self {
        let flips = p1.0.anticommutes_with(p2.0) as usize + p1.1.anticommutes_with(p2.1) as usize;
        let identity_factors = [p1.0, p1.1, p2.0, p2.1]
            .iter()
            .filter(|p| **p == Pauli::I)
            .count();
        PauliPairRelation {
            commute: flips.is_multiple_of(2),
            identity_factors,
        }
    }

    /// Anticommuting pair with two identity factors, e.g. `(σ1⊗σ0, σ2⊗σ0)`;
    /// reported as type c.
    pub fn is_two_identity_anticommuting(&self) -> bool {
        !self.commute && self.identity_factors == 2
    }

    pub fn projection_type(&self) -> ProjectionType {
        if self.commute {
            ProjectionType::A
        } else if self.identity_factors == 1 {
            ProjectionType::B
        } else {
            ProjectionType::C
        }
    }
}

/// Shape of the admissible region when two correlations are projected to a plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionType {
    /// Commuting observables: unit square for both kinds.
    A,
    /// Anticommuting with exactly one identity factor: disc for spatial,
    /// square for temporal.
    B,
    /// Everything else: disc for both.
    C,
}

impl ProjectionType {
    pub fn label(self) -> &'static str {
        match self {
            ProjectionType::A => "a",
            ProjectionType::B => "b",
            ProjectionType::C => "c",
        }
    }
}

pub fn projection_type(p1: PauliPair, p2: PauliPair) -> ProjectionType {
    PauliPairRelation::of(p1, p2).projection_type()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    Spatial,
    Temporal,
}

/// Whether a pair of correlation values is attainable for the projection type.
pub fn admissible_2d(t: ProjectionType, point: (f64, f64), kind: CorrelationKind, tol: f64) -> bool {
    let (p1, p2) = point;
    let square = p1.abs() <= 1.0 + tol && p2.abs() <= 1.0 + tol;
    let disc = p1 * p1 + p2 * p2 <= 1.0 + tol;
    match (t, kind) {
        (ProjectionType::A, _) => square,
        (ProjectionType::B, CorrelationKind::Temporal) => square,
        (ProjectionType::B, CorrelationKind::Spatial) => disc,
        (ProjectionType::C, _) => disc,
    }
}
