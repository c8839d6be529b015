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

//! Seeded Monte Carlo generation of states, channels and PDM point clouds.
//!
//! Every sample `i` draws from its own ChaCha8 stream, seeded with
//! `seed_from_u64(seed)` and positioned with `set_stream(i)`. Results are
//! therefore bit-identical for a given seed regardless of how the work is
//! split across threads.
//!
//! Raw-stream transforms:
//! * uniform on `[0, 1)`: `(next_u64 >> 11) · 2⁻⁵³`;
//! * standard normal: Box–Muller, `√(−2 ln(1 − u₁)) · cos(2π u₂)`;
//! * Dirichlet(1, …, 1): normalized `−ln(1 − uₖ)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;
use std::thread;

use num_complex::Complex64;
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{extremal_channel, mix, AxisPermutation, Channel, ExtremalParams};
use crate::error::{Error, Result};
use crate::geometry::{
    cube_vertices, in_cube, in_elliptope, in_tetra_s, in_tetra_t, CorrVec3, GEOMETRY_TOL,
    SPATIAL_VERTICES,
};
use crate::linalg::{BellState, ComplexMatrix, Pauli};
use crate::pdm::{
    causality_f_tr, corr_vec3, mix_pdm, pdm_spatial, pdm_temporal, Pdm, QubitState,
};

/// Per-sample random stream.
pub struct SampleRng(ChaCha8Rng);

impl SampleRng {
    pub fn for_sample(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        SampleRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    }

    /// Circularly symmetric complex normal with unit variance.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Flat Dirichlet weights; they sum to one up to round-off.
    pub fn dirichlet(&mut self, k: usize) -> Vec<f64> {
        let e: Vec<f64> = (0..k).map(|_| -(1.0 - self.uniform()).ln()).collect();
        let total: f64 = e.iter().sum();
        let mut w: Vec<f64> = e.iter().map(|x| x / total).collect();
        // Push the rounding residue into the largest weight.
        let residue = 1.0 - w.iter().sum::<f64>();
        let imax = (0..k).max_by(|&a, &b| w[a].total_cmp(&w[b])).unwrap_or(0);
        w[imax] += residue;
        w
    }

    /// Uniform point on the unit sphere (inverse CDF in `z`).
    pub fn unit_vector(&mut self) -> [f64; 3] {
        let z = 2.0 * self.uniform() - 1.0;
        let phi = TAU * self.uniform();
        let rho = (1.0 - z * z).max(0.0).sqrt();
        [rho * phi.cos(), rho * phi.sin(), z]
    }

    /// Uniform point in the unit ball.
    pub fn ball_vector(&mut self) -> [f64; 3] {
        let d = self.unit_vector();
        let r = self.uniform().cbrt();
        d.map(|x| x * r)
    }

    pub fn pure_state(&mut self) -> QubitState {
        QubitState::from_bloch(self.unit_vector()).expect("unit Bloch vector")
    }

    pub fn mixed_state(&mut self) -> QubitState {
        QubitState::from_bloch(self.ball_vector()).expect("Bloch vector in the ball")
    }

    pub fn extremal_params(&mut self) -> ExtremalParams {
        let u = TAU * self.uniform();
        let v = PI * self.uniform();
        let perm = AxisPermutation::ALL[self.below(6)];
        ExtremalParams::new(u, v, perm).expect("angles drawn in range")
    }

    /// Haar-random isometry with `cols` orthonormal columns in `C^rows`,
    /// by Gram–Schmidt on a complex Gaussian matrix.
    pub fn isometry(&mut self, rows: usize, cols: usize) -> Vec<Vec<Complex64>> {
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
        for _ in 0..cols {
            let mut v: Vec<Complex64> = (0..rows).map(|_| self.complex_normal()).collect();
            for b in &basis {
                let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= overlap * bi;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|z| *z /= norm);
            basis.push(v);
        }
        basis
    }

    pub fn haar_unitary(&mut self) -> ComplexMatrix {
        let cols = self.isometry(2, 2);
        ComplexMatrix::from_fn(2, |r, c| cols[c][r]).expect("2x2")
    }

    /// Channel from a random isometry `C² → C² ⊗ C⁴` (output major, environment minor).
    pub fn random_cptp(&mut self) -> Channel {
        const ENV: usize = 4;
        let cols = self.isometry(2 * ENV, 2);
        let ops = (0..ENV)
            .map(|e| ComplexMatrix::from_fn(2, |b, a| cols[a][b * ENV + e]).expect("2x2"))
            .collect();
        Channel::from_kraus(ops).expect("2x2 Kraus operators")
    }

    /// Random two-qubit density matrix: Dirichlet mixture of 1–4 random pure states.
    pub fn density_matrix(&mut self) -> ComplexMatrix {
        let components = 1 + self.below(4);
        let weights = self.dirichlet(components);
        let mut rho = ComplexMatrix::zeros(4).expect("4x4");
        for w in weights {
            let psi: Vec<Complex64> = (0..4).map(|_| self.complex_normal()).collect();
            let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            rho = rho + ComplexMatrix::projector(&psi).expect("4-vector").scale(w / norm2);
        }
        let tr = rho.trace().re;
        rho.scale(1.0 / tr)
    }
}

/// Which objects a [`SampleSpec`] draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Extremal trigonometric channels with uniform angles and permutation.
    ExtremalChannel,
    /// Dirichlet mixtures of four random extremal channels.
    MixedChannel,
    /// Channels from Haar-random Stinespring isometries.
    RandomCptp,
    /// Dirichlet mixtures of four Haar-random unitary channels.
    UnitalChannel,
    /// Dirichlet mixtures of the four Pauli unitaries.
    PauliChannel,
    /// Random two-qubit density matrices.
    SpatialDm,
    /// Mixtures of spatial and temporal vertex PDMs filling the cube.
    CubeMixture,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::ExtremalChannel,
        Family::MixedChannel,
        Family::RandomCptp,
        Family::UnitalChannel,
        Family::PauliChannel,
        Family::SpatialDm,
        Family::CubeMixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ExtremalChannel => "extremal-channel",
            Family::MixedChannel => "mixed-channel",
            Family::RandomCptp => "random-cptp",
            Family::UnitalChannel => "unital-channel",
            Family::PauliChannel => "pauli-channel",
            Family::SpatialDm => "spatial-dm",
            Family::CubeMixture => "cube-mixture",
        }
    }

    pub fn is_channel_family(self) -> bool {
        !matches!(self, Family::SpatialDm | Family::CubeMixture)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::invalid(format!("unknown family '{s}', expected one of {names:?}"))
            })
    }
}

#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    pub family: Family,
    /// Input state for temporal samples; a random pure state per sample when absent.
    pub fixed_state: Option<QubitState>,
}

impl SampleSpec {
    pub fn new(family: Family, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("sample count must be at least 1"));
        }
        Ok(SampleSpec {
            count,
            seed,
            family,
            fixed_state: None,
        })
    }

    pub fn with_state(mut self, state: QubitState) -> Self {
        self.fixed_state = Some(state);
        self
    }

    fn require_family(&self, allowed: &[Family]) -> Result<()> {
        if allowed.contains(&self.family) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "sampler does not handle family '{}'",
                self.family
            )))
        }
    }
}

fn worker_count() -> usize {
    thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

/// Maps `f` over `0..count` on up to `workers` threads, preserving order.
pub fn par_map_indexed<T, F>(count: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(f).collect();
    }
    let chunk = count.div_ceil(workers);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * chunk).min(count);
                let hi = ((w + 1) * chunk).min(count);
                s.spawn(move || (lo..hi).map(f).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    })
}

fn par_map<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    par_map_indexed(count, worker_count(), f)
}

/// Draws the family's channel from a sample stream.
fn draw_channel(family: Family, rng: &mut SampleRng) -> Result<(Option<ExtremalParams>, Channel)> {
    Ok(match family {
        Family::ExtremalChannel => {
            let p = rng.extremal_params();
            (Some(p), extremal_channel(&p))
        }
        Family::MixedChannel => {
            let parts: Vec<Channel> = (0..4)
                .map(|_| extremal_channel(&rng.extremal_params()))
                .collect();
            let w = rng.dirichlet(4);
            (None, mix(&parts, &w)?)
        }
        Family::RandomCptp => (None, rng.random_cptp()),
        Family::UnitalChannel => {
            let parts = (0..4)
                .map(|_| Channel::unitary(rng.haar_unitary()))
                .collect::<Result<Vec<_>>>()?;
            let w = rng.dirichlet(4);
            (None, mix(&parts, &w)?)
        }
        Family::PauliChannel => {
            let w = rng.dirichlet(4);
            (None, Channel::pauli_mixture([w[0], w[1], w[2], w[3]])?)
        }
        Family::SpatialDm | Family::CubeMixture => {
            return Err(Error::invalid(format!("'{family}' is not a channel family")))
        }
    })
}

/// Random extremal channels: `u ~ U[0, 2π]`, `v ~ U[0, π]`, uniform permutation.
pub fn sample_extremal(spec: &SampleSpec) -> Result<Vec<(ExtremalParams, Channel)>> {
    spec.require_family(&[Family::ExtremalChannel])?;
    Ok(par_map(spec.count, |i| {
        let mut rng = SampleRng::for_sample(spec.seed, i as u64);
        let p = rng.extremal_params();
        (p, extremal_channel(&p))
    }))
}

/// Channels from Haar-random isometries into qubit ⊗ 4-dimensional environment.
pub fn sample_random_cptp(spec: &SampleSpec) -> Result<Vec<Channel>> {
    spec.require_family(&[Family::RandomCptp])?;
    Ok(par_map(spec.count, |i| {
        SampleRng::for_sample(spec.seed, i as u64).random_cptp()
    }))
}

/// Channels of any channel family.
pub fn sample_channels(spec: &SampleSpec) -> Result<Vec<Channel>> {
    if !spec.family.is_channel_family() {
        return Err(Error::invalid(format!(
            "'{}' is not a channel family",
            spec.family
        )));
    }
    par_map(spec.count, |i| {
        let mut rng = SampleRng::for_sample(spec.seed, i as u64);
        draw_channel(spec.family, &mut rng).map(|(_, c)| c)
    })
    .into_iter()
    .collect()
}

/// Random two-qubit density matrices as spatial PDMs.
pub fn sample_spatial(spec: &SampleSpec) -> Result<Vec<Pdm>> {
    spec.require_family(&[Family::SpatialDm])?;
    par_map(spec.count, |i| {
        pdm_spatial(&SampleRng::for_sample(spec.seed, i as u64).density_matrix())
    })
    .into_iter()
    .collect()
}

/// The eight cube-corner PDMs: the four Bell states (spatial vertices, in
/// [`SPATIAL_VERTICES`] order) then the temporal vertex PDMs of the maximally
/// mixed input through Pauli unitaries.
pub fn cube_vertex_pdms() -> [Pdm; 8] {
    let spatial = |v: CorrVec3| {
        BellState::ALL
            .iter()
            .map(|b| pdm_spatial(&b.density_matrix()).expect("Bell state"))
            .find(|p| corr_vec3(p).distance(v) < 1e-12)
            .expect("every odd vertex is a Bell state")
    };
    let temporal = |v: CorrVec3| {
        Pauli::ALL
            .iter()
            .map(|k| {
                pdm_temporal(&QubitState::maximally_mixed(), &Channel::pauli_unitary(*k))
                    .expect("Pauli unitary")
            })
            .find(|p| corr_vec3(p).distance(v) < 1e-12)
            .expect("every even vertex is a Pauli conjugation")
    };
    let verts = cube_vertices();
    std::array::from_fn(|k| {
        if k < 4 {
            spatial(verts[k])
        } else {
            temporal(verts[k])
        }
    })
}

/// A cube-filling sample and its probabilistic-SWAP weight.
#[derive(Clone, Copy, Debug)]
pub struct CubeSample {
    pub pdm: Pdm,
    /// Total weight on spatial (Bell) vertices.
    pub spatial_weight: f64,
}

/// Uniform target in `[−1, 1]³` written as the trilinear convex combination
/// of the eight vertex PDMs; its correlation triple equals the target.
pub fn sample_cube_detailed(spec: &SampleSpec) -> Result<Vec<CubeSample>> {
    spec.require_family(&[Family::CubeMixture])?;
    let vertices = cube_vertex_pdms();
    let corners = cube_vertices();
    par_map(spec.count, |i| {
        let mut rng = SampleRng::for_sample(spec.seed, i as u64);
        let target = [rng.uniform_in(-1.0, 1.0), rng.uniform_in(-1.0, 1.0), rng.uniform_in(-1.0, 1.0)];
        let weights: Vec<f64> = corners
            .iter()
            .map(|c| {
                c.to_array()
                    .iter()
                    .zip(target)
                    .map(|(s, x)| 0.5 * (1.0 + s * x))
                    .product()
            })
            .collect();
        let spatial_weight = weights[..4].iter().sum();
        mix_pdm(&vertices, &weights).map(|pdm| CubeSample {
            pdm,
            spatial_weight,
        })
    })
    .into_iter()
    .collect()
}

pub fn sample_cube(spec: &SampleSpec) -> Result<Vec<Pdm>> {
    Ok(sample_cube_detailed(spec)?.into_iter().map(|s| s.pdm).collect())
}

/// One row of a sampled point cloud.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplePoint {
    pub index: usize,
    /// Input Bloch vector for temporal samples.
    pub bloch: Option<[f64; 3]>,
    pub params: Option<ExtremalParams>,
    pub unital: Option<bool>,
    pub corr: CorrVec3,
    pub f_tr: f64,
}

impl SamplePoint {
    /// Whether the point respects the membership law of its family.
    pub fn violates(&self, family: Family) -> bool {
        let tol = GEOMETRY_TOL;
        match family {
            Family::SpatialDm => !in_tetra_s(self.corr, tol) || self.f_tr > tol,
            Family::CubeMixture => !in_cube(self.corr, tol),
            _ => {
                let mixed_input = self.bloch.is_some_and(|b| b.iter().all(|x| *x == 0.0));
                let reduces = mixed_input || self.unital == Some(true);
                !in_elliptope(self.corr, tol) || (reduces && !in_tetra_t(self.corr, tol))
            }
        }
    }
}

/// Point cloud for any family; temporal families use `fixed_state` or a
/// random pure state per sample.
pub fn sample_points(spec: &SampleSpec) -> Result<Vec<SamplePoint>> {
    match spec.family {
        Family::SpatialDm => Ok(sample_spatial(spec)?
            .iter()
            .enumerate()
            .map(|(index, p)| SamplePoint {
                index,
                bloch: None,
                params: None,
                unital: None,
                corr: corr_vec3(p),
                f_tr: causality_f_tr(p),
            })
            .collect()),
        Family::CubeMixture => Ok(sample_cube(spec)?
            .iter()
            .enumerate()
            .map(|(index, p)| SamplePoint {
                index,
                bloch: None,
                params: None,
                unital: None,
                corr: corr_vec3(p),
                f_tr: causality_f_tr(p),
            })
            .collect()),
        family => par_map(spec.count, |index| {
            let mut rng = SampleRng::for_sample(spec.seed, index as u64);
            let (params, channel) = draw_channel(family, &mut rng)?;
            let state = match spec.fixed_state {
                Some(s) => s,
                None => rng.pure_state(),
            };
            let pdm = pdm_temporal(&state, &channel)?;
            Ok(SamplePoint {
                index,
                bloch: Some(state.bloch()),
                params,
                unital: Some(channel.is_unital()),
                corr: corr_vec3(&pdm),
                f_tr: causality_f_tr(&pdm),
            })
        })
        .into_iter()
        .collect(),
    }
}

/// Monte Carlo volume of a body inside `[−1, 1]³`.
pub fn estimate_volume(body: impl Fn(CorrVec3) -> bool + Sync, count: usize, seed: u64) -> f64 {
    const BLOCK: usize = 4096;
    let blocks = count.div_ceil(BLOCK);
    let hits: usize = par_map(blocks, |b| {
        let mut rng = SampleRng::for_sample(seed, b as u64);
        let n = BLOCK.min(count - b * BLOCK);
        (0..n)
            .filter(|_| {
                let c = CorrVec3::new(
                    rng.uniform_in(-1.0, 1.0),
                    rng.uniform_in(-1.0, 1.0),
                    rng.uniform_in(-1.0, 1.0),
                );
                body(c)
            })
            .count()
    })
    .into_iter()
    .sum();
    8.0 * hits as f64 / count as f64
}

/// Smallest distance from any point to any spatial (Bell) vertex.
pub fn min_distance_to_spatial_vertices(points: &[CorrVec3]) -> f64 {
    points
        .iter()
        .flat_map(|p| SPATIAL_VERTICES.iter().map(move |v| p.distance(*v)))
        .fold(f64::INFINITY, f64::min)
}
