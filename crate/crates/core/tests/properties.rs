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

use proptest::prelude::*;

use stcorr::channel::{choi_to_kraus, choi_to_ptm, ptm_to_choi, Channel};
use stcorr::geometry::{
    classify, dist_to_octahedron, elliptope_cubic, in_elliptope, in_octahedron, in_tetra_s,
    in_tetra_t, project_l1_ball, CorrVec3,
};
use stcorr::linalg::{
    hermitian_eigenvalues, kron, partial_transpose_a, pauli_decompose, pauli_reconstruct,
    trace_norm, ComplexMatrix,
};
use stcorr::pdm::{
    causality_f_tr, corr_vec3, pdm_jordan, pdm_spatial, pdm_temporal, Pdm,
};
use stcorr::sampling::SampleRng;

fn coord() -> impl Strategy<Value = f64> {
    -1.0..=1.0f64
}

fn point() -> impl Strategy<Value = CorrVec3> {
    (coord(), coord(), coord()).prop_map(|(x, y, z)| CorrVec3::new(x, y, z))
}

fn seeded<T>(seed: u64, f: impl FnOnce(&mut SampleRng) -> T) -> T {
    f(&mut SampleRng::for_sample(seed, 0))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>()) {
        let m = seeded(seed, |r| r.density_matrix());
        let back = partial_transpose_a(&partial_transpose_a(&m).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn trace_norm_bounds_trace(seed in any::<u64>()) {
        let p = seeded(seed, |r| pdm_temporal(&r.mixed_state(), &r.random_cptp()).unwrap());
        let n = trace_norm(p.matrix()).unwrap();
        prop_assert!(n >= p.matrix().trace().re - 1e-12);
        prop_assert!(causality_f_tr(&p) >= 0.0);
    }

    #[test]
    fn pauli_decomposition_round_trips(seed in any::<u64>()) {
        let m = seeded(seed, |r| r.density_matrix());
        let t = pauli_decompose(&m).unwrap();
        prop_assert!(pauli_reconstruct(&t).max_abs_diff(&m) < 1e-14);
        prop_assert!((t.0[0][0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn local_unitaries_preserve_pdm_spectrum(seed in any::<u64>()) {
        let (p, u) = seeded(seed, |r| {
            let p = pdm_temporal(&r.pure_state(), &r.random_cptp()).unwrap();
            let u = kron(&r.haar_unitary(), &r.haar_unitary()).unwrap();
            (p, u)
        });
        let rotated = Pdm::from_matrix(u.conjugate(p.matrix()).unwrap()).unwrap();
        prop_assert!(max_diff(&p.eigenvalues(), &rotated.eigenvalues()) < 1e-12);
        prop_assert!((causality_f_tr(&p) - causality_f_tr(&rotated)).abs() < 1e-12);
    }

    #[test]
    fn jordan_and_temporal_constructions_agree(seed in any::<u64>()) {
        seeded(seed, |r| {
            let (s, ch) = (r.mixed_state(), r.random_cptp());
            let a = pdm_temporal(&s, &ch).unwrap();
            let b = pdm_jordan(&s, &ch).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
        });
    }

    #[test]
    fn channel_representations_round_trip(seed in any::<u64>()) {
        let ch = seeded(seed, |r| r.random_cptp());
        let ptm = choi_to_ptm(ch.choi()).unwrap();
        prop_assert!(ptm.max_abs_diff(ch.ptm()) < 1e-12);
        prop_assert!(ptm_to_choi(ch.ptm()).max_abs_diff(ch.choi()) < 1e-12);
        let rebuilt = Channel::from_kraus(choi_to_kraus(ch.choi()).unwrap()).unwrap();
        prop_assert!(rebuilt.ptm().max_abs_diff(ch.ptm()) < 1e-10);
        prop_assert!(ch.validate().passed);
    }

    #[test]
    fn spatial_pdms_stay_in_ts(seed in any::<u64>()) {
        let p = seeded(seed, |r| pdm_spatial(&r.density_matrix()).unwrap());
        prop_assert!(in_tetra_s(corr_vec3(&p), 1e-12));
        prop_assert_eq!(causality_f_tr(&p), 0.0);
    }

    #[test]
    fn elliptope_is_convex(a in point(), b in point(), t in 0.0..=1.0f64) {
        prop_assume!(in_elliptope(a, 0.0) && in_elliptope(b, 0.0));
        prop_assert!(in_elliptope(a * t + b * (1.0 - t), 1e-12));
    }

    #[test]
    fn elliptope_symmetries(c in point()) {
        let k = elliptope_cubic(c);
        for s in [
            CorrVec3::new(c.y, c.x, c.z),
            CorrVec3::new(c.z, c.y, c.x),
            CorrVec3::new(c.y, c.z, c.x),
            CorrVec3::new(-c.x, -c.y, c.z),
            CorrVec3::new(c.x, -c.y, -c.z),
        ] {
            prop_assert!((elliptope_cubic(s) - k).abs() < 1e-14);
        }
        // Odd sign flips swap the tetrahedra.
        let flipped = c * -1.0;
        prop_assert_eq!(in_tetra_s(c, 0.0), in_tetra_t(flipped, 0.0));
    }

    #[test]
    fn region_implications(c in point()) {
        let r = classify(c, 1e-9);
        if r.in_octahedron {
            prop_assert!(r.in_ts && r.in_tt && r.in_elliptope);
        }
        if r.in_tt {
            prop_assert!(r.in_elliptope);
        }
        prop_assert!(r.in_cube);
        prop_assert_eq!(r.dist_octahedron == 0.0, in_octahedron(c, 0.0));
    }

    #[test]
    fn projection_is_nearest_point(c in (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64), q in point()) {
        let c = CorrVec3::new(c.0, c.1, c.2);
        let p = project_l1_ball(c, 1.0);
        prop_assert!(p.x.abs() + p.y.abs() + p.z.abs() <= 1.0 + 1e-12);
        // Any other point of the ball is at least as far away.
        let s = q.x.abs() + q.y.abs() + q.z.abs();
        let q = if s > 1.0 { q * (1.0 / s) } else { q };
        prop_assert!(c.distance(q) >= dist_to_octahedron(c) - 1e-12);
    }
}

#[test]
fn octahedron_is_intersection_of_tetrahedra_on_grid() {
    let n = 41;
    let g = |k: usize| -1.0 + 2.0 * k as f64 / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = CorrVec3::new(g(i), g(j), g(k));
                assert_eq!(
                    in_octahedron(c, 1e-12),
                    in_tetra_s(c, 1e-12) && in_tetra_t(c, 1e-12),
                    "{c:?}"
                );
            }
        }
    }
}

/// Brute-force distance to the octahedron surface: dense barycentric mesh of
/// its eight faces.
fn mesh_distance(c: CorrVec3, n: usize) -> f64 {
    let mut best = f64::INFINITY;
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                for a in 0..=n {
                    for b in 0..=(n - a) {
                        let (wa, wb) = (a as f64 / n as f64, b as f64 / n as f64);
                        let p = CorrVec3::new(sx * wa, sy * wb, sz * (1.0 - wa - wb));
                        best = best.min(c.distance(p));
                    }
                }
            }
        }
    }
    best
}

#[test]
fn distance_matches_mesh_oracle() {
    let mut rng = SampleRng::for_sample(99, 0);
    let n = 120;
    // Mesh spacing bounds the oracle's overestimate.
    let slack = 2.0 / n as f64;
    for _ in 0..150 {
        let c = CorrVec3::new(
            rng.uniform_in(-1.5, 1.5),
            rng.uniform_in(-1.5, 1.5),
            rng.uniform_in(-1.5, 1.5),
        );
        let d = dist_to_octahedron(c);
        if in_octahedron(c, 0.0) {
            assert_eq!(d, 0.0);
            continue;
        }
        let oracle = mesh_distance(c, n);
        assert!(d <= oracle + 1e-12, "{c:?}: {d} > {oracle}");
        assert!(oracle - d <= slack, "{c:?}: {d} vs {oracle}");
    }
}

#[test]
fn eigenvalues_of_hermitian_sums_are_real_and_sorted() {
    let mut rng = SampleRng::for_sample(5, 0);
    for _ in 0..50 {
        let a: ComplexMatrix = rng.density_matrix();
        let b = rng.density_matrix();
        let ev = hermitian_eigenvalues(&(a - b)).unwrap();
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = ev.iter().sum();
        assert!(sum.abs() < 1e-12);
    }
}
