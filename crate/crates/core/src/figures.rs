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

//! Data files behind the three correlation-geometry figures.
//!
//! * Figure 1: `fig1_surface.csv`, a `(u, v, x, y, z)` mesh of the
//!   inflated-tetrahedron surface.
//! * Figure 2: `fig2_bodies.json` (vertex lists of both tetrahedra, the
//!   octahedron and the cube) and `fig2_clouds.csv` (labelled samples).
//! * Figure 3: `fig3_regions.json` (admissible-region boundary polylines per
//!   projection type) and `fig3_clouds.csv` (spatial and temporal samples
//!   projected onto each type's pair of correlations).

use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::document::{format_sig, round_sig};
use crate::error::{Error, Result};
use crate::geometry::{
    admissible_2d, cube_vertices, elliptope_cubic, in_cube, in_elliptope, in_tetra_s, in_tetra_t,
    surface_point, CorrVec3, CorrelationKind, PauliPair, ProjectionType,
    GEOMETRY_TOL, OCTAHEDRON_VERTICES, SPATIAL_VERTICES, TEMPORAL_VERTICES,
};
use crate::pdm::{corr_vec3, correlation, pdm_temporal, Pdm, QubitState};
use crate::sampling::{
    par_map_indexed, sample_cube, sample_points, sample_spatial, Family, SampleRng, SampleSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Figure {
    Surface = 1,
    Bodies = 2,
    Projections = 3,
}

impl Figure {
    pub fn from_number(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Figure::Surface),
            2 => Ok(Figure::Bodies),
            3 => Ok(Figure::Projections),
            _ => Err(Error::invalid(format!("figure must be 1, 2 or 3, got {n}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WrittenFile {
    pub path: PathBuf,
    /// Data rows (CSV) or top-level entries (JSON).
    pub rows: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureSummary {
    pub figure: u32,
    pub files: Vec<WrittenFile>,
    /// Points that break the membership law they are supposed to obey; zero
    /// for a correct build.
    pub violations: usize,
}

#[derive(Clone, Debug)]
pub struct FigureOptions {
    pub resolution: usize,
    pub seed: u64,
    pub precision: usize,
}

impl FigureOptions {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::invalid(format!(
                "resolution must be at least 2, got {resolution}"
            )));
        }
        Ok(FigureOptions {
            resolution,
            seed: 0,
            precision: crate::document::DEFAULT_PRECISION,
        })
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| {
        if k + 1 == n {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    })
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<WrittenFile> {
    let io = |e: csv::Error| {
        let source = match e.into_kind() {
            csv::ErrorKind::Io(e) => e,
            other => std::io::Error::other(format!("{other:?}")),
        };
        Error::io(path, source)
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(io)?;
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(WrittenFile {
        path: path.to_path_buf(),
        rows: rows.len(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T, rows: usize) -> Result<WrittenFile> {
    let mut text = serde_json::to_string_pretty(value).expect("figure data serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))?;
    Ok(WrittenFile {
        path: path.to_path_buf(),
        rows,
    })
}

/// Writes the data for one figure into `out_dir` (created if missing).
pub fn emit_figure_data(figure: Figure, opts: &FigureOptions, out_dir: &Path) -> Result<FigureSummary> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let (files, violations) = match figure {
        Figure::Surface => surface(opts, out_dir)?,
        Figure::Bodies => bodies(opts, out_dir)?,
        Figure::Projections => projections(opts, out_dir)?,
    };
    Ok(FigureSummary {
        figure: figure as u32,
        files,
        violations,
    })
}

fn surface(opts: &FigureOptions, dir: &Path) -> Result<(Vec<WrittenFile>, usize)> {
    let digits = opts.precision;
    let mut rows = Vec::with_capacity(opts.resolution * opts.resolution);
    let mut violations = 0;
    for u in linspace(0.0, TAU, opts.resolution) {
        for v in linspace(0.0, PI, opts.resolution) {
            let c = surface_point(u, v)?;
            if elliptope_cubic(c).abs() > 1e-12 {
                violations += 1;
            }
            rows.push(
                [u, v, c.x, c.y, c.z]
                    .iter()
                    .map(|x| format_sig(*x, digits))
                    .collect(),
            );
        }
    }
    let f = write_csv(&dir.join("fig1_surface.csv"), &["u", "v", "x", "y", "z"], &rows)?;
    Ok((vec![f], violations))
}

fn vertex_list(vs: &[CorrVec3]) -> Vec<[f64; 3]> {
    vs.iter().map(|v| v.to_array()).collect()
}

#[derive(Serialize)]
struct Bodies {
    spatial_tetrahedron: Vec<[f64; 3]>,
    temporal_tetrahedron: Vec<[f64; 3]>,
    octahedron: Vec<[f64; 3]>,
    cube: Vec<[f64; 3]>,
}

fn bodies(opts: &FigureOptions, dir: &Path) -> Result<(Vec<WrittenFile>, usize)> {
    let b = Bodies {
        spatial_tetrahedron: vertex_list(&SPATIAL_VERTICES),
        temporal_tetrahedron: vertex_list(&TEMPORAL_VERTICES),
        octahedron: vertex_list(&OCTAHEDRON_VERTICES),
        cube: vertex_list(&cube_vertices()),
    };
    let bodies_file = write_json(&dir.join("fig2_bodies.json"), &b, 4)?;

    let n = opts.resolution * opts.resolution;
    let seed = opts.seed;
    let tol = GEOMETRY_TOL;
    let mut labelled: Vec<(&str, CorrVec3, bool)> = Vec::new();

    for p in sample_spatial(&SampleSpec::new(Family::SpatialDm, n, seed)?)? {
        let c = corr_vec3(&p);
        labelled.push(("spatial", c, in_tetra_s(c, tol)));
    }
    let mixed = SampleSpec::new(Family::RandomCptp, n, seed)?.with_state(QubitState::maximally_mixed());
    for s in sample_points(&mixed)? {
        labelled.push(("temporal-maximally-mixed", s.corr, in_tetra_t(s.corr, tol)));
    }
    for s in sample_points(&SampleSpec::new(Family::ExtremalChannel, n, seed)?)? {
        labelled.push(("temporal", s.corr, in_elliptope(s.corr, tol)));
    }
    for p in sample_cube(&SampleSpec::new(Family::CubeMixture, n, seed)?)? {
        let c = corr_vec3(&p);
        labelled.push(("cube-mixture", c, in_cube(c, tol)));
    }

    let digits = opts.precision;
    let violations = labelled.iter().filter(|(_, _, ok)| !ok).count();
    let rows: Vec<Vec<String>> = labelled
        .iter()
        .map(|(label, c, _)| {
            let mut r = vec![label.to_string()];
            r.extend(c.to_array().iter().map(|x| format_sig(*x, digits)));
            r
        })
        .collect();
    let clouds = write_csv(&dir.join("fig2_clouds.csv"), &["label", "x", "y", "z"], &rows)?;
    Ok((vec![bodies_file, clouds], violations))
}

/// Representative observable pairs for the three projection types.
pub fn representative_pairs() -> [(ProjectionType, PauliPair, PauliPair); 3] {
    let pair = |a, b| PauliPair::from_indices(a, b).expect("indices in range");
    [
        (ProjectionType::A, pair(1, 1), pair(2, 2)),
        (ProjectionType::B, pair(1, 1), pair(2, 0)),
        (ProjectionType::C, pair(1, 1), pair(1, 2)),
    ]
}

fn project(p: &Pdm, a: PauliPair, b: PauliPair) -> (f64, f64) {
    let (i, j) = a.indices();
    let (k, l) = b.indices();
    (
        correlation(p, i, j).expect("indices in range"),
        correlation(p, k, l).expect("indices in range"),
    )
}

#[derive(Serialize)]
struct RegionBoundary {
    label: &'static str,
    first: [usize; 2],
    second: [usize; 2],
    spatial: Vec<[f64; 2]>,
    temporal: Vec<[f64; 2]>,
}

fn square() -> Vec<[f64; 2]> {
    vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0], [1.0, 1.0]]
}

fn circle(n: usize, digits: usize) -> Vec<[f64; 2]> {
    linspace(0.0, TAU, n.max(8))
        .map(|t| [round_sig(t.cos(), digits), round_sig(t.sin(), digits)])
        .collect()
}

/// Temporal PDMs for the projection clouds: random pure inputs through
/// extremal channels, with every fourth sample sent through the identity
/// channel (which reaches the square's corners).
pub fn projection_temporal_cloud(count: usize, seed: u64) -> Result<Vec<Pdm>> {
    let spec = SampleSpec::new(Family::ExtremalChannel, count, seed)?;
    par_map_indexed(count, 1, |i| {
        let mut rng = SampleRng::for_sample(spec.seed ^ 0x5eed_f163, i as u64);
        let state = rng.pure_state();
        let channel = if i % 4 == 0 {
            crate::channel::Channel::identity()
        } else {
            crate::channel::extremal_channel(&rng.extremal_params())
        };
        pdm_temporal(&state, &channel)
    })
    .into_iter()
    .collect()
}

fn projections(opts: &FigureOptions, dir: &Path) -> Result<(Vec<WrittenFile>, usize)> {
    let digits = opts.precision;
    let n = opts.resolution * opts.resolution;
    let regions: Vec<RegionBoundary> = representative_pairs()
        .iter()
        .map(|&(t, a, b)| {
            let disc = circle(opts.resolution, digits);
            let (spatial, temporal) = match t {
                ProjectionType::A => (square(), square()),
                ProjectionType::B => (disc, square()),
                ProjectionType::C => (disc.clone(), disc),
            };
            RegionBoundary {
                label: t.label(),
                first: [a.0.index(), a.1.index()],
                second: [b.0.index(), b.1.index()],
                spatial,
                temporal,
            }
        })
        .collect();
    let regions_file = write_json(&dir.join("fig3_regions.json"), &regions, regions.len())?;

    let spatial = sample_spatial(&SampleSpec::new(Family::SpatialDm, n, opts.seed)?)?;
    let temporal = projection_temporal_cloud(n, opts.seed)?;
    let mut rows = Vec::new();
    let mut violations = 0;
    for (t, a, b) in representative_pairs() {
        for (kind, cloud) in [
            (CorrelationKind::Spatial, &spatial),
            (CorrelationKind::Temporal, &temporal),
        ] {
            for p in cloud {
                let (p1, p2) = project(p, a, b);
                if !admissible_2d(t, (p1, p2), kind, GEOMETRY_TOL) {
                    violations += 1;
                }
                rows.push(vec![
                    t.label().to_string(),
                    match kind {
                        CorrelationKind::Spatial => "spatial".to_string(),
                        CorrelationKind::Temporal => "temporal".to_string(),
                    },
                    format_sig(p1, digits),
                    format_sig(p2, digits),
                ]);
            }
        }
    }
    let clouds = write_csv(&dir.join("fig3_clouds.csv"), &["type", "kind", "p1", "p2"], &rows)?;
    Ok((vec![regions_file, clouds], violations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("stcorr-fig-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn figure_numbers() {
        assert_eq!(Figure::from_number(2).unwrap(), Figure::Bodies);
        assert!(Figure::from_number(4).is_err());
        assert!(FigureOptions::new(1).is_err());
    }

    #[test]
    fn surface_mesh_rows() {
        let dir = tmp("surface");
        let s = emit_figure_data(Figure::Surface, &FigureOptions::new(20).unwrap(), &dir).unwrap();
        assert_eq!(s.violations, 0);
        assert_eq!(s.files[0].rows, 400);
        let text = fs::read_to_string(&s.files[0].path).unwrap();
        assert!(text.starts_with("u,v,x,y,z\n0,0,1,1,1\n"));
        assert!(!text.contains('\r'));
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn bodies_and_clouds() {
        let dir = tmp("bodies");
        let s = emit_figure_data(Figure::Bodies, &FigureOptions::new(8).unwrap(), &dir).unwrap();
        assert_eq!(s.violations, 0);
        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("fig2_bodies.json")).unwrap()).unwrap();
        let octa = json["octahedron"].as_array().unwrap();
        assert_eq!(octa.len(), 6);
        for v in octa {
            let norm1: f64 = v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap().abs()).sum();
            assert_eq!(norm1, 1.0);
        }
        assert_eq!(s.files[1].rows, 4 * 64);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn projection_clouds_show_temporal_excess() {
        let dir = tmp("proj");
        let s = emit_figure_data(Figure::Projections, &FigureOptions::new(20).unwrap(), &dir).unwrap();
        assert_eq!(s.violations, 0);
        let text = fs::read_to_string(dir.join("fig3_clouds.csv")).unwrap();
        let mut temporal_outside = 0;
        for line in text.lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            let (p1, p2): (f64, f64) = (f[2].parse().unwrap(), f[3].parse().unwrap());
            if f[0] == "b" && p1 * p1 + p2 * p2 > 1.0 + 1e-9 {
                assert_eq!(f[1], "temporal");
                temporal_outside += 1;
            }
        }
        assert!(temporal_outside > 0);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn unwritable_directory_is_io_error() {
        let file = tmp("blocker");
        fs::write(&file, "x").unwrap();
        let err = emit_figure_data(Figure::Surface, &FigureOptions::new(2).unwrap(), &file.join("sub"))
            .unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        fs::remove_file(file).unwrap();
    }
}
