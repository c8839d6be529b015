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

//! `stcorr` command-line tool.
//!
//! Exit codes: 0 success, 2 invalid input or failed validation, 3 I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stcorr::channel::{extremal_channel, AxisPermutation, Channel, ExtremalParams};
use stcorr::document::{format_sig, round_json, Loaded, MatrixDocument, DEFAULT_PRECISION};
use stcorr::error::{Error, Result};
use stcorr::figures::{emit_figure_data, Figure, FigureOptions};
use stcorr::geometry::{in_elliptope, in_tetra_s, in_tetra_t, CorrVec3, GEOMETRY_TOL};
use stcorr::inference::infer_causal;
use stcorr::linalg::{BellState, ComplexMatrix};
use stcorr::pdm::{pdm_from_correlations, pdm_spatial, pdm_temporal, Pdm, QubitState};
use stcorr::report::analyze;
use stcorr::sampling::{sample_points, Family, SampleSpec};

const OUT_DIR_ENV: &str = "STCORR_OUT_DIR";

// Like println!, but a closed pipe (`stcorr ... | head`) is not a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser, Debug)]
#[command(
    name = "stcorr",
    version,
    about = "Pseudo-density matrices and space-time qubit correlation geometry",
    after_help = "All angles are in radians.\n\
                  Exit codes: 0 success, 2 invalid input or failed validation, 3 I/O error.\n\
                  STCORR_OUT_DIR sets the default output directory for `sample` and `figures`."
)]
struct Cli {
    /// Significant digits in numeric output.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a PDM document from a state and channel, a two-qubit state, or a correlation table.
    Build(BuildArgs),
    /// Report causality and entanglement measures of a PDM document.
    Analyze(AnalyzeArgs),
    /// Classify a correlation triple against the spatial and temporal bodies.
    Classify(ClassifyArgs),
    /// Write a seeded point cloud as CSV.
    Sample(SampleArgs),
    /// Write the data behind figure 1, 2 or 3.
    Figures(FiguresArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Input qubit state: `maximally-mixed`, `bloch x,y,z`, or a state document.
    #[arg(long, requires = "channel", conflicts_with_all = ["spatial", "correlations"])]
    state: Option<String>,

    /// Channel between the two times: `extremal u,v[,perm]` (radians, perm like 132),
    /// a name such as `identity`, `depolarizing:0.5`, `amplitude-damping:0.3`,
    /// or a channel document.
    #[arg(long, requires = "state")]
    channel: Option<String>,

    /// Two-qubit state: `bell-phi-plus`, `bell-phi-minus`, `bell-psi-plus`,
    /// `bell-psi-minus`, `singlet`, `maximally-mixed`, or a state document.
    #[arg(long, conflicts_with = "correlations")]
    spatial: Option<String>,

    /// Correlation-table document with `T[0][0] = 1`.
    #[arg(long)]
    correlations: Option<PathBuf>,

    /// Output file; the document is printed when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// PDM (or correlation-table) document.
    #[arg(long)]
    pdm: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Membership tolerance.
    #[arg(long, default_value_t = GEOMETRY_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Correlation triple `x,y,z` = (⟨σ1σ1⟩, ⟨σ2σ2⟩, ⟨σ3σ3⟩).
    #[arg(long, allow_hyphen_values = true)]
    point: String,

    /// Membership tolerance.
    #[arg(long, default_value_t = GEOMETRY_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// One of extremal-channel, mixed-channel, random-cptp, unital-channel,
    /// pauli-channel, spatial-dm, cube-mixture.
    #[arg(long)]
    family: Family,

    #[arg(long, default_value_t = 1000)]
    count: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Fixed input state for channel families (`maximally-mixed` or `bloch x,y,z`);
    /// a random pure state per sample when omitted.
    #[arg(long)]
    state: Option<String>,

    /// Output directory; the CSV is named after the family.
    #[arg(short, long, env = OUT_DIR_ENV, default_value = ".")]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    /// Figure number: 1, 2 or 3.
    #[arg(long)]
    figure: u32,

    /// Mesh points per axis; clouds hold resolution² points.
    #[arg(long, default_value_t = 100)]
    resolution: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output directory.
    #[arg(short, long, env = OUT_DIR_ENV, default_value = ".")]
    output: PathBuf,
}

fn parse_floats(text: &str, expect: &[usize], what: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidArgument(format!("{what}: cannot parse '{text}': {e}")))?;
    if !expect.contains(&values.len()) {
        return Err(Error::InvalidArgument(format!(
            "{what}: expected {expect:?} comma-separated numbers, got {}",
            values.len()
        )));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what}: values must be finite")));
    }
    Ok(values)
}

fn load(path: &Path) -> Result<Loaded> {
    MatrixDocument::read(path)?.load()
}

fn wrong_kind(path: &Path, want: &str) -> Error {
    Error::Format(format!("{} does not hold {want}", path.display()))
}

/// Joins `--state bloch x,y,z` and `--channel extremal u,v` into single
/// `bloch:x,y,z` / `extremal:u,v` values so negative components are not
/// mistaken for flags.
fn merge_keyword_values(args: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(args.len());
    let mut it = args.into_iter().peekable();
    while let Some(a) = it.next() {
        let after_flag = matches!(out.last().map(String::as_str), Some("--state" | "--channel"));
        if after_flag && (a == "bloch" || a == "extremal") {
            if let Some(v) = it.next_if(|v| !v.starts_with("--")) {
                out.push(format!("{a}:{v}"));
                continue;
            }
        }
        out.push(a);
    }
    out
}

fn parse_state(spec: &str) -> Result<QubitState> {
    if spec == "maximally-mixed" {
        return Ok(QubitState::maximally_mixed());
    }
    if let Some(v) = spec.strip_prefix("bloch:") {
        let b = parse_floats(v, &[3], "bloch vector")?;
        return QubitState::from_bloch([b[0], b[1], b[2]]);
    }
    if spec == "bloch" {
        return Err(Error::InvalidArgument("bloch needs x,y,z".into()));
    }
    match load(Path::new(spec))? {
        Loaded::Qubit(q) => Ok(q),
        _ => Err(wrong_kind(Path::new(spec), "a one-qubit state")),
    }
}

fn parse_channel(spec: &str) -> Result<Channel> {
    match spec.split_once(':') {
        Some(("extremal", v)) => {
            let a = parse_floats(v, &[2, 3], "extremal u,v[,perm]")?;
            let perm = match a.get(2) {
                None => AxisPermutation::IDENTITY,
                Some(&p) => {
                    let digits = format!("{p}");
                    let images: Vec<u8> = digits.bytes().map(|b| b.wrapping_sub(b'0')).collect();
                    let images: [u8; 3] = images.try_into().map_err(|_| {
                        Error::InvalidArgument(format!("permutation must be three digits, got {digits}"))
                    })?;
                    AxisPermutation::new(images)?
                }
            };
            Ok(extremal_channel(&ExtremalParams::new(a[0], a[1], perm)?))
        }
        _ => {
            let s = spec;
            let path = Path::new(s);
            if path.exists() {
                return match load(path)? {
                    Loaded::Channel(c) => Ok(c),
                    _ => Err(wrong_kind(path, "a channel")),
                };
            }
            let (name, param) = match s.split_once(':') {
                Some((n, p)) => (n, Some(parse_floats(p, &[1], "channel parameter")?[0])),
                None => (s, None),
            };
            Channel::named(name, param)
        }
    }
}

fn parse_spatial(spec: &str) -> Result<ComplexMatrix> {
    if let Some(b) = BellState::ALL.iter().find(|b| b.name() == spec) {
        return Ok(b.density_matrix());
    }
    match spec {
        "singlet" => Ok(BellState::PsiMinus.density_matrix()),
        "maximally-mixed" => Ok(ComplexMatrix::identity(4)?.scale(0.25)),
        path => match load(Path::new(path))? {
            Loaded::TwoQubit(m) => Ok(m),
            _ => Err(wrong_kind(Path::new(path), "a two-qubit state")),
        },
    }
}

fn build(args: &BuildArgs, digits: usize) -> Result<()> {
    let pdm = match (&args.state, &args.channel, &args.spatial, &args.correlations) {
        (Some(s), Some(c), None, None) => pdm_temporal(&parse_state(s)?, &parse_channel(c)?)?,
        (None, None, Some(s), None) => pdm_spatial(&parse_spatial(s)?)?,
        (None, None, None, Some(path)) => match load(path)? {
            Loaded::Correlations(t) => pdm_from_correlations(&t)?,
            Loaded::Pdm(p) => p,
            _ => return Err(wrong_kind(path, "a correlation table")),
        },
        _ => {
            return Err(Error::InvalidArgument(
                "give --state with --channel, or --spatial, or --correlations".into(),
            ))
        }
    };
    let doc = MatrixDocument::from_pdm(&pdm, digits);
    match &args.output {
        Some(path) => doc.write(path),
        None => {
            out!("{}", doc.to_json());
            Ok(())
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T, digits: usize) {
    let mut v = serde_json::to_value(value).expect("report serializes");
    round_json(&mut v, digits);
    out!("{}", serde_json::to_string_pretty(&v).expect("value serializes"));
}

fn join(xs: &[f64], digits: usize) -> String {
    xs.iter().map(|x| format_sig(*x, digits)).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze_cmd(args: &AnalyzeArgs, digits: usize) -> Result<()> {
    let pdm: Pdm = match load(&args.pdm)? {
        Loaded::Pdm(p) => p,
        Loaded::Correlations(t) => pdm_from_correlations(&t)?,
        _ => return Err(wrong_kind(&args.pdm, "a PDM")),
    };
    let a = analyze(&pdm, args.tol)?;
    if let Format::Json = args.format {
        print_json(&a, digits);
        return Ok(());
    }
    let r = &a.region;
    let mut out = String::new();
    let _ = writeln!(out, "f_tr             {}", format_sig(a.f_tr, digits));
    let _ = writeln!(out, "eigenvalues      {}", join(&a.eigenvalues, digits));
    let _ = writeln!(out, "pt_negativity    {}", format_sig(a.pt_negativity, digits));
    let _ = writeln!(out, "corr             {}", join(&a.corr.to_array(), digits));
    let _ = writeln!(
        out,
        "regions          T_s:{} T_t:{} octahedron:{} elliptope:{} cube:{}",
        yes(r.in_ts),
        yes(r.in_tt),
        yes(r.in_octahedron),
        yes(r.in_elliptope),
        yes(r.in_cube)
    );
    let _ = writeln!(out, "elliptope_defect {}", format_sig(r.elliptope_defect, digits));
    let _ = writeln!(out, "dist_octahedron  {}", format_sig(r.dist_octahedron, digits));
    let _ = writeln!(out, "d_t              {}", format_sig(a.d_t, digits));
    let _ = writeln!(out, "d_s              {}", format_sig(a.d_s, digits));
    let _ = writeln!(out, "hypothesis       {}", a.hypothesis.summary());
    out!("{}", out.trim_end());
    Ok(())
}

fn classify_cmd(args: &ClassifyArgs, digits: usize) -> Result<()> {
    let p = parse_floats(&args.point, &[3], "point")?;
    if !(args.tol >= 0.0) {
        return Err(Error::InvalidArgument("tolerance must be non-negative".into()));
    }
    let c = CorrVec3::new(p[0], p[1], p[2]);
    let h = infer_causal(c, args.tol);
    #[derive(serde::Serialize)]
    struct Out {
        region: stcorr::geometry::RegionReport,
        hypothesis: stcorr::inference::CausalHypothesis,
        summary: &'static str,
    }
    print_json(
        &Out {
            region: stcorr::geometry::classify(c, args.tol),
            hypothesis: h,
            summary: h.summary(),
        },
        digits,
    );
    Ok(())
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| {
        let source = match e.into_kind() {
            csv::ErrorKind::Io(e) => e,
            other => std::io::Error::other(format!("{other:?}")),
        };
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

fn sample_cmd(args: &SampleArgs, digits: usize) -> Result<()> {
    let mut spec = SampleSpec::new(args.family, args.count, args.seed)?;
    if let Some(s) = &args.state {
        if !args.family.is_channel_family() {
            return Err(Error::InvalidArgument(format!(
                "--state applies to channel families, not '{}'",
                args.family
            )));
        }
        spec = spec.with_state(parse_state(s)?);
    }
    let points = sample_points(&spec)?;

    std::fs::create_dir_all(&args.output).map_err(|e| Error::Io {
        path: args.output.clone(),
        source: e,
    })?;
    let path = args.output.join(format!("{}.csv", args.family));
    let err = csv_err(&path);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .map_err(&err)?;
    w.write_record(["index", "bx", "by", "bz", "x", "y", "z", "f_tr", "in_ts", "in_tt", "in_elliptope"])
        .map_err(&err)?;
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    let mut violations = 0;
    for p in &points {
        let c = p.corr.to_array();
        for k in 0..3 {
            lo[k] = lo[k].min(c[k]);
            hi[k] = hi[k].max(c[k]);
        }
        if p.violates(args.family) {
            violations += 1;
        }
        let mut row = vec![p.index.to_string()];
        match p.bloch {
            Some(b) => row.extend(b.iter().map(|x| format_sig(*x, digits))),
            None => row.extend(["".to_string(), "".to_string(), "".to_string()]),
        }
        row.extend(c.iter().map(|x| format_sig(*x, digits)));
        row.push(format_sig(p.f_tr, digits));
        for inside in [
            in_tetra_s(p.corr, GEOMETRY_TOL),
            in_tetra_t(p.corr, GEOMETRY_TOL),
            in_elliptope(p.corr, GEOMETRY_TOL),
        ] {
            row.push(if inside { "1" } else { "0" }.to_string());
        }
        w.write_record(&row).map_err(&err)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: path.clone(),
        source: e,
    })?;
    out!(
        "wrote {} rows to {}; violations {}; bounding box x [{}, {}] y [{}, {}] z [{}, {}]",
        points.len(),
        path.display(),
        violations,
        format_sig(lo[0], 6),
        format_sig(hi[0], 6),
        format_sig(lo[1], 6),
        format_sig(hi[1], 6),
        format_sig(lo[2], 6),
        format_sig(hi[2], 6),
    );
    check_violations(violations)
}

fn check_violations(violations: usize) -> Result<()> {
    if violations == 0 {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "{violations} points violate their region's membership law"
        )))
    }
}

fn figures_cmd(args: &FiguresArgs, digits: usize) -> Result<()> {
    let figure = Figure::from_number(args.figure)?;
    let mut opts = FigureOptions::new(args.resolution)?;
    opts.seed = args.seed;
    opts.precision = digits;
    let summary = emit_figure_data(figure, &opts, &args.output)?;
    for f in &summary.files {
        out!("wrote {} rows to {}", f.rows, f.path.display());
    }
    out!("figure {}: violations {}", summary.figure, summary.violations);
    check_violations(summary.violations)
}

fn run(cli: &Cli) -> Result<()> {
    if cli.precision == 0 || cli.precision > 17 {
        return Err(Error::InvalidArgument("precision must be between 1 and 17".into()));
    }
    let d = cli.precision;
    match &cli.command {
        Command::Build(a) => build(a, d),
        Command::Analyze(a) => analyze_cmd(a, d),
        Command::Classify(a) => classify_cmd(a, d),
        Command::Sample(a) => sample_cmd(a, d),
        Command::Figures(a) => figures_cmd(a, d),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(merge_keyword_values(std::env::args().collect())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stcorr: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
