//! Command-line front end: `vacpol <profile|validate|spectrum|heat-kernel|asymptotics>`.
//!
//! Everything here is plain plumbing around the library. Grid points are
//! evaluated in parallel and written back in ascending order, and numbers
//! are printed in their shortest round-trip form, so two runs with the same
//! flags produce identical bytes.

use crate::config::ConfigFile;
use crate::error::{Result, VacpolError};
use crate::field::FieldConfig;
use crate::heatkernel::{
    reflecting_kernel, semitransparent_kernel, HeatQuery, ReflectingBC, RobinParam,
    SemitransparentBC,
};
use crate::semitransparent::SpectrumReport;
use crate::validate::{self, Suite};
use crate::{reflecting, semitransparent};
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

/// Tolerance on `|omega| - 1` below which omega is silently normalized.
pub const OMEGA_NORMALIZE_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "vacpol",
    version,
    about = "Vacuum polarization near a flat wall"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate free, plane and total polarization over an x1 grid.
    Profile(ProfileArgs),
    /// Run the invariant suites and report measured deviations.
    Validate(ValidateArgs),
    /// Continuous threshold, bound states and positivity of a wall.
    Spectrum(SpectrumArgs),
    /// Tabulate the transverse heat kernel K(tau; x, y).
    HeatKernel(HeatKernelArgs),
    /// Leading-order small- and large-distance curves alone.
    Asymptotics(ProfileArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Reflecting,
    Semitransparent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sides {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
struct FieldArgs {
    /// Space dimension d.
    #[arg(short = 'd', long = "dim", default_value_t = 3)]
    dim: u32,
    /// Field mass m (0 selects the massless limit).
    #[arg(short = 'm', long = "mass", default_value_t = 1.0)]
    mass: f64,
    /// Renormalization scale, used by the massless d = 1 formulas.
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

#[derive(Debug, Clone, Args)]
struct WallArgs {
    #[arg(long, value_enum, default_value_t = Geometry::Reflecting)]
    geometry: Geometry,
    /// Robin parameter on the x1 > 0 face: a number or `dirichlet`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    b_plus: RobinParam,
    /// Robin parameter on the x1 < 0 face; defaults to --b-plus.
    #[arg(long, allow_hyphen_values = true)]
    b_minus: Option<RobinParam>,
    /// Real part of the unit-modulus phase omega of a semitransparent wall.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    omega_re: f64,
    /// Imaginary part of omega.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    omega_im: f64,
    /// Transfer-matrix entries [[alpha, beta], [gamma, sigma]], alpha*sigma - beta*gamma = 1.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    sigma: f64,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Read `key = value` defaults from a file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.1)]
    x_min: f64,
    #[arg(long, default_value_t = 5.0)]
    x_max: f64,
    #[arg(long, default_value_t = 10)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Linear)]
    spacing: Spacing,
    #[arg(long, value_enum, default_value_t = Sides::Plus)]
    sides: Sides,
}

#[derive(Debug, Clone, Args)]
struct ProfileArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    wall: WallArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct ValidateArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Multiplier applied to every pinned tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct SpectrumArgs {
    #[arg(short = 'm', long = "mass", default_value_t = 1.0)]
    mass: f64,
    #[command(flatten)]
    wall: WallArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct HeatKernelArgs {
    #[arg(short = 'm', long = "mass", default_value_t = 1.0)]
    mass: f64,
    #[command(flatten)]
    wall: WallArgs,
    /// Proper times: `a,b,c` or `min:max:points[:log]`.
    #[arg(long, default_value = "1")]
    tau: Axis,
    /// Source points, same syntax as --tau.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: Axis,
    /// Observation points, same syntax as --tau.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    y: Axis,
    #[command(flatten)]
    out: OutputArgs,
}

/// A list of sample points given explicitly or as an evenly spaced range.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis(pub Vec<f64>);

impl FromStr for Axis {
    type Err = VacpolError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            VacpolError::param(format!(
                "cannot parse '{s}' as a list or min:max:points[:log]"
            ))
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(bad)
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(bad());
            }
            let spacing = match parts.get(3).map(|p| p.trim()) {
                None | Some("linear") => Spacing::Linear,
                Some("log") => Spacing::Log,
                Some(_) => return Err(bad()),
            };
            let n = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
            Ok(Axis(sample(num(parts[0])?, num(parts[1])?, n, spacing)?))
        } else {
            s.split(',').map(num).collect::<Result<Vec<_>>>().map(Axis)
        }
    }
}

fn sample(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if n == 1 && lo == hi {
        return Ok(vec![lo]);
    }
    if n < 2 || !(lo < hi) {
        return Err(VacpolError::param(format!(
            "a range needs min < max and at least 2 points, got [{lo}, {hi}] with {n}"
        )));
    }
    if spacing == Spacing::Log && !(lo > 0.0) {
        return Err(VacpolError::param("log spacing needs a positive lower end"));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let t = i as f64 / last;
            match (i, spacing) {
                (0, _) => lo,
                (i, _) if i == n - 1 => hi,
                (_, Spacing::Linear) => lo + t * (hi - lo),
                (_, Spacing::Log) => lo * (hi / lo).powf(t),
            }
        })
        .collect())
}

/// Distances from the plane at which a profile is tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub sides: Sides,
}

impl Grid {
    /// Sample points in ascending order; `Sides::Both` mirrors the grid.
    pub fn abscissae(&self) -> Result<Vec<f64>> {
        if !(self.x_min > 0.0)
            || !self.x_max.is_finite()
            || !(self.x_min < self.x_max)
            || self.points < 2
        {
            return Err(VacpolError::param(format!(
                "grid needs 0 < x_min < x_max and points >= 2, got [{}, {}] with {}",
                self.x_min, self.x_max, self.points
            )));
        }
        let pos = sample(self.x_min, self.x_max, self.points, self.spacing)?;
        let neg = pos.iter().rev().map(|x| -x);
        Ok(match self.sides {
            Sides::Plus => pos,
            Sides::Minus => neg.collect(),
            Sides::Both => neg.chain(pos.iter().copied()).collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wall {
    Reflecting(ReflectingBC),
    Semitransparent(SemitransparentBC),
}

impl Wall {
    fn meta(&self) -> Value {
        match self {
            Wall::Reflecting(bc) => json!({
                "geometry": "reflecting",
                "b_plus": bc.b_plus.to_string(),
                "b_minus": bc.b_minus.to_string(),
            }),
            Wall::Semitransparent(bc) => json!({
                "geometry": "semitransparent",
                "omega_re": bc.omega.re,
                "omega_im": bc.omega.im,
                "alpha": bc.alpha,
                "beta": bc.beta,
                "gamma": bc.gamma_coupling,
                "sigma": bc.sigma_param,
            }),
        }
    }

    pub fn spectrum(&self, m: f64) -> SpectrumReport {
        match self {
            Wall::Reflecting(bc) => reflecting::spectrum(bc, m),
            Wall::Semitransparent(bc) => semitransparent::spectrum(bc, m),
        }
    }
}

/// One row of `vacpol profile`. Asymptotic columns are `None` where the
/// leading term is undefined (massless field) and the relative deviations
/// are `None` when the leading term vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub x1: f64,
    pub free: f64,
    pub plane: f64,
    pub total: f64,
    pub asympt_small: Option<f64>,
    pub asympt_large: Option<f64>,
    pub rel_dev_small: Option<f64>,
    pub rel_dev_large: Option<f64>,
}

pub const PROFILE_COLUMNS: [&str; 8] = [
    "x1",
    "free",
    "plane",
    "total",
    "asympt_small",
    "asympt_large",
    "rel_dev_small",
    "rel_dev_large",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticsRow {
    pub x1: f64,
    pub asympt_small: f64,
    pub asympt_large: f64,
}

pub const ASYMPTOTICS_COLUMNS: [&str; 3] = ["x1", "asympt_small", "asympt_large"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatKernelRow {
    pub tau: f64,
    pub x: f64,
    pub y: f64,
    pub kernel_re: f64,
    pub kernel_im: f64,
}

pub const HEAT_KERNEL_COLUMNS: [&str; 5] = ["tau", "x", "y", "kernel_re", "kernel_im"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRequest {
    pub cfg: FieldConfig,
    pub wall: Wall,
    pub grid: Grid,
}

/// An evaluation error together with the grid point where it occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct PointError {
    pub x1: f64,
    pub error: VacpolError,
}

impl std::fmt::Display for PointError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at x1 = {}: {}", self.x1, self.error)
    }
}

fn rel_dev(value: f64, reference: Option<f64>) -> Option<f64> {
    reference.filter(|r| *r != 0.0).map(|r| value / r - 1.0)
}

fn profile_point(cfg: &FieldConfig, wall: &Wall, x1: f64) -> Result<ProfileRow> {
    let (value, small, large) = match wall {
        Wall::Reflecting(bc) => (
            reflecting::evaluate(cfg, bc, x1)?,
            (!cfg.is_massless()).then(|| reflecting::small_x_asymptotic(cfg, bc, x1)),
            (!cfg.is_massless()).then(|| reflecting::large_x_asymptotic(cfg, bc, x1)),
        ),
        Wall::Semitransparent(bc) => (
            semitransparent::evaluate(cfg, bc, x1)?,
            (!cfg.is_massless()).then(|| semitransparent::small_x_asymptotic(cfg, bc, x1)),
            (!cfg.is_massless()).then(|| semitransparent::large_x_asymptotic(cfg, bc, x1)),
        ),
    };
    let small = small.transpose()?;
    let large = large.transpose()?;
    Ok(ProfileRow {
        x1,
        free: value.free_term,
        plane: value.plane_term,
        total: value.total,
        asympt_small: small,
        asympt_large: large,
        rel_dev_small: rel_dev(value.plane_term, small),
        rel_dev_large: rel_dev(value.plane_term, large),
    })
}

/// Evaluates every grid point in parallel; rows come back in grid order.
/// On failure the error at the smallest failing `x1` is returned.
pub fn profile_rows(req: &ProfileRequest) -> std::result::Result<Vec<ProfileRow>, PointError> {
    let xs = req.grid.abscissae().map_err(|error| PointError {
        x1: req.grid.x_min,
        error,
    })?;
    xs.par_iter()
        .map(|&x1| profile_point(&req.cfg, &req.wall, x1).map_err(|error| PointError { x1, error }))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub fn asymptotics_rows(
    req: &ProfileRequest,
) -> std::result::Result<Vec<AsymptoticsRow>, PointError> {
    let xs = req.grid.abscissae().map_err(|error| PointError {
        x1: req.grid.x_min,
        error,
    })?;
    let cfg = &req.cfg;
    xs.par_iter()
        .map(|&x1| {
            let pair = match &req.wall {
                Wall::Reflecting(bc) => reflecting::small_x_asymptotic(cfg, bc, x1)
                    .and_then(|s| Ok((s, reflecting::large_x_asymptotic(cfg, bc, x1)?))),
                Wall::Semitransparent(bc) => semitransparent::small_x_asymptotic(cfg, bc, x1)
                    .and_then(|s| Ok((s, semitransparent::large_x_asymptotic(cfg, bc, x1)?))),
            };
            pair.map(|(asympt_small, asympt_large)| AsymptoticsRow {
                x1,
                asympt_small,
                asympt_large,
            })
            .map_err(|error| PointError { x1, error })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Kernel values on the `tau x x x y` product, `tau` outermost.
pub fn heat_kernel_rows(
    wall: &Wall,
    m: f64,
    tau: &[f64],
    x: &[f64],
    y: &[f64],
) -> Result<Vec<HeatKernelRow>> {
    if !(m >= 0.0) || !m.is_finite() {
        return Err(VacpolError::param(format!(
            "mass must be finite and >= 0, got {m}"
        )));
    }
    let pts: Vec<(f64, f64, f64)> = tau
        .iter()
        .flat_map(|&t| {
            x.iter()
                .flat_map(move |&a| y.iter().map(move |&b| (t, a, b)))
        })
        .collect();
    pts.par_iter()
        .map(|&(t, a, b)| {
            let q = HeatQuery::new(t, a, b)?;
            let k = match wall {
                Wall::Reflecting(bc) => Complex64::new(reflecting_kernel(&q, bc, m)?, 0.0),
                Wall::Semitransparent(bc) => semitransparent_kernel(&q, bc, m)?,
            };
            Ok(HeatKernelRow {
                tau: t,
                x: a,
                y: b,
                kernel_re: k.re,
                kernel_im: k.im,
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn build_wall(w: &WallArgs) -> Result<Wall> {
    match w.geometry {
        Geometry::Reflecting => Ok(Wall::Reflecting(ReflectingBC::new(
            w.b_plus,
            w.b_minus.unwrap_or(w.b_plus),
        )?)),
        Geometry::Semitransparent => {
            let omega = Complex64::new(w.omega_re, w.omega_im);
            let n = omega.norm();
            if !((n - 1.0).abs() <= OMEGA_NORMALIZE_TOL) {
                return Err(VacpolError::param(format!(
                    "|omega| = {n} is not within {OMEGA_NORMALIZE_TOL:e} of 1"
                )));
            }
            Ok(Wall::Semitransparent(SemitransparentBC::new(
                omega / n,
                w.alpha,
                w.beta,
                w.gamma,
                w.sigma,
            )?))
        }
    }
}

fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else {
        v.to_string()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn csv_table(columns: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn json_doc(meta: Value, key: &'static str, body: impl Serialize) -> Result<String> {
    use serde::ser::SerializeMap;
    struct Doc<B> {
        meta: Value,
        key: &'static str,
        body: B,
    }
    impl<B: Serialize> Serialize for Doc<B> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut m = s.serialize_map(Some(2))?;
            m.serialize_entry("meta", &self.meta)?;
            m.serialize_entry(self.key, &self.body)?;
            m.end()
        }
    }
    let mut s = serde_json::to_string_pretty(&Doc { meta, key, body })
        .map_err(|e| VacpolError::param(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(am), Value::Object(bm)) = (a.as_object_mut(), b) {
        am.extend(bm);
    }
    a
}

fn field_meta(f: &FieldArgs) -> Value {
    json!({ "d": f.dim, "m": f.mass, "kappa": f.kappa })
}

/// Text written to standard output (or `--output`) plus the exit code.
struct Outcome {
    text: String,
    code: i32,
    /// Extra diagnostic for standard error.
    note: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
            note: None,
        }
    }
}

enum Failure {
    Plain(VacpolError),
    At(PointError),
}

impl From<VacpolError> for Failure {
    fn from(e: VacpolError) -> Self {
        Failure::Plain(e)
    }
}

impl From<PointError> for Failure {
    fn from(e: PointError) -> Self {
        Failure::At(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Plain(e) => e.exit_code(),
            Failure::At(p) => p.error.exit_code(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Plain(e) => e.to_string(),
            Failure::At(p) => p.to_string(),
        }
    }
}

fn cmd_profile(a: &ProfileArgs, asymptotics_only: bool) -> std::result::Result<Outcome, Failure> {
    let cfg = FieldConfig::new(a.field.dim, a.field.mass, a.field.kappa)?;
    let wall = build_wall(&a.wall)?;
    let grid = Grid {
        x_min: a.grid.x_min,
        x_max: a.grid.x_max,
        points: a.grid.points,
        spacing: a.grid.spacing,
        sides: a.grid.sides,
    };
    let req = ProfileRequest { cfg, wall, grid };
    let command = if asymptotics_only {
        "asymptotics"
    } else {
        "profile"
    };
    let meta = merge(
        merge(json!({ "command": command }), field_meta(&a.field)),
        merge(wall.meta(), json!({ "grid": grid })),
    );
    let text = if asymptotics_only {
        let rows = asymptotics_rows(&req)?;
        match a.out.format {
            Format::Csv => csv_table(
                &ASYMPTOTICS_COLUMNS,
                rows.iter().map(|r| {
                    vec![
                        fmt_num(r.x1),
                        fmt_num(r.asympt_small),
                        fmt_num(r.asympt_large),
                    ]
                }),
            ),
            Format::Json => json_doc(meta, "rows", &rows)?,
        }
    } else {
        let rows = profile_rows(&req)?;
        match a.out.format {
            Format::Csv => csv_table(
                &PROFILE_COLUMNS,
                rows.iter().map(|r| {
                    vec![
                        fmt_num(r.x1),
                        fmt_num(r.free),
                        fmt_num(r.plane),
                        fmt_num(r.total),
                        fmt_opt(r.asympt_small),
                        fmt_opt(r.asympt_large),
                        fmt_opt(r.rel_dev_small),
                        fmt_opt(r.rel_dev_large),
                    ]
                }),
            ),
            Format::Json => json_doc(meta, "rows", &rows)?,
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_validate(a: &ValidateArgs) -> std::result::Result<Outcome, Failure> {
    let report = validate::run(a.suite, a.tol)?;
    let text = match a.out.format {
        Format::Csv => csv_table(
            &["suite", "name", "deviation", "tolerance", "passed", "note"],
            report.checks.iter().map(|c| {
                vec![
                    c.suite.to_string(),
                    c.name.to_string(),
                    fmt_opt(c.deviation),
                    fmt_num(c.tolerance),
                    c.passed.to_string(),
                    c.note.as_deref().unwrap_or("").replace([',', '\n'], ";"),
                ]
            }),
        ),
        Format::Json => json_doc(
            json!({ "command": "validate", "suite": a.suite, "tol_multiplier": a.tol }),
            "checks",
            &report.checks,
        )?,
    };
    let failed = report.failures().count();
    Ok(Outcome {
        text,
        code: if failed == 0 {
            EXIT_OK
        } else {
            EXIT_VALIDATION
        },
        note: (failed > 0).then(|| format!("{failed} of {} checks failed", report.checks.len())),
    })
}

fn cmd_spectrum(a: &SpectrumArgs) -> std::result::Result<Outcome, Failure> {
    if !(a.mass >= 0.0) || !a.mass.is_finite() {
        return Err(
            VacpolError::param(format!("mass must be finite and >= 0, got {}", a.mass)).into(),
        );
    }
    let wall = build_wall(&a.wall)?;
    let rep = wall.spectrum(a.mass);
    let text = match a.out.format {
        Format::Csv => {
            let mut rows = vec![vec![
                "threshold".to_string(),
                fmt_num(rep.continuous_threshold),
            ]];
            if let (Some(lp), Some(lm)) = (rep.lambda_plus, rep.lambda_minus) {
                rows.push(vec!["lambda_plus".into(), fmt_num(lp)]);
                rows.push(vec!["lambda_minus".into(), fmt_num(lm)]);
            }
            rows.extend(
                rep.point_eigenvalues
                    .iter()
                    .map(|e| vec!["eigenvalue".into(), fmt_num(*e)]),
            );
            rows.push(vec!["positive".into(), rep.positive.to_string()]);
            csv_table(&["quantity", "value"], rows.into_iter())
        }
        Format::Json => json_doc(
            merge(json!({ "command": "spectrum", "m": a.mass }), wall.meta()),
            "report",
            &rep,
        )?,
    };
    Ok(Outcome {
        text,
        code: if rep.positive { EXIT_OK } else { EXIT_USAGE },
        note: (!rep.positive)
            .then(|| "the wall operator is not positive; polarization is undefined".to_string()),
    })
}

fn cmd_heat_kernel(a: &HeatKernelArgs) -> std::result::Result<Outcome, Failure> {
    let wall = build_wall(&a.wall)?;
    let rows = heat_kernel_rows(&wall, a.mass, &a.tau.0, &a.x.0, &a.y.0)?;
    let text = match a.out.format {
        Format::Csv => csv_table(
            &HEAT_KERNEL_COLUMNS,
            rows.iter().map(|r| {
                vec![
                    fmt_num(r.tau),
                    fmt_num(r.x),
                    fmt_num(r.y),
                    fmt_num(r.kernel_re),
                    fmt_num(r.kernel_im),
                ]
            }),
        ),
        Format::Json => json_doc(
            merge(
                json!({ "command": "heat-kernel", "m": a.mass, "tau": a.tau.0, "x": a.x.0, "y": a.y.0 }),
                wall.meta(),
            ),
            "rows",
            &rows,
        )?,
    };
    Ok(Outcome::ok(text))
}

/// Finds `--config <path>` or `--config=<path>` in the raw arguments.
fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Splices file entries in front of the user's flags. Later occurrences
/// override earlier ones, so explicit flags win.
fn with_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    if args.len() < 2 {
        return Ok(args);
    }
    let file = ConfigFile::load(&path)?;
    let mut merged: Vec<OsString> = args[..2].to_vec();
    for (k, v) in file.iter() {
        if k == "config" {
            return Err(VacpolError::param(
                "a config file cannot name another config file",
            ));
        }
        let flag = if k.len() == 1 {
            format!("-{k}")
        } else {
            format!("--{k}")
        };
        merged.push(format!("{flag}={v}").into());
    }
    merged.extend(args[2..].iter().cloned());
    Ok(merged)
}

fn command() -> clap::Command {
    Cli::command().mut_subcommands(|s| s.args_override_self(true))
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` (unless `--output` is given) and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match with_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "vacpol: {e}");
            return e.exit_code();
        }
    };
    let cli = match command()
        .try_get_matches_from(args)
        .and_then(|m| Cli::from_arg_matches(&m))
    {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (result, dest) = match &cli.command {
        Command::Profile(a) => (cmd_profile(a, false), &a.out.output),
        Command::Asymptotics(a) => (cmd_profile(a, true), &a.out.output),
        Command::Validate(a) => (cmd_validate(a), &a.out.output),
        Command::Spectrum(a) => (cmd_spectrum(a), &a.out.output),
        Command::HeatKernel(a) => (cmd_heat_kernel(a), &a.out.output),
    };
    match result {
        Ok(o) => {
            let written = match dest {
                Some(p) => std::fs::write(p, &o.text),
                None => out.write_all(o.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "vacpol: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if let Some(n) = o.note {
                let _ = writeln!(err, "vacpol: {n}");
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "vacpol: {}", f.message());
            f.code()
        }
    }
}
