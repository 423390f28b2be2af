use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use tfshift::density::{
    equidistribution_diagnostic, lower_density_empirical, PointSetSpec, DEFAULT_PROBE_GRID,
};
use tfshift::gabor::{
    canonical_dual, frame_bounds, frame_operator_direct, periodic_gaussian, periodized_gaussian,
    FiniteGaborSystem, Signal, DEFAULT_RANK_TOL,
};
use tfshift::invariance::{
    criteria_engine, gaussian_corollary_scenario, scan_invariance, DichotomyVerdict, DEFAULT_TOL,
};
use tfshift::io;
use tfshift::lattice::{
    order_in_lattice, reduce_invariant_shift, separate, Lattice2D, Rational, RationalMatrix2x2,
    SeparableLattice,
};
use tfshift::Error;

use crate::parse;

/// What a command produced: stdout JSON, extra files and calibrated constants.
pub struct Outcome {
    pub report: Value,
    pub files: Vec<(String, Vec<u8>)>,
    pub constants: Value,
    /// Analysis-level negative result; maps to exit code 3.
    pub negative: Option<String>,
}

impl Outcome {
    fn new(report: Value) -> Self {
        Outcome {
            report,
            files: Vec::new(),
            constants: json!({}),
            negative: None,
        }
    }

    fn file(mut self, name: &str, bytes: impl Into<Vec<u8>>) -> Self {
        self.files.push((name.to_string(), bytes.into()));
        self
    }
}

pub enum Failure {
    Precondition(Error),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFrameSequence(_) => Failure::Negative(e.to_string()),
            other => Failure::Precondition(other),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s.into_bytes()
}

#[derive(Args, Debug, Serialize)]
pub struct ReduceArgs {
    #[arg(long, value_parser = parse::rational, default_value = "1")]
    #[serde(serialize_with = "ser_display")]
    pub a: Rational,
    #[arg(long, value_parser = parse::rational, default_value = "1")]
    #[serde(serialize_with = "ser_display")]
    pub b: Rational,
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub s: i64,
    #[arg(long)]
    pub m: i64,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn reduce(args: &ReduceArgs) -> CmdResult {
    let res = reduce_invariant_shift(&args.a, &args.b, args.r, args.s, args.m)?;
    let report = to_json(&res);
    Ok(Outcome::new(report.clone()).file("reduce.json", json_bytes(&report)))
}

#[derive(Args, Debug, Serialize)]
pub struct SeparateArgs {
    /// Basis `b11,b12,b21,b22`, row-major; the columns generate the lattice.
    #[arg(long, value_parser = parse::rational_matrix)]
    #[serde(serialize_with = "ser_matrix")]
    pub basis: [[Rational; 2]; 2],
}

fn ser_matrix<S: serde::Serializer>(m: &[[Rational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    rows.serialize(s)
}

pub fn separate_cmd(args: &SeparateArgs) -> CmdResult {
    let lat = Lattice2D::new(RationalMatrix2x2::new(args.basis.clone()))?;
    let sep = separate(&lat)?;
    let report = to_json(&sep);
    Ok(Outcome::new(report.clone()).file("separate.json", json_bytes(&report)))
}

#[derive(Args, Debug, Serialize)]
pub struct OrderArgs {
    /// The point `p/q,u/v`.
    #[arg(long, value_parser = parse::rational_pair)]
    #[serde(serialize_with = "ser_pair")]
    pub z: [Rational; 2],
    /// Lattice basis `b11,b12,b21,b22`; defaults to Z².
    #[arg(long, value_parser = parse::rational_matrix)]
    #[serde(serialize_with = "ser_opt_matrix")]
    pub basis: Option<[[Rational; 2]; 2]>,
    #[arg(long = "n-max", default_value_t = 1_000_000)]
    pub n_max: u64,
}

fn ser_pair<S: serde::Serializer>(p: &[Rational; 2], s: S) -> Result<S::Ok, S::Error> {
    [p[0].to_string(), p[1].to_string()].serialize(s)
}

fn ser_opt_matrix<S: serde::Serializer>(
    m: &Option<[[Rational; 2]; 2]>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_matrix(m, s),
        None => s.serialize_none(),
    }
}

pub fn order(args: &OrderArgs) -> CmdResult {
    let lat = match &args.basis {
        Some(b) => Lattice2D::new(RationalMatrix2x2::new(b.clone()))?,
        None => Lattice2D::integer(),
    };
    let n = order_in_lattice(&args.z, &lat, args.n_max);
    let report = json!({
        "z": [args.z[0].to_string(), args.z[1].to_string()],
        "order": n,
    });
    let mut out = Outcome::new(report.clone()).file("order.json", json_bytes(&report));
    if n.is_none() {
        out.negative = Some(format!("no order at most {}", args.n_max));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowKind {
    Gaussian,
    PeriodicGaussian,
    File,
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct SystemArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub window: WindowKind,
    /// Gaussian width parameter `c` in `exp(−c x²)`.
    #[arg(long, value_parser = parse::real, default_value = "3.141592653589793")]
    pub c: f64,
    /// Period of the periodic Gaussian; defaults to `a/ν` (or `a/2`).
    #[arg(long)]
    pub period: Option<usize>,
    /// Signal CSV (`index,real,imag`) for `--window file`.
    #[arg(long = "window-file")]
    pub window_file: Option<PathBuf>,
    /// Seed for `--window random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SystemArgs {
    fn build(&self, nu: Option<usize>) -> Result<FiniteGaborSystem, Failure> {
        let l = self.l;
        let window = match self.window {
            WindowKind::Gaussian => periodized_gaussian(l, self.c)?,
            WindowKind::PeriodicGaussian => {
                let period = self.period.unwrap_or(self.a / nu.unwrap_or(2).max(1));
                periodic_gaussian(l, self.c, period)?
            }
            WindowKind::File => {
                let path = self.window_file.as_ref().ok_or_else(|| {
                    Error::InvalidParameter("--window file needs --window-file".into())
                })?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let g = io::signal_from_csv(&text)?;
                if g.len() != l {
                    return Err(Error::InvalidParameter(format!(
                        "window has {} samples, expected L = {l}",
                        g.len()
                    ))
                    .into());
                }
                g
            }
            WindowKind::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let v: Vec<f64> = (0..2 * l).map(|_| rng.random_range(-1.0..1.0)).collect();
                Signal(
                    v.chunks(2)
                        .map(|p| num_complex::Complex64::new(p[0], p[1]))
                        .collect(),
                )
            }
        };
        if window.is_zero() {
            return Err(Error::ZeroWindow.into());
        }
        Ok(FiniteGaborSystem::new(l, self.a, self.b, window)?)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CriteriaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 2)]
    pub nu: usize,
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub tol: f64,
}

pub fn criteria(args: &CriteriaArgs) -> CmdResult {
    let sys = args.system.build(Some(args.nu))?;
    let rep = criteria_engine(&sys, args.nu, args.tol)?;
    let report = to_json(&rep);
    let mut out = Outcome::new(report.clone())
        .file("criteria.json", json_bytes(&report))
        .file(
            "orthogonality.csv",
            io::orthogonality_to_csv(&rep.orthogonality),
        );
    out.constants = json!({
        "p_constant": rep.p_constant,
        "p_constant_calibrated": rep.p_constant_calibrated,
        "rank_tol": rep.rank_tol,
        "tol": rep.tol,
    });
    if !rep.verdict_consistent {
        out.negative = Some(format!("inconsistent criteria {:?}", rep.criteria));
    }
    Ok(out)
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 2)]
    pub refinement: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

pub fn scan(args: &ScanArgs) -> CmdResult {
    let sys = args.system.build(None)?;
    let rep = scan_invariance(&sys, args.refinement, args.tol)?;
    let report = to_json(&rep);
    let mut out = Outcome::new(report.clone()).file("scan.json", json_bytes(&report));
    out.constants = json!({ "tol": args.tol, "rank_tol": DEFAULT_RANK_TOL });
    if let DichotomyVerdict::Inconclusive { reason } = &rep.dichotomy_verdict {
        out.negative = Some(format!("inconclusive scan: {reason}"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Omega,
    Lattice,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(long, value_enum, default_value = "omega")]
    pub set: SetKind,
    #[arg(long, value_parser = parse::real, default_value = "1")]
    pub alpha: f64,
    #[arg(long, value_parser = parse::real, default_value = "1")]
    pub beta: f64,
    #[arg(long, default_value_t = 2)]
    pub nu: i64,
    /// Point-set JSON for `--set file`.
    #[arg(long = "spec-file")]
    pub spec_file: Option<PathBuf>,
    #[arg(long = "R", value_parser = parse::radii, default_value = "50,100,200")]
    #[serde(rename = "R")]
    pub r: parse::Radii,
    #[arg(long = "probe-grid", default_value_t = DEFAULT_PROBE_GRID)]
    pub probe_grid: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

pub fn density(args: &DensityArgs) -> CmdResult {
    let spec = match args.set {
        SetKind::Omega => PointSetSpec::omega(args.alpha, args.beta, args.nu),
        SetKind::Lattice => PointSetSpec::separable(args.alpha, args.beta),
        SetKind::File => {
            let path = args
                .spec_file
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--set file needs --spec-file".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("point set: {e}")))?
        }
    };
    let rows = lower_density_empirical(&spec, &args.r.0, args.probe_grid)?;
    let report = to_json(&rows);
    let out = Outcome::new(report.clone());
    Ok(match args.format {
        Format::Csv => out.file("density.csv", io::density_to_csv(&rows)),
        Format::Json => out.file("density.json", json_bytes(&report)),
    })
}

#[derive(Args, Debug, Serialize)]
pub struct GaussianArgs {
    #[arg(long = "L", default_value_t = 120)]
    #[serde(rename = "L")]
    pub l: usize,
    #[arg(long, default_value_t = 12)]
    pub a: usize,
    #[arg(long, default_value_t = 12)]
    pub b: usize,
    #[arg(long, value_parser = parse::real, default_value = "3.141592653589793")]
    pub c: f64,
    #[arg(long, default_value_t = 2)]
    pub nu: usize,
    #[arg(long, default_value_t = 4)]
    pub refinement: usize,
}

pub fn gaussian(args: &GaussianArgs) -> CmdResult {
    let rep =
        gaussian_corollary_scenario(args.l, args.a, args.b, args.c, args.nu, args.refinement)?;
    let report = to_json(&rep);
    let mut out = Outcome::new(report.clone())
        .file("gaussian.json", json_bytes(&report))
        .file(
            "orthogonality.csv",
            io::orthogonality_to_csv(&rep.orthogonality),
        );
    if let Some(c) = &rep.criteria {
        out.constants =
            json!({ "p_constant": c.p_constant, "p_constant_calibrated": c.p_constant_calibrated });
    }
    let consistent = rep
        .criteria
        .as_ref()
        .map(|c| c.verdict_consistent)
        .unwrap_or(false);
    if !consistent {
        out.negative = Some(match &rep.criteria_error {
            Some(e) => e.clone(),
            None => "inconsistent criteria".into(),
        });
    } else if let DichotomyVerdict::Inconclusive { reason } = &rep.scan.dichotomy_verdict {
        out.negative = Some(format!("inconclusive scan: {reason}"));
    }
    Ok(out)
}

#[derive(Args, Debug, Serialize)]
pub struct EquidistributionArgs {
    /// Direction `z`, e.g. `1,sqrt2`.
    #[arg(long, value_parser = parse::real_pair)]
    pub z: [f64; 2],
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, value_parser = parse::rational, default_value = "1")]
    #[serde(serialize_with = "ser_display")]
    pub alpha: Rational,
    #[arg(long, value_parser = parse::rational, default_value = "1")]
    #[serde(serialize_with = "ser_display")]
    pub beta: Rational,
    /// Orbit step; the default is the golden-ratio conjugate.
    #[arg(long = "t-step", value_parser = parse::real, default_value = "0.6180339887498948")]
    pub t_step: f64,
}

pub fn equidistribution(args: &EquidistributionArgs) -> CmdResult {
    let lat = SeparableLattice::new(args.alpha.clone(), args.beta.clone())?;
    let rep = equidistribution_diagnostic(args.z, &lat, args.t_step, args.n)?;
    let report = to_json(&rep);
    Ok(Outcome::new(report.clone()).file("equidistribution.json", json_bytes(&report)))
}

#[derive(Args, Debug, Serialize)]
pub struct DualArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long = "rank-tol", default_value_t = DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
}

pub fn dual_window(args: &DualArgs) -> CmdResult {
    let sys = args.system.build(None)?;
    let dual = canonical_dual(&sys, args.rank_tol)?;
    let bounds = frame_bounds(&sys, args.rank_tol);
    let report = json!({
        "L": sys.l(),
        "a": sys.a(),
        "b": sys.b(),
        "rank": dual.rank(),
        "conditioning": dual.conditioning(),
        "frame_bounds": bounds,
        "gamma_norm": dual.gamma.norm(),
    });
    Ok(Outcome::new(report.clone())
        .file("dual_window.json", json_bytes(&report))
        .file("dual_window.csv", io::signal_to_csv(&dual.gamma))
        .file("window.csv", io::signal_to_csv(sys.window()))
        .file(
            "frame_operator.bin",
            io::operator_to_bytes(&frame_operator_direct(&sys)),
        ))
}
