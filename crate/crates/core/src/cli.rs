//! Command-line front end: `sweep`, `verify` and `tomo`.
//!
//! Exit codes: 0 success, 1 a duality relation is violated, 2 bad input or
//! configuration, 3 a pipeline failed at runtime.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::coherence::coherence_report;
use crate::duality::{
    entropic_verdict, gy_verdict, quadratic_verdict, simulated_sweep, theta_grid, verify_record, DualityVerdict,
    SimulationConfig, SweepRecord,
};
use crate::qmath::DensityMatrix;
use crate::tomo::{
    mle_reconstruct, monte_carlo_errors, read_records_csv, split_branches, weighted_two_branch_reconstruct,
    CountRecord, TomoError, DEFAULT_EXPOSURE_S, DEFAULT_FLUX, DEFAULT_MC_SAMPLES,
};

/// Environment variable naming a default config file.
pub const CONFIG_ENV: &str = "DUALITY_LAB_CONFIG";
/// Version of the JSON figure and report layout.
pub const SCHEMA_VERSION: u32 = 1;

pub const FIG2_COLUMNS: [&str; 9] = [
    "theta", "C_ideal", "H_ideal", "C_sim", "C_err", "H_sim", "H_err", "sum", "bound",
];
pub const FIG3_COLUMNS: [&str; 9] = [
    "theta",
    "X_ideal",
    "P_ideal",
    "X_sim",
    "X_err",
    "P_sim",
    "P_err",
    "quad_lhs",
    "quad_bound",
];

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Pipeline(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => EXIT_INPUT,
            Self::Pipeline(_) => EXIT_PIPELINE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Input(m) | Self::Pipeline(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// Everything a sweep needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub theta_start: f64,
    pub theta_end: f64,
    pub theta_steps: usize,
    pub flux: f64,
    pub exposure: f64,
    pub mc_samples: usize,
    pub seed: u64,
    pub n_paths: usize,
    pub output_format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            theta_start: 0.0,
            theta_end: 45.0,
            theta_steps: 19,
            flux: DEFAULT_FLUX,
            exposure: DEFAULT_EXPOSURE_S,
            mc_samples: DEFAULT_MC_SAMPLES,
            seed: 0,
            n_paths: 2,
            output_format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Input(m));
        for (name, v) in [("theta-start", self.theta_start), ("theta-end", self.theta_end)] {
            if !(0.0..=90.0).contains(&v) {
                return bad(format!("--{name} must be within [0, 90] degrees, got {v}"));
            }
        }
        if self.theta_steps < 1 {
            return bad("--theta-steps must be at least 1".into());
        }
        if !(self.flux > 0.0 && self.flux.is_finite()) {
            return bad(format!("--flux must be a positive count rate, got {}", self.flux));
        }
        if !(self.exposure > 0.0 && self.exposure.is_finite()) {
            return bad(format!("--exposure must be positive seconds, got {}", self.exposure));
        }
        if self.mc_samples < 2 {
            return bad(format!("--mc-samples must be at least 2, got {}", self.mc_samples));
        }
        if self.n_paths < 2 {
            return bad(format!("--n-paths must be at least 2, got {}", self.n_paths));
        }
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        theta_grid(self.theta_start, self.theta_end, self.theta_steps)
    }

    pub fn simulation(&self) -> SimulationConfig {
        SimulationConfig {
            flux: self.flux,
            exposure: self.exposure,
            mc_samples: self.mc_samples,
            seed: self.seed,
        }
    }
}

/// Config-file layer: every key optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    theta_start: Option<f64>,
    theta_end: Option<f64>,
    theta_steps: Option<usize>,
    flux: Option<f64>,
    exposure: Option<f64>,
    mc_samples: Option<usize>,
    seed: Option<u64>,
    n_paths: Option<usize>,
    #[serde(alias = "format")]
    output_format: Option<OutputFormat>,
}

#[derive(Debug, Parser)]
#[command(
    name = "duality-lab",
    version,
    about = "Wave-particle duality sweeps, checks and tomography"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a θ sweep and write fig2/fig3 data files.
    Sweep(SweepArgs),
    /// Re-check the duality relations in figure data files.
    Verify(VerifyArgs),
    /// Reconstruct a state from a count-record CSV.
    Tomo(TomoArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long)]
    pub theta_start: Option<f64>,
    #[arg(long)]
    pub theta_end: Option<f64>,
    #[arg(long)]
    pub theta_steps: Option<usize>,
    /// Counts per second.
    #[arg(long)]
    pub flux: Option<f64>,
    /// Seconds per measurement setting.
    #[arg(long)]
    pub exposure: Option<f64>,
    #[arg(long)]
    pub mc_samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n_paths: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// TOML config file; flags override its values.
    #[arg(long, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// fig2/fig3 files in CSV or JSON.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TomoArgs {
    /// Count records: setting_label,branch,counts,exposure_s.
    pub file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
    pub mc_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SweepArgs {
    /// Flags over config file over defaults.
    pub fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
                toml::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let d = ExperimentConfig::default();
        let config = ExperimentConfig {
            theta_start: self.theta_start.or(file.theta_start).unwrap_or(d.theta_start),
            theta_end: self.theta_end.or(file.theta_end).unwrap_or(d.theta_end),
            theta_steps: self.theta_steps.or(file.theta_steps).unwrap_or(d.theta_steps),
            flux: self.flux.or(file.flux).unwrap_or(d.flux),
            exposure: self.exposure.or(file.exposure).unwrap_or(d.exposure),
            mc_samples: self.mc_samples.or(file.mc_samples).unwrap_or(d.mc_samples),
            seed: self.seed.or(file.seed).unwrap_or(d.seed),
            n_paths: self.n_paths.or(file.n_paths).unwrap_or(d.n_paths),
            output_format: self.format.or(file.output_format).unwrap_or(d.output_format),
        };
        config.validate()?;
        Ok(config)
    }
}

/// Rounds to 9 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Plain decimal text of [`round_sig`]`(x)`.
pub fn format_number(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Which figure a data file holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Entropic relation: C and H.
    Fig2,
    /// Quadratic relation: X and P.
    Fig3,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
        }
    }

    pub fn columns(self) -> [&'static str; 9] {
        match self {
            Self::Fig2 => FIG2_COLUMNS,
            Self::Fig3 => FIG3_COLUMNS,
        }
    }
}

/// One row of figure data; `None` is an empty simulated cell.
pub type FigureRow = [Option<f64>; 9];

/// Figure rows for a sweep. `sum` and `quad_lhs` are the ideal left-hand
/// sides.
pub fn figure_rows(records: &[SweepRecord], figure: Figure) -> Vec<FigureRow> {
    records
        .iter()
        .map(|r| {
            let q = r.ideal;
            let s = r.simulated;
            match figure {
                Figure::Fig2 => [
                    Some(r.theta),
                    Some(q.c),
                    Some(q.h),
                    s.map(|s| s.c.value),
                    s.map(|s| s.c.std_dev()),
                    s.map(|s| s.h.value),
                    s.map(|s| s.h.std_dev()),
                    Some(q.c + q.h),
                    Some(r.bounds.entropic),
                ],
                Figure::Fig3 => [
                    Some(r.theta),
                    Some(q.x),
                    Some(q.p),
                    s.map(|s| s.x.value),
                    s.map(|s| s.x.std_dev()),
                    s.map(|s| s.p.value),
                    s.map(|s| s.p.std_dev()),
                    Some(q.p * q.p + q.x * q.x),
                    Some(r.bounds.quadratic),
                ],
            }
        })
        .collect()
}

pub fn write_figure_csv<W: Write>(writer: W, figure: Figure, rows: &[FigureRow]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Pipeline(e.to_string());
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(figure.columns()).map_err(io)?;
    for row in rows {
        out.write_record(row.iter().map(|v| v.map(format_number).unwrap_or_default()))
            .map_err(io)?;
    }
    out.flush().map_err(|e| CliError::Pipeline(e.to_string()))
}

pub fn figure_json(figure: Figure, n_paths: usize, rows: &[FigureRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = figure
                .columns()
                .iter()
                .zip(row)
                .map(|(k, v)| (k.to_string(), v.map_or(Value::Null, |x| json!(round_sig(x)))))
                .collect();
            Value::Object(obj)
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "figure": figure.name(),
        "n_paths": n_paths,
        "rows": rows,
    })
}

/// Parsed figure file.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub figure: Figure,
    /// Known for JSON; inferred from the bound column for CSV.
    pub n_paths: Option<usize>,
    pub rows: Vec<FigureRow>,
}

fn input_err(path: &Path, line: usize, message: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}:{line}: {message}", path.display()))
}

fn check_row(path: &Path, line: usize, figure: Figure, row: &FigureRow) -> Result<(), CliError> {
    for (k, name) in figure.columns().iter().enumerate() {
        let required = !matches!(k, 3..=6);
        if required && row[k].is_none() {
            return Err(input_err(path, line, format!("column `{name}` is empty")));
        }
    }
    let sims = &row[3..7];
    if sims.iter().any(Option::is_some) && sims.iter().any(Option::is_none) {
        return Err(input_err(
            path,
            line,
            "simulated columns must be all filled or all empty",
        ));
    }
    Ok(())
}

pub fn parse_figure_csv(path: &Path, text: &str) -> Result<FigureData, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| input_err(path, 1, e))?
        .iter()
        .map(str::to_string)
        .collect::<Vec<_>>();
    let figure = [Figure::Fig2, Figure::Fig3]
        .into_iter()
        .find(|f| header == f.columns())
        .ok_or_else(|| input_err(path, 1, format!("header {header:?} matches neither figure layout")))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| input_err(path, e.position().map_or(0, |p| p.line() as usize), e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let mut row: FigureRow = [None; 9];
        for (k, cell) in record.iter().enumerate() {
            if !cell.is_empty() {
                let v: f64 = cell.parse().map_err(|_| {
                    input_err(
                        path,
                        line,
                        format!("`{cell}` is not a number ({})", figure.columns()[k]),
                    )
                })?;
                if !v.is_finite() {
                    return Err(input_err(
                        path,
                        line,
                        format!("non-finite value in {}", figure.columns()[k]),
                    ));
                }
                row[k] = Some(v);
            }
        }
        check_row(path, line, figure, &row)?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(input_err(path, 1, "no data rows"));
    }
    Ok(FigureData {
        figure,
        n_paths: None,
        rows,
    })
}

pub fn parse_figure_json(path: &Path, text: &str) -> Result<FigureData, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| input_err(path, e.line(), e))?;
    let version = value.get("schema_version").and_then(Value::as_u64);
    if version != Some(SCHEMA_VERSION as u64) {
        return Err(input_err(path, 1, format!("unsupported schema_version {version:?}")));
    }
    let figure = match value.get("figure").and_then(Value::as_str) {
        Some("fig2") => Figure::Fig2,
        Some("fig3") => Figure::Fig3,
        other => return Err(input_err(path, 1, format!("unknown figure {other:?}"))),
    };
    let n_paths = value.get("n_paths").and_then(Value::as_u64).map(|n| n as usize);
    let rows_json = value
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| input_err(path, 1, "missing `rows` array"))?;
    let mut rows = Vec::new();
    for (i, obj) in rows_json.iter().enumerate() {
        let mut row: FigureRow = [None; 9];
        for (k, name) in figure.columns().iter().enumerate() {
            row[k] = match obj.get(*name) {
                None | Some(Value::Null) => None,
                Some(v) => Some(
                    v.as_f64()
                        .ok_or_else(|| input_err(path, 0, format!("row {i}: `{name}` is not a number")))?,
                ),
            };
        }
        check_row(path, 0, figure, &row)
            .map_err(|_| input_err(path, 0, format!("row {i}: missing or partial columns")))?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(input_err(path, 1, "no data rows"));
    }
    Ok(FigureData { figure, n_paths, rows })
}

pub fn read_figure(path: &Path) -> Result<FigureData, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    if text.trim().is_empty() {
        return Err(input_err(path, 1, "file is empty"));
    }
    if text.trim_start().starts_with('{') {
        parse_figure_json(path, &text)
    } else {
        parse_figure_csv(path, &text)
    }
}

/// Largest error of a value printed by [`format_number`].
fn rounding_error(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        0.5 * 10f64.powi(x.abs().log10().floor() as i32 - 8)
    }
}

/// Verdicts recomputed from one figure row: ideal first, then simulated when
/// present. Fig3 rows with two paths also yield the GY relation via
/// `V = 2X`, `D = 2P`. Tolerances are widened by the worst-case effect of
/// the 9-digit rounding of the stored values.
pub fn row_verdicts(figure: Figure, n_paths: Option<usize>, row: &FigureRow) -> Vec<(&'static str, DualityVerdict)> {
    let v = |k: usize| row[k].unwrap_or(f64::NAN);
    let r = |k: usize| rounding_error(v(k));
    let sum_err = |a: usize, b: usize| r(a) + r(b) + r(8);
    let square_err = |a: usize, b: usize, scale: f64| scale * scale * 2.0 * (v(a).abs() * r(a) + v(b).abs() * r(b));
    let sim = row[3].is_some();
    let mut out = Vec::new();
    match figure {
        Figure::Fig2 => {
            out.push(("ideal", entropic_verdict(v(1), v(2), v(8), None).widened(sum_err(1, 2))));
            if sim {
                let verdict = entropic_verdict(v(3), v(5), v(8), Some((v(4), v(6))));
                out.push(("sim", verdict.widened(sum_err(3, 5))));
            }
        }
        Figure::Fig3 => {
            let two_paths = n_paths.map_or((v(8) - 0.25).abs() < 1e-12, |n| n == 2);
            let quad = |x: usize, p: usize, sigmas| {
                quadratic_verdict(v(x), v(p), v(8), sigmas).widened(square_err(x, p, 1.0) + r(8))
            };
            let gy =
                |x: usize, p: usize, sigmas| gy_verdict(2.0 * v(x), 2.0 * v(p), sigmas).widened(square_err(x, p, 2.0));
            out.push(("ideal", quad(1, 2, None)));
            if two_paths {
                out.push(("ideal", gy(1, 2, None)));
            }
            if sim {
                out.push(("sim", quad(3, 5, Some((v(4), v(6))))));
                if two_paths {
                    out.push(("sim", gy(3, 5, Some((2.0 * v(4), 2.0 * v(6))))));
                }
            }
        }
    }
    out
}

fn verdict_line(theta: f64, source: &str, v: &DualityVerdict) -> String {
    format!(
        "theta={} {:<9} {:<5} lhs={} bound={} slack={} {}",
        format_number(theta),
        v.relation.name(),
        source,
        format_number(v.lhs),
        format_number(v.bound),
        format_number(v.slack),
        if v.satisfied { "ok" } else { "VIOLATED" }
    )
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = args.resolve()?;
    let records = simulated_sweep(&config.thetas(), config.n_paths, &config.simulation())
        .map_err(|e| CliError::Pipeline(e.to_string()))?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", args.out_dir.display())))?;
    for figure in [Figure::Fig2, Figure::Fig3] {
        let path = args
            .out_dir
            .join(format!("{}.{}", figure.name(), config.output_format.extension()));
        let rows = figure_rows(&records, figure);
        let io = |e: std::io::Error| CliError::Pipeline(format!("{}: {e}", path.display()));
        let file = File::create(&path).map_err(io)?;
        match config.output_format {
            OutputFormat::Csv => write_figure_csv(file, figure, &rows)?,
            OutputFormat::Json => {
                let mut file = file;
                let text = serde_json::to_string_pretty(&figure_json(figure, config.n_paths, &rows))
                    .map_err(|e| CliError::Pipeline(e.to_string()))?;
                writeln!(file, "{text}").map_err(io)?;
            }
        }
        let _ = writeln!(out, "wrote {}", path.display());
    }
    let verdicts: Vec<DualityVerdict> = records.iter().flat_map(verify_record).collect();
    let violated = verdicts.iter().filter(|v| !v.satisfied).count();
    let _ = writeln!(out, "{} verdicts, {} violated", verdicts.len(), violated);
    Ok(if violated == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut total = 0;
    let mut violated = 0;
    for path in &args.files {
        let data = read_figure(path)?;
        let _ = writeln!(out, "{} ({})", path.display(), data.figure.name());
        for row in &data.rows {
            for (source, v) in row_verdicts(data.figure, data.n_paths, row) {
                total += 1;
                violated += usize::from(!v.satisfied);
                let _ = writeln!(out, "  {}", verdict_line(row[0].unwrap_or(f64::NAN), source, &v));
            }
        }
    }
    let _ = writeln!(out, "{total} verdicts, {violated} violated");
    Ok(if violated == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn matrix_json(rho: &DensityMatrix) -> Value {
    let d = rho.dim();
    let part = |f: fn(num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
        (0..d)
            .map(|i| (0..d).map(|j| round_sig(f(rho.get(i, j)))).collect())
            .collect()
    };
    json!({ "re": part(|z| z.re), "im": part(|z| z.im) })
}

/// State reconstructed from records: the two-branch combination when both
/// branch 1 and branch 2 are present, otherwise a direct fit.
fn reconstruct(records: &[CountRecord]) -> Result<(DensityMatrix, Option<Value>), TomoError> {
    let two_branch = records.iter().any(|r| r.branch == 1);
    if two_branch {
        let (b1, b2) = split_branches(records);
        let result = weighted_two_branch_reconstruct(&b1, &b2)?;
        let info = json!({
            "weights": result.weights.map(round_sig),
            "empty_branches": result.empty_branches.iter().map(|b| b + 1).collect::<Vec<_>>(),
        });
        Ok((result.rho, Some(info)))
    } else {
        Ok((mle_reconstruct(records)?.rho_hat, None))
    }
}

fn tomo_quantities(records: &[CountRecord]) -> Result<Vec<f64>, TomoError> {
    let (rho, _) = reconstruct(records)?;
    let report = coherence_report(&rho, rho.dim()).map_err(|e| TomoError::Pipeline {
        sample: 0,
        message: e.to_string(),
    })?;
    let mut values = vec![report.c_relent, report.c_l1, report.x];
    let d = rho.dim();
    for i in 0..d {
        for j in 0..d {
            values.push(rho.get(i, j).re);
        }
    }
    for i in 0..d {
        for j in 0..d {
            values.push(rho.get(i, j).im);
        }
    }
    Ok(values)
}

fn cmd_tomo(args: &TomoArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let file =
        File::open(&args.file).map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.file.display())))?;
    let records = read_records_csv(BufReader::new(file)).map_err(|e| match e {
        TomoError::Csv { line, message } => input_err(&args.file, line, message),
        other => CliError::Input(format!("{}: {other}", args.file.display())),
    })?;
    if records.iter().any(|r| r.branch > 1) {
        return Err(CliError::Input(format!(
            "{}: only branches 1 and 2 are supported",
            args.file.display()
        )));
    }
    if args.mc_samples < 2 {
        return Err(CliError::Input(format!(
            "--mc-samples must be at least 2, got {}",
            args.mc_samples
        )));
    }
    let pipeline = |e: TomoError| CliError::Pipeline(e.to_string());
    let (rho, branches) = reconstruct(&records).map_err(pipeline)?;
    let report = coherence_report(&rho, rho.dim()).map_err(|e| CliError::Pipeline(e.to_string()))?;
    let errors = monte_carlo_errors(tomo_quantities, &records, args.mc_samples, args.seed).map_err(pipeline)?;
    let d = rho.dim();
    let std = |k: usize| round_sig(errors[k].std_dev);
    let err_block = |offset: usize| -> Vec<Vec<f64>> {
        (0..d)
            .map(|i| (0..d).map(|j| std(offset + i * d + j)).collect())
            .collect()
    };
    let mut report_json = json!({
        "schema_version": SCHEMA_VERSION,
        "records": records.len(),
        "rho": matrix_json(&rho),
        "coherence": {
            "c_relent": round_sig(report.c_relent),
            "c_l1": round_sig(report.c_l1),
            "x": round_sig(report.x),
        },
        "errors": {
            "mc_samples": args.mc_samples,
            "seed": args.seed,
            "c_relent": std(0),
            "c_l1": std(1),
            "x": std(2),
            "rho": { "re": err_block(3), "im": err_block(3 + d * d) },
        },
    });
    if let Some(info) = branches {
        report_json["branches"] = info;
    }
    let text = serde_json::to_string_pretty(&report_json).map_err(|e| CliError::Pipeline(e.to_string()))?;
    let _ = writeln!(out, "{text}");
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Tomo(a) => cmd_tomo(a, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {}", e.message());
        e.exit_code()
    })
}
