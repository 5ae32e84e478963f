//! The `ecb` command-line front end.
//!
//! Every subcommand reads a JSON input, writes JSON (or CSV for tables of
//! samples and costs) to stdout or `--output`, and on failure prints
//! `{"error": {"kind": ..., "message": ...}}` to stderr with exit status 1.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bbasis::{critical_length, BBasis, IndexZero, ScanOptions};
use crate::endpoint::{build_endpoint_tables, build_endpoint_tables_from, EndpointTables, Source};
use crate::error::{EcError, Result};
use crate::geometry::{
    convert_curve, convert_surface, eval_bcurve, eval_rational, rationalize_curve, rationalize_with_elevation,
    IntegralCurveSpec, SurfaceSpec, WEIGHT_TOL,
};
use crate::space::SpaceSpec;
use crate::transform::{collocation_oracle, kappa, kappa_lu, sample_grid, transform_for};

#[derive(Parser, Debug, Clone)]
#[command(name = "ecb", version, about = "B-bases of extended Chebyshev spaces and exact basis conversion")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Sample count for grids.
    #[arg(long, global = true, env = "ECB_GRID", default_value_t = 201)]
    pub grid: usize,
    /// Tolerance for oracle comparisons and sampled checks.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol: f64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Transformation matrix of a space.
    Transform {
        space: PathBuf,
        /// Include the measured flop count and the cost formulas.
        #[arg(long)]
        flops: bool,
        /// Compare against the collocation oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Endpoint derivative tables.
    Tables {
        space: PathBuf,
        #[arg(long, value_enum)]
        source: Option<SourceArg>,
    },
    /// Control polygon of an integral curve.
    ConvertCurve {
        curve: PathBuf,
        /// Also write B-form samples as CSV.
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Control net of a tensor-product surface.
    ConvertSurface { surface: PathBuf },
    /// Control points and weights of a rational curve given by its pre-image.
    Rationalize {
        curve: PathBuf,
        #[arg(long)]
        auto_elevate: bool,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
    /// Critical length estimate.
    CriticalLength {
        space: PathBuf,
        #[arg(long)]
        scan_max: Option<f64>,
        #[arg(long)]
        scan_step: Option<f64>,
        #[arg(long)]
        bisect_tol: Option<f64>,
    },
    /// κ and κ_LU table as CSV.
    Cost {
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        delta: usize,
    },
    /// Samples of a curve's B-representation as CSV.
    Sample {
        curve: PathBuf,
        /// Treat the last coordinate as the rational denominator.
        #[arg(long)]
        rational: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum SourceArg {
    ClosedForm,
    Mixed,
    Determinant,
}

impl From<SourceArg> for Source {
    fn from(s: SourceArg) -> Source {
        match s {
            SourceArg::ClosedForm => Source::ClosedForm,
            SourceArg::Mixed => Source::Mixed,
            SourceArg::Determinant => Source::Determinant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDiff {
    pub max_abs: f64,
    pub max_rel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformOutput {
    pub space: SpaceSpec,
    pub matrix: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flops: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa_lu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub middle_discrepancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleDiff>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablesOutput {
    pub space: SpaceSpec,
    pub tables: EndpointTables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveOutput {
    pub space: SpaceSpec,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceOutput {
    pub spaces: [SpaceSpec; 2],
    pub points: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalOutput {
    pub space: SpaceSpec,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub all_nonneg: bool,
    #[serde(default)]
    pub rejected_orders: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalOutput {
    pub space: SpaceSpec,
    pub estimate: Option<f64>,
    pub no_root: bool,
    pub scanned_to: f64,
    pub per_index: Vec<IndexZeroOutput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexZeroOutput {
    pub index: usize,
    pub first_zero: Option<f64>,
}

impl From<&IndexZero> for IndexZeroOutput {
    fn from(z: &IndexZero) -> IndexZeroOutput {
        IndexZeroOutput { index: z.index, first_zero: z.first_zero }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EcError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| EcError::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn csv_text(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| EcError::Input(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| EcError::Input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn coordinate_names(d: usize) -> Vec<String> {
    if d <= 3 {
        ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|k| format!("x{k}")).collect()
    }
}

fn samples_csv(curve: &IntegralCurveSpec, grid: usize, rational: bool) -> Result<String> {
    let space = &curve.space;
    let t = transform_for(space)?;
    let basis = BBasis::new(space)?;
    let us = sample_grid(space.alpha(), space.beta(), grid);
    let (points, d): (Vec<Vec<f64>>, usize) = if rational {
        let rep = rationalize_curve(curve, &t)?;
        let pts = us.iter().map(|&u| eval_rational(&rep, &basis, u)).collect::<Result<Vec<_>>>()?;
        (pts, curve.dim()? - 1)
    } else {
        let poly = convert_curve(curve, &t)?;
        (us.iter().map(|&u| eval_bcurve(&poly, &basis, u)).collect(), curve.dim()?)
    };
    let mut header = vec!["u".to_string()];
    header.extend(coordinate_names(d));
    let rows = us.iter().zip(points).map(|(u, p)| {
        let mut r = vec![u.to_string()];
        r.extend(p.iter().map(|v| v.to_string()));
        r
    });
    csv_text(&header, rows)
}

/// Executes one command and returns the text to emit.
pub fn run(config: &RunConfig) -> Result<String> {
    if config.grid < 2 {
        return Err(EcError::Input(format!("grid density must be at least 2, got {}", config.grid)));
    }
    if !(config.tol > 0.0) {
        return Err(EcError::Input(format!("tolerance must be positive, got {}", config.tol)));
    }
    match &config.command {
        Command::Transform { space, flops, oracle } => {
            let space: SpaceSpec = read_json(space)?;
            let t = transform_for(&space)?;
            let n = space.n();
            let oracle = if *oracle {
                let o = collocation_oracle(&space, None)?;
                let max_abs = (&t.t - &o.t).amax();
                let max_rel = t
                    .t
                    .iter()
                    .zip(o.t.iter())
                    .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
                    .fold(0.0, f64::max);
                Some(OracleDiff { max_abs, max_rel })
            } else {
                None
            };
            let out = TransformOutput {
                matrix: t.rows(),
                flops: flops.then_some(t.flops),
                kappa: flops.then(|| kappa(n) as u64),
                kappa_lu: flops.then(|| kappa_lu(n, 1) as u64),
                middle_discrepancy: t.middle_discrepancy(),
                oracle,
                space,
            };
            Ok(to_json(&out))
        }
        Command::Tables { space, source } => {
            let space: SpaceSpec = read_json(space)?;
            let tables = match source {
                Some(s) => build_endpoint_tables_from(&space, (*s).into())?,
                None => build_endpoint_tables(&space)?,
            };
            Ok(to_json(&TablesOutput { space, tables: (*tables).clone() }))
        }
        Command::ConvertCurve { curve, samples } => {
            let curve: IntegralCurveSpec = read_json(curve)?;
            curve.dim()?;
            let poly = convert_curve(&curve, &transform_for(&curve.space)?)?;
            if let Some(path) = samples {
                let text = samples_csv(&curve, config.grid, false)?;
                std::fs::write(path, text)
                    .map_err(|e| EcError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(to_json(&CurveOutput { space: poly.space, points: poly.points }))
        }
        Command::ConvertSurface { surface } => {
            let spec: SurfaceSpec = read_json(surface)?;
            let t1 = transform_for(&spec.spaces[0])?;
            let t2 = transform_for(&spec.spaces[1])?;
            let net = convert_surface(&spec, &t1, &t2)?;
            Ok(to_json(&SurfaceOutput { spaces: net.spaces, points: net.points }))
        }
        Command::Rationalize { curve, auto_elevate, max_order } => {
            let curve: IntegralCurveSpec = read_json(curve)?;
            curve.dim()?;
            let (rep, rejected) = if *auto_elevate {
                let report = rationalize_with_elevation(&curve, *max_order)?;
                (report.rep, report.rejected)
            } else {
                let rep = rationalize_curve(&curve, &transform_for(&curve.space)?)?;
                if let Some(index) = rep.weights.iter().position(|&w| w < WEIGHT_TOL) {
                    return Err(EcError::NegativeWeights { index, value: rep.weights[index] });
                }
                (rep, Vec::new())
            };
            Ok(to_json(&RationalOutput {
                space: rep.space,
                points: rep.points,
                weights: rep.weights,
                all_nonneg: rep.all_nonneg,
                rejected_orders: rejected,
            }))
        }
        Command::CriticalLength { space, scan_max, scan_step, bisect_tol } => {
            let space: SpaceSpec = read_json(space)?;
            let d = ScanOptions::default();
            let opts = ScanOptions {
                scan_max: scan_max.unwrap_or(d.scan_max),
                scan_step: scan_step.unwrap_or(d.scan_step),
                tol: bisect_tol.unwrap_or(d.tol),
            };
            if !(opts.scan_max > 0.0 && opts.scan_step > 0.0 && opts.tol > 0.0) {
                return Err(EcError::Input("scan parameters must be positive".into()));
            }
            let c = critical_length(&space, &opts);
            Ok(to_json(&CriticalOutput {
                space,
                estimate: c.estimate.is_finite().then_some(c.estimate),
                no_root: c.no_root,
                scanned_to: c.scanned_to,
                per_index: c.per_index.iter().map(IndexZeroOutput::from).collect(),
            }))
        }
        Command::Cost { n_max, delta } => {
            if *n_max < 1 || *n_max > 200 || *delta < 1 {
                return Err(EcError::Input("need 1 <= n-max <= 200 and delta >= 1".into()));
            }
            let header: Vec<String> =
                ["n", "kappa", "kappa_lu", "kappa_below_lu"].iter().map(|s| s.to_string()).collect();
            let rows = (1..=*n_max).map(|n| {
                let (k, l) = (kappa(n), kappa_lu(n, *delta));
                vec![n.to_string(), k.to_string(), l.to_string(), (k < l).to_string()]
            });
            csv_text(&header, rows)
        }
        Command::Sample { curve, rational } => {
            let curve: IntegralCurveSpec = read_json(curve)?;
            samples_csv(&curve, config.grid, *rational)
        }
    }
}

/// Machine-readable error document.
pub fn error_json(e: &EcError) -> String {
    serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } }).to_string()
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = run(&config).and_then(|text| match &config.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| EcError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            1
        }
    }
}
