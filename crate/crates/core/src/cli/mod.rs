//! Command line front end: `sweep`, `l1tail` and `plot`.

pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::convolution::Source;
use crate::error::Error;
use crate::experiments::{
    param_label, run_asymmetric_sweep, run_l1_divergence_study, run_symmetric_sweep, SweepConfig,
};
use crate::kernels::KernelSpec;
use crate::signals::json::SignalDesc;
use crate::signals::SignedMeasure;
use svg::LinePlot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;
pub const EXIT_NORM: i32 = 4;

const EXIT_CODES: &str = "Exit codes:\n  0  success\n  1  output could not be written\n  2  bad flags or flag values\n  3  signal file violates the schema\n  4  a norm could not be certified (the message names the row)";

#[derive(Debug, Parser)]
#[command(name = "alexiewicz", version, about = "Fourier inversion residuals in the Alexiewicz norm", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Dirichlet,
    Asymmetric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexiewicz norm of the inversion residual for a sequence of kernels.
    #[command(after_help = EXIT_CODES)]
    Sweep {
        /// Signal description (JSON).
        #[arg(long)]
        signal: PathBuf,
        /// Kernel family; `--pairs` implies `asymmetric`.
        #[arg(long, value_enum)]
        kernel: Option<KernelArg>,
        /// Comma-separated increasing frequencies, e.g. `10,100,1000`.
        #[arg(long = "S")]
        s: Option<String>,
        /// Comma-separated `S1:S2` pairs, e.g. `10:20,100:200`.
        #[arg(long)]
        pairs: Option<String>,
        /// Bounds `p:q` with `p ≤ S1/S2 ≤ q` for every pair.
        #[arg(long = "ratio-bounds")]
        ratio_bounds: Option<String>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG plot of the norm column.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Per-octave L¹ mass of the convolution's right tail.
    #[command(after_help = EXIT_CODES)]
    L1tail {
        #[arg(long)]
        signal: PathBuf,
        /// Dirichlet kernel frequency.
        #[arg(long = "S")]
        s: f64,
        /// Comma-separated increasing octave starts, e.g. `100,200,400`.
        #[arg(long = "X")]
        x: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Line plot of two CSV columns.
    #[command(after_help = EXIT_CODES)]
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Logarithmic x axis.
        #[arg(long)]
        logx: bool,
        #[arg(long)]
        svg: PathBuf,
    },
}

/// Failure with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(warnings) => {
            for w in warnings {
                eprintln!("warning: {w}");
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command, returning its warnings.
pub fn execute(command: &Command) -> Result<Vec<String>, CliError> {
    match command {
        Command::Sweep {
            signal,
            kernel,
            s,
            pairs,
            ratio_bounds,
            out,
            svg,
        } => cmd_sweep(
            signal,
            *kernel,
            s.as_deref(),
            pairs.as_deref(),
            ratio_bounds.as_deref(),
            out,
            svg.as_deref(),
        ),
        Command::L1tail { signal, s, x, out } => cmd_l1tail(signal, *s, x, out),
        Command::Plot {
            csv,
            x,
            y,
            logx,
            svg,
        } => cmd_plot(csv, x, y, *logx, svg),
    }
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let values: Vec<f64> = text
        .split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::usage(format!("--{flag}: cannot parse {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(CliError::usage(format!("--{flag}: empty list")));
    }
    Ok(values)
}

fn parse_pair(flag: &str, text: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("--{flag}: expected a:b, got {text:?}")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("--{flag}: cannot parse {t:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

fn read_signal(path: &Path) -> Result<SignedMeasure, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("--signal {}: {e}", path.display())))?;
    SignalDesc::from_json(&text)
        .and_then(|d| d.to_measure())
        .map_err(|e| CliError {
            code: EXIT_SCHEMA,
            message: format!("{}: {e}", path.display()),
        })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn norm_error(e: Error) -> CliError {
    match e {
        Error::InvalidConfig(m) => CliError::usage(m),
        Error::InvalidSignal(m) => CliError {
            code: EXIT_SCHEMA,
            message: m,
        },
        other => CliError {
            code: EXIT_NORM,
            message: other.to_string(),
        },
    }
}

fn cmd_sweep(
    signal: &Path,
    kernel: Option<KernelArg>,
    s: Option<&str>,
    pairs: Option<&str>,
    ratio_bounds: Option<&str>,
    out: &Path,
    svg_path: Option<&Path>,
) -> Result<Vec<String>, CliError> {
    let mut warnings = Vec::new();
    let family = match (kernel, pairs) {
        (Some(KernelArg::Dirichlet), Some(_)) => {
            return Err(CliError::usage("--pairs requires the asymmetric kernel"))
        }
        (Some(KernelArg::Asymmetric), _) | (None, Some(_)) => KernelArg::Asymmetric,
        (Some(KernelArg::Dirichlet), None) | (None, None) => KernelArg::Dirichlet,
    };
    if s.is_some() && pairs.is_some() {
        return Err(CliError::usage("give either --S or --pairs, not both"));
    }
    let bounds = ratio_bounds
        .map(|t| parse_pair("ratio-bounds", t))
        .transpose()?;
    let mu = read_signal(signal)?;
    let source = Source::from(mu);
    let result = match family {
        KernelArg::Dirichlet => {
            if bounds.is_some() {
                return Err(CliError::usage(
                    "--ratio-bounds applies to the asymmetric kernel only",
                ));
            }
            let s = s.ok_or_else(|| CliError::usage("the dirichlet kernel needs --S"))?;
            let cfg = SweepConfig::symmetric(source, parse_list("S", s)?);
            run_symmetric_sweep(&cfg)
        }
        KernelArg::Asymmetric => {
            let text =
                pairs.ok_or_else(|| CliError::usage("the asymmetric kernel needs --pairs"))?;
            let list = text
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| parse_pair("pairs", t))
                .collect::<Result<Vec<_>, _>>()?;
            if list.is_empty() {
                return Err(CliError::usage("--pairs: empty list"));
            }
            if bounds.is_none() {
                warnings.push(
                    "no --ratio-bounds given; rows are exploratory and carry no convergence claim"
                        .into(),
                );
            }
            let cfg = SweepConfig::asymmetric(source, list, bounds);
            run_asymmetric_sweep(&cfg)
        }
    }
    .map_err(norm_error)?;

    let mut csv = String::from("param,alexiewicz_norm,resolution,tail_bound\n");
    for row in &result.rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            param_label(&row.kernel),
            fmt_num(row.norm.value),
            fmt_num(row.norm.resolution),
            fmt_num(row.norm.tail_bound)
        ));
    }
    write_file(out, &csv)?;
    if let Some(path) = svg_path {
        let points: Vec<(f64, f64)> = result
            .rows
            .iter()
            .map(|r| {
                let x = match r.kernel {
                    KernelSpec::Symmetric { s } => s,
                    KernelSpec::Asymmetric { s1, .. } => s1,
                };
                (x, r.norm.value)
            })
            .collect();
        let x_label = if family == KernelArg::Dirichlet {
            "S"
        } else {
            "S1"
        };
        let plot = LinePlot {
            points,
            x_label: x_label.into(),
            y_label: "alexiewicz_norm".into(),
            log_x: true,
        };
        write_file(path, &plot.render())?;
    }
    Ok(warnings)
}

fn cmd_l1tail(signal: &Path, s: f64, x: &str, out: &Path) -> Result<Vec<String>, CliError> {
    let xs = parse_list("X", x)?;
    let mu = read_signal(signal)?;
    let f = match Source::from(mu) {
        Source::Step(f) => f,
        Source::Measure(_) => return Err(CliError::usage("l1tail needs a step signal")),
    };
    let rows = run_l1_divergence_study(&f, s, &xs).map_err(norm_error)?;
    let mut csv = String::from("X,octave_mass,log_slope\n");
    for r in rows {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_num(r.x),
            fmt_num(r.octave_mass),
            fmt_num(r.log_slope)
        ));
    }
    write_file(out, &csv)?;
    Ok(Vec::new())
}

fn cmd_plot(
    csv_path: &Path,
    x: &str,
    y: &str,
    logx: bool,
    svg_path: &Path,
) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(csv_path)
        .map_err(|e| CliError::usage(format!("--csv {}: {e}", csv_path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::usage("--csv: empty file"))?
        .split(',')
        .collect();
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CliError::usage(format!("column {name:?} not in {header:?}")))
    };
    let (ix, iy) = (column(x)?, column(y)?);
    let mut points = Vec::new();
    for (n, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        let cell = |i: usize, name: &str| -> Result<f64, CliError> {
            let raw = cells.get(i).map(|c| c.trim()).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::usage(format!(
                        "row {}: column {name:?} value {raw:?} is not a finite number",
                        n + 1
                    ))
                })
        };
        let (px, py) = (cell(ix, x)?, cell(iy, y)?);
        if logx && px <= 0.0 {
            return Err(CliError::usage(format!(
                "row {}: --logx needs positive {x}, got {px}",
                n + 1
            )));
        }
        points.push((px, py));
    }
    if points.is_empty() {
        return Err(CliError::usage("--csv: no data rows"));
    }
    let plot = LinePlot {
        points,
        x_label: x.into(),
        y_label: y.into(),
        log_x: logx,
    };
    write_file(svg_path, &plot.render())?;
    Ok(Vec::new())
}
