//! Command-line front end.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{
    critical_field, sweep, threshold_temperature_numeric, threshold_temperature_zero_field, Axis,
    Param, SweepSpec, DEFAULT_BISECTION_TOL, SCAN_POINTS, SCAN_T_MAX, SCAN_T_MIN,
    ZERO_NEGATIVITY_THRESHOLD,
};
use crate::entanglement::negativity;
use crate::error::Error;
use crate::linalg::{hermitian_eig, DEFAULT_MAX_SWEEPS};
use crate::model::{analytic_spectrum, build_hamiltonian, ground_state, ModelParams};
use crate::output::{fmt_num, grid_to_csv, grid_to_json};
use crate::recipes::Figure;
use crate::roots::ThresholdResult;
use crate::thermal::gibbs_state;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dimer-entanglement",
    version,
    about = "Thermal negativity of a spin-1 bilinear-biquadratic dimer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Root-finding tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Thermal negativity at one parameter point.
    Point(PointArgs),
    /// Closed-form levels, checked against numerical diagonalization.
    Spectrum(CouplingArgs),
    /// Critical field 3/2 (J − K).
    CriticalField(ExchangeArgs),
    /// Temperature above which the negativity vanishes.
    Threshold(ThresholdArgs),
    /// Negativity on a two-parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct ExchangeArgs {
    #[arg(long = "J", allow_hyphen_values = true)]
    bilinear: f64,
    #[arg(long = "K", allow_hyphen_values = true)]
    biquadratic: f64,
}

#[derive(Debug, Args)]
struct CouplingArgs {
    #[command(flatten)]
    exchange: ExchangeArgs,
    #[arg(long = "B", allow_hyphen_values = true, default_value_t = 0.0)]
    field: f64,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[arg(long = "T", allow_hyphen_values = true)]
    temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed form at B = 0, numeric otherwise.
    Auto,
    ClosedForm,
    Numeric,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[command(flatten)]
    couplings: CouplingArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Built-in setup; conflicts with explicit axes.
    #[arg(long, conflicts_with_all = ["x", "y"])]
    figure: Option<Figure>,
    /// First axis as NAME:MIN:MAX:COUNT, e.g. B:0:1:101.
    #[arg(long, allow_hyphen_values = true, requires = "y")]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    y: Option<String>,
    #[arg(long = "J", allow_hyphen_values = true)]
    bilinear: Option<f64>,
    #[arg(long = "K", allow_hyphen_values = true)]
    biquadratic: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    field: Option<f64>,
    #[arg(long = "T", allow_hyphen_values = true)]
    temperature: Option<f64>,
}

enum Failure {
    Usage(String),
    Computation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let rendered = match execute(&cli) {
        Ok(text) => text,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Computation(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            return EXIT_COMPUTATION;
        }
    };

    let written = match &cli.output {
        Some(path) => std::fs::write(path, rendered.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out
            .write_all(rendered.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_COMPUTATION
        }
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let tol = match cli.tol {
        Some(t) if !t.is_finite() || t <= 0.0 => {
            return Err(usage(format!("--tol must be positive and finite, got {t}")))
        }
        Some(t) => t,
        None => DEFAULT_BISECTION_TOL,
    };
    let ctx = Context {
        format: cli.format,
        tol,
    };
    match &cli.command {
        Command::Point(a) => ctx.point(a),
        Command::Spectrum(a) => ctx.spectrum(a),
        Command::CriticalField(a) => ctx.critical_field(a),
        Command::Threshold(a) => ctx.threshold(a),
        Command::Sweep(a) => ctx.sweep(a),
    }
}

fn finite(name: &str, v: f64) -> Result<f64, Failure> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be finite, got {v}")))
    }
}

fn positive_temperature(v: f64) -> Result<f64, Failure> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(usage(format!("--T must be positive, got {v}")))
    }
}

fn exchange(a: &ExchangeArgs) -> Result<(f64, f64), Failure> {
    Ok((finite("J", a.bilinear)?, finite("K", a.biquadratic)?))
}

fn couplings(a: &CouplingArgs) -> Result<(f64, f64, f64), Failure> {
    let (j, k) = exchange(&a.exchange)?;
    Ok((j, k, finite("B", a.field)?))
}

fn csv_line(fields: &[String]) -> String {
    fields.join(",") + "\n"
}

struct Context {
    format: Format,
    tol: f64,
}

impl Context {
    fn metadata(&self, command: &str, parameters: Value, assumptions: &[String]) -> Value {
        json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "parameters": parameters,
            "tolerances": {
                "hermitian": <f64 as crate::Real>::default_tol(),
                "eigensolver_max_sweeps": DEFAULT_MAX_SWEEPS,
                "bisection": self.tol,
                "zero_negativity": ZERO_NEGATIVITY_THRESHOLD,
            },
            "assumptions": assumptions,
        })
    }

    fn json_doc(&self, metadata: Value, result: Value) -> String {
        serde_json::to_string_pretty(&json!({ "metadata": metadata, "result": result }))
            .expect("result serializes")
            + "\n"
    }

    fn point(&self, a: &PointArgs) -> Result<String, Failure> {
        let (j, k, b) = couplings(&a.couplings)?;
        let t = positive_temperature(a.temperature)?;
        let p = ModelParams::new(j, k, b, t)?;
        let res = negativity(&gibbs_state(&p)?)?;
        Ok(match self.format {
            Format::Csv => {
                let mut s = String::from("J,K,B,T,negativity,trace_norm\n");
                s += &csv_line(&[j, k, b, t, res.negativity, res.trace_norm].map(fmt_num));
                s
            }
            Format::Json => self.json_doc(
                self.metadata("point", json!({"J": j, "K": k, "B": b, "T": t}), &[]),
                json!(res),
            ),
        })
    }

    fn spectrum(&self, a: &CouplingArgs) -> Result<String, Failure> {
        let (j, k, b) = couplings(a)?;
        let p = ModelParams::new(j, k, b, 0.0)?;
        let spec = analytic_spectrum(&p);
        let ground = ground_state(&p);
        let numeric = hermitian_eig(&build_hamiltonian(&p), <f64 as crate::Real>::default_tol())?;
        let mut closed = spec.energies();
        closed.sort_by(f64::total_cmp);
        let deviation = closed
            .iter()
            .zip(&numeric.eigenvalues)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        Ok(match self.format {
            Format::Csv => {
                let mut s = format!(
                    "# max |closed - numeric| (sorted): {}\n",
                    fmt_num(deviation)
                );
                s += "label,energy,ground\n";
                for l in &spec.levels {
                    s += &csv_line(&[
                        l.label.to_string(),
                        fmt_num(l.energy),
                        ground.labels.contains(&l.label).to_string(),
                    ]);
                }
                s
            }
            Format::Json => {
                let levels: Vec<Value> = spec
                    .levels
                    .iter()
                    .map(|l| {
                        json!({
                            "label": l.label,
                            "energy": l.energy,
                            "state_re": l.state.iter().map(|z| z.re).collect::<Vec<_>>(),
                            "state_im": l.state.iter().map(|z| z.im).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                self.json_doc(
                    self.metadata("spectrum", json!({"J": j, "K": k, "B": b}), &[]),
                    json!({
                        "levels": levels,
                        "ground_labels": ground.labels,
                        "ground_energy": ground.energy,
                        "numeric_eigenvalues": numeric.eigenvalues,
                        "max_deviation": deviation,
                    }),
                )
            }
        })
    }

    fn critical_field(&self, a: &ExchangeArgs) -> Result<String, Failure> {
        let (j, k) = exchange(a)?;
        let bc = critical_field(j, k);
        Ok(match self.format {
            Format::Csv => format!("J,K,critical_field\n{}", csv_line(&[j, k, bc].map(fmt_num))),
            Format::Json => self.json_doc(
                self.metadata("critical-field", json!({"J": j, "K": k}), &[]),
                json!({ "critical_field": bc }),
            ),
        })
    }

    fn threshold(&self, a: &ThresholdArgs) -> Result<String, Failure> {
        let (j, k, b) = couplings(&a.couplings)?;
        let method = match a.method {
            Method::Auto if b == 0.0 => Method::ClosedForm,
            Method::Auto => Method::Numeric,
            m => m,
        };
        let (name, res): (&str, ThresholdResult<f64>) = match method {
            Method::ClosedForm => {
                if b != 0.0 {
                    return Err(usage("--method closed-form requires --B 0"));
                }
                (
                    "closed-form",
                    threshold_temperature_zero_field(j, k, self.tol)?,
                )
            }
            _ => ("numeric", threshold_temperature_numeric(j, k, b, self.tol)?),
        };
        Ok(match self.format {
            Format::Csv => {
                let mut s = String::from(
                    "J,K,B,method,threshold_temperature,bracket_lo,bracket_hi,iterations,converged\n",
                );
                s += &csv_line(&[
                    fmt_num(j),
                    fmt_num(k),
                    fmt_num(b),
                    name.to_string(),
                    fmt_num(res.value),
                    fmt_num(res.bracket.0),
                    fmt_num(res.bracket.1),
                    res.iterations.to_string(),
                    res.converged.to_string(),
                ]);
                s
            }
            Format::Json => {
                let mut params = json!({"J": j, "K": k, "B": b, "method": name});
                if name == "numeric" {
                    params["scan"] =
                        json!({"t_min": SCAN_T_MIN, "t_max": SCAN_T_MAX, "points": SCAN_POINTS});
                }
                self.json_doc(self.metadata("threshold", params, &[]), json!(res))
            }
        })
    }

    fn sweep(&self, a: &SweepArgs) -> Result<String, Failure> {
        let given = [
            (Param::Bilinear, a.bilinear),
            (Param::Biquadratic, a.biquadratic),
            (Param::Field, a.field),
            (Param::Temperature, a.temperature),
        ];
        let (spec, figure) = match a.figure {
            Some(fig) => {
                let mut spec = fig.spec();
                for (p, v) in given {
                    if let Some(v) = v {
                        if p == spec.x.param || p == spec.y.param {
                            return Err(usage(format!("--{p} is swept by figure {fig}")));
                        }
                        spec.base = p.set(spec.base, finite(p.symbol(), v)?);
                    }
                }
                (spec, Some(fig))
            }
            None => {
                let (Some(xs), Some(ys)) = (&a.x, &a.y) else {
                    return Err(usage("sweep needs --figure or both --x and --y"));
                };
                let x: Axis<f64> = xs.parse().map_err(|e: Error| usage(e.to_string()))?;
                let y: Axis<f64> = ys.parse().map_err(|e: Error| usage(e.to_string()))?;
                let mut base = ModelParams {
                    bilinear: 0.0,
                    biquadratic: 0.0,
                    field: 0.0,
                    temperature: 1.0,
                };
                for (p, v) in given {
                    let swept = p == x.param || p == y.param;
                    match (v, swept) {
                        (Some(_), true) => {
                            return Err(usage(format!("--{p} conflicts with the swept axis")))
                        }
                        (None, false) => return Err(usage(format!("--{p} is required"))),
                        (Some(v), false) => base = p.set(base, finite(p.symbol(), v)?),
                        (None, true) => {}
                    }
                }
                (SweepSpec { x, y, base }, None)
            }
        };
        spec.validate().map_err(|e| usage(e.to_string()))?;

        let grid = sweep(&spec)?;
        let assumptions = figure.map(Figure::assumptions).unwrap_or_default();
        Ok(match self.format {
            Format::Csv => {
                let mut meta = vec![
                    ("command".to_string(), "sweep".to_string()),
                    ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
                ];
                if let Some(fig) = figure {
                    meta.push(("figure".into(), fig.to_string()));
                }
                for s in &assumptions {
                    meta.push(("assumption".into(), s.clone()));
                }
                grid_to_csv(&grid, &meta)
            }
            Format::Json => {
                let mut params = Map::new();
                for (p, v) in &grid.fixed {
                    params.insert(p.symbol().into(), json!(v));
                }
                params.insert("x".into(), json!(grid.x));
                params.insert("y".into(), json!(grid.y));
                if let Some(fig) = figure {
                    params.insert("figure".into(), json!(fig.name()));
                }
                grid_to_json(
                    &grid,
                    self.metadata("sweep", Value::Object(params), &assumptions),
                )
            }
        })
    }
}
