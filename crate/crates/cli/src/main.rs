//! Command-line interface to the majorant library.
//!
//! Exit codes: 0 on success, 1 on domain errors (invalid vectors, malformed
//! input files, failed searches), 2 on usage errors.

mod scenarios;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use majorant::bounds::{
    entropic_lower_bound, has_common_eigenstate, infimum_bound, supremum_bound, BoundResult,
    ConcaveMeasure, SearchConfig,
};
use majorant::conjugate::{
    leading_joint_probability, small_s_asymptote, solve_spectrum, PhaseSpaceParams,
};
use majorant::optimal::{least_uncertain_measurement, spectrum_descending, von_neumann_entropy};
use majorant::{
    compare, infimum, spin_component_measurement, supremum, DensityMatrix64,
    Measurement64, ProbVec64, SpinAxis,
};

#[derive(Parser)]
#[command(name = "majorant", version, about = "Majorization uncertainty toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Sup,
    Inf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mub {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MeasurementSource {
    /// JSON file with one measurement object or an array of them
    #[arg(long, value_name = "FILE")]
    measurements: Option<PathBuf>,
    /// Built-in set of 2 or 3 mutually unbiased spin components
    #[arg(long, value_enum)]
    mub: Option<Mub>,
}

impl MeasurementSource {
    fn load(&self) -> Result<Vec<Measurement64>, String> {
        match (&self.measurements, self.mub) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                parse_measurements(&text)
            }
            (None, Some(mub)) => Ok(mub_set(mub)),
            _ => Err("provide exactly one of --measurements or --mub".into()),
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Seed for the state-space searches
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random restarts per component and search space
    #[arg(long, default_value_t = 64)]
    restarts: usize,
}

impl SearchArgs {
    fn config(&self, pure_only: bool) -> SearchConfig<f64> {
        SearchConfig {
            restarts: self.restarts,
            seed: self.seed,
            pure_only,
            ..SearchConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare two probability vectors under majorization
    Compare {
        /// First vector: comma-separated or a JSON array
        #[arg(long)]
        a: String,
        /// Second vector: comma-separated or a JSON array
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Infimum of a set of probability vectors
    Inf {
        /// A vector (repeat the flag for each one)
        #[arg(long = "vec", required = true)]
        vecs: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Supremum of a set of probability vectors
    Sup {
        #[arg(long = "vec", required = true)]
        vecs: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// State-independent majorization bound for a measurement set
    Bound {
        #[command(flatten)]
        source: MeasurementSource,
        /// Which envelope to compute
        #[arg(long, value_enum, default_value = "sup")]
        side: Side,
        /// Restrict the search to pure states
        #[arg(long)]
        pure_only: bool,
        #[command(flatten)]
        search: SearchArgs,
        /// Eigenvalue tolerance for the common-eigenstate detector
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Scalar uncertainty bound from a concave measure of the bound
    EntropicBound {
        #[command(flatten)]
        source: MeasurementSource,
        /// "shannon" or "tsallis:Q" for an order-Q Tsallis entropy
        #[arg(long, default_value = "shannon", value_parser = parse_measure_spec)]
        measure: MeasureSpec,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sinc-kernel spectrum for a position/momentum bin pair
    Conjugate {
        /// Phase-space parameter; alternative to the explicit bin widths
        #[arg(long, conflicts_with_all = ["delta_x", "delta_p"])]
        s: Option<f64>,
        #[arg(long, requires = "delta_p")]
        delta_x: Option<f64>,
        #[arg(long, requires = "delta_x")]
        delta_p: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 128)]
        quad_order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Least uncertain rank-1 measurement of a state
    LeastUncertain {
        /// JSON file holding the density matrix
        #[arg(long, value_name = "FILE")]
        state: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute published reference values and report deviations
    Reproduce {
        #[arg(value_enum)]
        scenario: scenarios::Scenario,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = 128)]
        quad_order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug)]
enum MeasureSpec {
    Shannon,
    Tsallis(f64),
}

fn parse_measure_spec(raw: &str) -> Result<MeasureSpec, String> {
    if raw == "shannon" {
        return Ok(MeasureSpec::Shannon);
    }
    if let Some(q) = raw.strip_prefix("tsallis:") {
        let q: f64 = q.parse().map_err(|_| format!("bad Tsallis order: {q}"))?;
        return Ok(MeasureSpec::Tsallis(q));
    }
    Err(format!("unknown measure {raw:?}; use shannon or tsallis:<q>"))
}

impl MeasureSpec {
    fn build(self) -> Result<ConcaveMeasure<f64>, String> {
        match self {
            MeasureSpec::Shannon => Ok(ConcaveMeasure::shannon()),
            MeasureSpec::Tsallis(q) => ConcaveMeasure::tsallis(q).map_err(|e| e.to_string()),
        }
    }
}

fn mub_set(mub: Mub) -> Vec<Measurement64> {
    let mut ms = vec![
        spin_component_measurement(SpinAxis::X),
        spin_component_measurement(SpinAxis::Y),
    ];
    if matches!(mub, Mub::Three) {
        ms.push(spin_component_measurement(SpinAxis::Z));
    }
    ms
}

/// Accepts a JSON array of numbers or a comma-separated list.
fn parse_vector(raw: &str) -> Result<ProbVec64, String> {
    if raw.trim_start().starts_with('[') {
        return serde_json::from_str(raw).map_err(|e| format!("bad vector: {e}"));
    }
    let entries: Result<Vec<f64>, _> = raw.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let entries = entries.map_err(|e| format!("bad vector entry: {e}"))?;
    ProbVec64::new(entries).map_err(|e| e.to_string())
}

fn parse_vectors(raws: &[String]) -> Result<Vec<ProbVec64>, String> {
    raws.iter().map(|r| parse_vector(r)).collect()
}

/// Accepts one measurement object or an array of them.
fn parse_measurements(text: &str) -> Result<Vec<Measurement64>, String> {
    if let Ok(list) = serde_json::from_str::<Vec<Measurement64>>(text) {
        if list.is_empty() {
            return Err("empty measurement list".into());
        }
        return Ok(list);
    }
    serde_json::from_str::<Measurement64>(text)
        .map(|m| vec![m])
        .map_err(|e| format!("bad measurement file: {e}"))
}

/// Rounds reported probability vectors to 6 decimals, preserving the unit
/// sum by pushing the residual onto the largest entry.
fn round6(entries: &[f64]) -> Vec<f64> {
    let mut rounded: Vec<f64> = entries.iter().map(|x| (x * 1e6).round() / 1e6).collect();
    let residual: f64 = 1.0 - rounded.iter().sum::<f64>();
    if residual.abs() > 0.0 {
        if let Some((top, _)) = rounded
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        {
            rounded[top] = ((rounded[top] + residual) * 1e12).round() / 1e12;
        }
    }
    rounded
}

fn csv_line(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn bound_json(result: &BoundResult<f64>, common: &Option<DensityMatrix64>) -> serde_json::Value {
    let envelope: Vec<f64> = result
        .envelope
        .partial_sums()
        .iter()
        .map(|x| (x * 1e6).round() / 1e6)
        .collect();
    json!({
        "envelope": envelope,
        "bound": round6(result.bound.entries()),
        "witnesses": result.witnesses,
        "common_eigenstate": common,
    })
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Compare { a, b, format } => {
            let order = compare(&parse_vector(&a)?, &parse_vector(&b)?);
            match format {
                Format::Json => emit(&json!({ "order": order })),
                Format::Csv => println!("{order:?}"),
            }
        }
        Command::Inf { vecs, format } => {
            let result = infimum(&parse_vectors(&vecs)?).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit(&json!({ "infimum": result.entries() })),
                Format::Csv => println!("{}", csv_line(result.entries())),
            }
        }
        Command::Sup { vecs, format } => {
            let result = supremum(&parse_vectors(&vecs)?).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit(&json!({ "supremum": result.entries() })),
                Format::Csv => println!("{}", csv_line(result.entries())),
            }
        }
        Command::Bound {
            source,
            side,
            pure_only,
            search,
            tolerance,
            format,
        } => {
            let ms = source.load()?;
            let cfg = search.config(pure_only);
            let result = match side {
                Side::Sup => supremum_bound(&ms, &cfg),
                Side::Inf => infimum_bound(&ms, &cfg),
            }
            .map_err(|e| e.to_string())?;
            let common = has_common_eigenstate(&ms, tolerance).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let mut value = bound_json(&result, &common);
                    value["side"] = json!(match side {
                        Side::Sup => "sup",
                        Side::Inf => "inf",
                    });
                    emit(&value);
                }
                Format::Csv => println!("{}", csv_line(&round6(result.bound.entries()))),
            }
        }
        Command::EntropicBound {
            source,
            measure,
            search,
            format,
        } => {
            let ms = source.load()?;
            let cfg = search.config(false);
            let measure = measure.build()?;
            let value = entropic_lower_bound(&measure, &ms, &cfg).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit(&json!({
                    "measure": measure.name(),
                    "entropic_bound": value,
                })),
                Format::Csv => println!("{value}"),
            }
        }
        Command::Conjugate {
            s,
            delta_x,
            delta_p,
            hbar,
            quad_order,
            format,
        } => {
            let params = match (s, delta_x, delta_p) {
                (Some(s), None, None) => PhaseSpaceParams::from_s(s),
                (None, Some(dx), Some(dp)) => PhaseSpaceParams::new(dx, dp, hbar),
                _ => return Err("provide either --s or both --delta-x and --delta-p".into()),
            }
            .map_err(|e| e.to_string())?;
            let spectrum = solve_spectrum(&params, quad_order).map_err(|e| e.to_string())?;
            let leading = leading_joint_probability(&params, quad_order).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit(&json!({
                    "s": params.s(),
                    "quad_order": quad_order,
                    "mu2": spectrum.eigenvalues(),
                    "leading_joint_probability": leading,
                    "asymptote": small_s_asymptote(params.s()),
                })),
                Format::Csv => {
                    println!("node,eigenfunction");
                    for (x, f) in spectrum.nodes().iter().zip(spectrum.leading_eigenfunction()) {
                        println!("{x},{f}");
                    }
                }
            }
        }
        Command::LeastUncertain { state, format } => {
            let text = fs::read_to_string(&state)
                .map_err(|e| format!("cannot read {}: {e}", state.display()))?;
            let rho: DensityMatrix64 =
                serde_json::from_str(&text).map_err(|e| format!("bad state file: {e}"))?;
            let measurement = least_uncertain_measurement(&rho).map_err(|e| e.to_string())?;
            let spectrum = spectrum_descending(&rho).map_err(|e| e.to_string())?;
            let entropy = von_neumann_entropy(&rho).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit(&json!({
                    "spectrum": spectrum.values().entries(),
                    "projectors": measurement.elements(),
                    "von_neumann_entropy": entropy,
                    "measurement": measurement,
                })),
                Format::Csv => println!("{}", csv_line(spectrum.values().entries())),
            }
        }
        Command::Reproduce {
            scenario,
            search,
            quad_order,
            format,
        } => {
            let report = scenarios::run(scenario, &search.config(false), quad_order)?;
            match format {
                Format::Json => emit(&serde_json::to_value(&report).expect("serializable")),
                Format::Csv => {
                    println!("name,reference,computed,deviation");
                    for item in &report.items {
                        println!(
                            "{},{:.6},{:.6},{:.6}",
                            item.name, item.reference, item.computed, item.deviation
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
