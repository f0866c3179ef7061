use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use spdc_core::constants::SPEED_OF_LIGHT;
use spdc_core::modes::{phi_z, spectral_integral_s};
use spdc_core::rates::{compare_experiment, gamma_sweep, optimal_gamma, total_rate, AngleConvention, RateReport};

use crate::config::{load_config, load_material_db, Config};
use crate::error::{CliError, Result};
use crate::output::{linspace, Csv, Output};

#[derive(Debug, Parser)]
#[command(name = "spdc", version, about = "Pair rates for SPDC into single Gaussian modes")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Run configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; results go to stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    pub force: bool,
    /// Override a config value, e.g. `--set pump.waist_um=100`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,
    /// Material database replacing the built-in one.
    #[arg(long, global = true)]
    pub material_db: Option<PathBuf>,
    /// Override the config's angle convention.
    #[arg(long, value_enum, global = true)]
    pub angle_convention: Option<ConventionArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Internal,
    Paper,
}

impl From<ConventionArg> for AngleConvention {
    fn from(arg: ConventionArg) -> Self {
        match arg {
            ConventionArg::Internal => AngleConvention::InternalPhysics,
            ConventionArg::Paper => AngleConvention::PaperExternalAsInternal,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total pair rate, walk-off parameter and efficiencies.
    Rate,
    /// Signal spectral density around the phase-matched frequency.
    Spectrum,
    /// Spectral integral S over a range of walk-off parameters.
    SweepXi(SweepArgs),
    /// Relative rate against the pump/collection waist ratio.
    SweepGamma(SweepArgs),
    /// Data for the overlap, spectral-integral and waist-ratio figures.
    Figures,
    /// Model figures next to the experiment's reference values.
    CompareExperiment,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub min: Option<f64>,
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

pub const FIG2_XI: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];
pub const FIG2_DELTA_PHI: (f64, f64, usize) = (-15.0, 15.0, 2001);
pub const FIG3_XI: (f64, f64, usize) = (0.0, 5.0, 251);
pub const FIG4_GAMMA: (f64, f64, usize) = (0.1, 3.0, 581);

pub fn run(cli: Cli) -> Result<()> {
    let out = Output {
        dir: cli.global.out.clone(),
        force: cli.global.force,
    };
    match &cli.command {
        Command::Rate => {
            let (_, report) = rate_report(&cli.global)?;
            out.write_all(&[("rate.json", json_text(&rate_json(&report)))])
        }
        Command::Spectrum => {
            let (_, report) = rate_report(&cli.global)?;
            out.write_all(&[("spectrum.csv", spectrum_csv(&report).into_string())])
        }
        Command::SweepXi(args) => {
            let (lo, hi, n) = sweep_range(args, FIG3_XI)?;
            out.write_all(&[("sweep_xi.csv", xi_csv(lo, hi, n)?.into_string())])
        }
        Command::SweepGamma(args) => {
            let (lo, hi, n) = sweep_range(args, FIG4_GAMMA)?;
            out.write_all(&[("sweep_gamma.csv", gamma_csv(lo, hi, n)?.into_string())])
        }
        Command::Figures => {
            out.require_dir("figures")?;
            let files = figures()?;
            let refs: Vec<(&str, String)> = files.iter().map(|(n, t)| (n.as_str(), t.clone())).collect();
            out.write_all(&refs)
        }
        Command::CompareExperiment => {
            let (config, report) = rate_report(&cli.global)?;
            let experiment = config
                .experiment
                .as_ref()
                .ok_or_else(|| CliError::validation("experiment", "missing; required by compare-experiment"))?;
            let source = config.source(&load_material_db(cli.global.material_db.as_deref())?)?;
            let cmp = compare_experiment(&source, &report, &experiment.params())?;
            let reference = experiment.reference.clone().unwrap_or_default();
            let ratio = |model: Option<f64>, target: Option<f64>| match (model, target) {
                (Some(m), Some(t)) => json!(m / t),
                _ => Value::Null,
            };
            let doc = json!({
                "model": {
                    "walk_off": report.xi,
                    "rate_total_per_mw_s": cmp.rate_total_per_mw,
                    "observable_rate_per_mw_s": cmp.observable_rate_per_mw,
                    "efficiency_per_mm": cmp.efficiency_per_mm,
                    "efficiency_per_mm_sr": cmp.efficiency_per_mm_sr,
                },
                "reference": reference,
                "model_over_reference": {
                    "walk_off": ratio(Some(report.xi), reference.walk_off),
                    "observable_rate_per_mw_s": ratio(Some(cmp.observable_rate_per_mw), reference.observable_rate_per_mw_s),
                    "efficiency_per_mm": ratio(Some(cmp.efficiency_per_mm), reference.efficiency_per_mm),
                    "efficiency_per_mm_sr": ratio(cmp.efficiency_per_mm_sr, reference.efficiency_per_mm_sr),
                    "measured_rate_per_mw_s": ratio(Some(cmp.observable_rate_per_mw), reference.measured_rate_per_mw_s),
                },
                "warnings": report.warnings,
            });
            out.write_all(&[("comparison.json", json_text(&doc))])
        }
    }
}

fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json serializes");
    text.push('\n');
    text
}

fn load(global: &GlobalArgs) -> Result<Config> {
    let path = global
        .config
        .as_deref()
        .ok_or_else(|| CliError::validation("--config", "required by this command"))?;
    let mut config = load_config(path, &global.set)?;
    if let Some(conv) = global.angle_convention {
        config.angle_convention = conv.into();
    }
    Ok(config)
}

fn rate_report(global: &GlobalArgs) -> Result<(Config, RateReport)> {
    let config = load(global)?;
    let db = load_material_db(global.material_db.as_deref())?;
    let source = config.source(&db)?;
    let report = total_rate(&source)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok((config, report))
}

fn rate_json(report: &RateReport) -> Value {
    let mut doc = serde_json::to_value(report).expect("report serializes");
    let map = doc.as_object_mut().expect("object");
    map.remove("spectral_samples");
    map.insert("spectral_sample_count".into(), json!(report.spectral_samples.len()));
    doc
}

fn spectrum_csv(report: &RateReport) -> Csv {
    let mut csv = Csv::new(&["omega_s", "lambda_s_nm", "density"]);
    for s in &report.spectral_samples {
        let lambda_nm = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / s.omega_s * 1e9;
        csv.row(&[s.omega_s, lambda_nm, s.density]);
    }
    csv
}

fn sweep_range(args: &SweepArgs, default: (f64, f64, usize)) -> Result<(f64, f64, usize)> {
    let lo = args.min.unwrap_or(default.0);
    let hi = args.max.unwrap_or(default.1);
    let n = args.points.unwrap_or(default.2);
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::validation("--min/--max", format!("need min < max, got [{lo}, {hi}]")));
    }
    if n < 2 {
        return Err(CliError::validation("--points", format!("{n} must be ≥ 2")));
    }
    Ok((lo, hi, n))
}

pub fn phi_z_csv() -> Result<Csv> {
    let (lo, hi, n) = FIG2_DELTA_PHI;
    let grid = linspace(lo, hi, n);
    let mut csv = Csv::new(&["xi", "delta_phi", "phi_z_over_l"]);
    for xi in FIG2_XI {
        let values = grid
            .par_iter()
            .map(|&dphi| phi_z(xi, dphi))
            .collect::<spdc_core::Result<Vec<_>>>()?;
        for (&dphi, v) in grid.iter().zip(values) {
            csv.row(&[xi, dphi, v]);
        }
    }
    Ok(csv)
}

pub fn xi_csv(lo: f64, hi: f64, n: usize) -> Result<Csv> {
    if lo < 0.0 {
        return Err(CliError::validation("--min", format!("{lo} must be ≥ 0")));
    }
    let grid = linspace(lo, hi, n);
    let values = grid
        .par_iter()
        .map(|&xi| spectral_integral_s(xi))
        .collect::<spdc_core::Result<Vec<_>>>()?;
    let mut csv = Csv::new(&["xi", "S"]);
    for (&xi, s) in grid.iter().zip(values) {
        csv.row(&[xi, s]);
    }
    Ok(csv)
}

pub fn gamma_csv(lo: f64, hi: f64, n: usize) -> Result<Csv> {
    let sweep = gamma_sweep(lo, hi, n)?;
    let best = sweep.iter().map(|p| p.1).fold(f64::MIN, f64::max);
    let mut csv = Csv::new(&["gamma", "relative_rate", "argmax"]);
    let mut marked = false;
    for (gamma, rel) in sweep {
        let is_max = !marked && rel == best;
        marked |= is_max;
        csv.row(&[gamma, rel, if is_max { 1.0 } else { 0.0 }]);
    }
    Ok(csv)
}

/// Figure data files followed by `manifest.json`.
pub fn figures() -> Result<Vec<(String, String)>> {
    let fig2 = phi_z_csv()?;
    let fig3 = xi_csv(FIG3_XI.0, FIG3_XI.1, FIG3_XI.2)?;
    let fig4 = gamma_csv(FIG4_GAMMA.0, FIG4_GAMMA.1, FIG4_GAMMA.2)?;
    let grids = [
        (
            "fig2_phi_z.csv",
            json!({ "xi": FIG2_XI, "delta_phi": { "min": FIG2_DELTA_PHI.0, "max": FIG2_DELTA_PHI.1, "points": FIG2_DELTA_PHI.2 } }),
        ),
        (
            "fig3_spectral_integral.csv",
            json!({ "xi": { "min": FIG3_XI.0, "max": FIG3_XI.1, "points": FIG3_XI.2 } }),
        ),
        (
            "fig4_gamma.csv",
            json!({ "gamma": { "min": FIG4_GAMMA.0, "max": FIG4_GAMMA.1, "points": FIG4_GAMMA.2 }, "optimal_gamma": optimal_gamma() }),
        ),
    ];
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for ((name, grid), csv) in grids.into_iter().zip([fig2, fig3, fig4]) {
        entries.push(json!({
            "name": name,
            "columns": csv.columns(),
            "rows": csv.rows(),
            "grid": grid,
        }));
        files.push((name.to_string(), csv.into_string()));
    }
    let manifest = json!({
        "generator": "spdc figures",
        "version": env!("CARGO_PKG_VERSION"),
        "files": entries,
    });
    files.push(("manifest.json".to_string(), json_text(&manifest)));
    Ok(files)
}
