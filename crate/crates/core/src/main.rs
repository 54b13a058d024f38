use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use conelab::hypgeom::{
    fenchel_nielsen, length_spectra_distance, minsky_teich_estimate, TraceCoord,
};
use conelab::lab::{
    divergence_sequence, emit_report, parse_config_file, sweep_almost_isometry, sweep_teich_comparison,
    DivergenceConfig, Report, SweepConfig,
};
use conelab::modelmap::{bers_project, epsilon0, moduli_ls_distance, psi, ModelPoint};
use conelab::Error;

/// Cone-model experiments on the once-punctured torus.
#[derive(Parser, Debug)]
#[command(name = "conelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug, Default)]
struct Flags {
    #[arg(long, global = true)]
    grid_min: Option<String>,
    #[arg(long, global = true)]
    grid_max: Option<String>,
    #[arg(long, global = true)]
    grid_step: Option<String>,
    /// Enumeration height Q.
    #[arg(long, global = true)]
    height: Option<String>,
    /// Mapping-class ball radius R.
    #[arg(long, global = true)]
    orbit_radius: Option<String>,
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key = value` file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Compute rows on one thread (output is identical either way).
    #[arg(long, global = true)]
    serial: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All three distances for one pair of model points.
    Dist { x: f64, y: f64 },
    /// Almost-isometry sweep over the grid.
    Sweep,
    /// Teichmüller estimate against the length-spectra bound over the grid.
    Compare,
    /// Dehn-twist divergence sequence.
    Diverge {
        #[arg(long)]
        n_max: Option<String>,
    },
    /// Model point of a structure given by its traces.
    Project { x: f64, y: f64, z: f64 },
}

enum Outcome {
    Clean,
    Violations,
}

/// Settings in application order: config file first, then flags.
fn settings(flags: &Flags, extra: &[(&str, &Option<String>)]) -> Result<Vec<(String, String)>, Error> {
    let mut out = Vec::new();
    if let Some(path) = &flags.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        out.extend(parse_config_file(&text)?);
    }
    let given = [
        ("grid-min", &flags.grid_min),
        ("grid-max", &flags.grid_max),
        ("grid-step", &flags.grid_step),
        ("height", &flags.height),
        ("orbit-radius", &flags.orbit_radius),
        ("tol", &flags.tol),
    ];
    for (k, v) in given.iter().chain(extra) {
        if let Some(v) = v {
            out.push((k.to_string(), v.clone()));
        }
    }
    if let Some(p) = &flags.out {
        out.push(("out".into(), p.display().to_string()));
    }
    Ok(out)
}

fn sweep_config(flags: &Flags) -> Result<SweepConfig, Error> {
    let mut cfg = SweepConfig::default();
    let mut div = DivergenceConfig::default();
    for (k, v) in settings(flags, &[])? {
        // divergence-only keys may share a config file with sweep keys
        if !cfg.set(&k, &v)? && !div.set(&k, &v)? {
            return Err(Error::Config(format!("unknown key {k:?}")));
        }
    }
    cfg.parallel = !flags.serial;
    cfg.validate()?;
    Ok(cfg)
}

fn divergence_config(flags: &Flags, n_max: &Option<String>) -> Result<DivergenceConfig, Error> {
    let mut cfg = DivergenceConfig::default();
    let mut sweep = SweepConfig::default();
    for (k, v) in settings(flags, &[("n-max", n_max)])? {
        if !cfg.set(&k, &v)? && !sweep.set(&k, &v)? {
            return Err(Error::Config(format!("unknown key {k:?}")));
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write(report: &Report, out: Option<&std::path::Path>) -> anyhow::Result<Outcome> {
    let text = emit_report(report, out)?;
    if out.is_none() {
        print!("{text}");
    }
    Ok(if report.has_violations() {
        Outcome::Violations
    } else {
        Outcome::Clean
    })
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Dist { x, y } => {
            let cfg = sweep_config(&cli.flags)?;
            let (tx, ty) = (psi(ModelPoint::new(*x)?), psi(ModelPoint::new(*y)?));
            let moduli = moduli_ls_distance(&tx, &ty, cfg.height, cfg.orbit_radius);
            let teich = length_spectra_distance(&tx, &ty, cfg.height);
            let d_t = minsky_teich_estimate(
                &[fenchel_nielsen(&tx)],
                &[fenchel_nielsen(&ty)],
                epsilon0(),
                cfg.twist_unit,
            )?;
            println!("d_v = {:.11e}", 0.5 * (x - y).abs());
            println!("d_l_lower = {:.11e} (height {}, orbit radius {})", moduli.bracket.lower, cfg.height, cfg.orbit_radius);
            println!("d_ls_lower_teich = {:.11e}", teich.lower);
            println!("d_t_est = {:.11e}", d_t);
            Ok(Outcome::Clean)
        }
        Command::Sweep => {
            let cfg = sweep_config(&cli.flags)?;
            let report = sweep_almost_isometry(&cfg)?;
            write(&Report::sweep(&report, &cfg), cfg.output_path.as_deref())
        }
        Command::Compare => {
            let cfg = sweep_config(&cli.flags)?;
            let report = sweep_teich_comparison(&cfg)?;
            write(&Report::comparison(&report, &cfg), cfg.output_path.as_deref())
        }
        Command::Diverge { n_max } => {
            let cfg = divergence_config(&cli.flags, n_max)?;
            let rows = divergence_sequence(&cfg)?;
            write(&Report::divergence(&rows, &cfg), cfg.output_path.as_deref())
        }
        Command::Project { x, y, z } => {
            let cfg = sweep_config(&cli.flags)?;
            let t = TraceCoord::new(*x, *y, *z).context("invalid trace triple")?;
            let p = bers_project(&t, cfg.height);
            println!("x = {:.11e}", p.point.value());
            println!("systole = {}", p.systole);
            println!("systole_length = {:.11e}", p.systole_length);
            println!("exact_height = {}", p.exact_height);
            Ok(Outcome::Clean)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            let config = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::Config(_)));
            ExitCode::from(if config { 2 } else { 1 })
        }
    }
}
