use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use noma_dbs::harness::{
    pattern_sweep, run_sweep, write_aggregate_csv, write_pattern_csv, write_rows_csv,
    ScenarioConfig,
};
use noma_dbs::Direction;

#[derive(Parser)]
#[command(name = "noma-dbs", version, about = "NOMA-DBS link-level simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo sweep and write one CSV row per (scheme, K, trial).
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `trials` from the config file.
        #[arg(long)]
        trials: Option<usize>,
        /// Overrides `master_seed` from the config file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Also write per-(scheme, K) means and standard errors here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Write azimuth and elevation cuts of a beam's normalized array pattern.
    Pattern {
        #[arg(long)]
        config: PathBuf,
        /// Beam direction as `theta,phi` in degrees.
        #[arg(long, allow_hyphen_values = true)]
        beam: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1801)]
        points: usize,
    },
}

fn parse_beam(s: &str) -> Result<Direction, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [t, p] => {
            let theta: f64 = t.parse().map_err(|_| format!("bad azimuth '{t}'"))?;
            let phi: f64 = p.parse().map_err(|_| format!("bad elevation '{p}'"))?;
            Ok(Direction::from_degrees(theta, phi))
        }
        _ => Err(format!("--beam expects 'theta,phi' in degrees, got '{s}'")),
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, String> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Simulate {
            config,
            trials,
            seed,
            out,
            summary,
        } => {
            let mut cfg = ScenarioConfig::from_file(&config).map_err(|e| e.to_string())?;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            let sweep = run_sweep(&cfg).map_err(|e| e.to_string())?;
            let mut w = create(&out)?;
            write_rows_csv(&mut w, &sweep.rows)
                .and_then(|_| w.flush())
                .map_err(|e| e.to_string())?;
            if let Some(path) = summary {
                let mut w = create(&path)?;
                write_aggregate_csv(&mut w, &sweep.aggregates)
                    .and_then(|_| w.flush())
                    .map_err(|e| e.to_string())?;
            }
            let fallbacks: usize = sweep.aggregates.iter().map(|a| a.sic_fallbacks).sum();
            let stderr = io::stderr();
            let mut log = stderr.lock();
            let _ = writeln!(log, "scheme           K  mean_bps_hz  se");
            for a in &sweep.aggregates {
                let _ = writeln!(
                    log,
                    "{:<14} {:>3}  {:>11.4}  {:.4}",
                    a.scheme.as_str(),
                    a.users,
                    a.mean_spectral_eff,
                    a.se_spectral_eff
                );
            }
            if fallbacks > 0 {
                let _ = writeln!(log, "{fallbacks} NOMA clusters fell back to deactivation (infeasible SIC)");
            }
            Ok(())
        }
        Command::Pattern {
            config,
            beam,
            out,
            points,
        } => {
            let cfg = ScenarioConfig::from_file(&config).map_err(|e| e.to_string())?;
            let beam = parse_beam(&beam)?;
            if points < 2 {
                return Err("--points must be at least 2".into());
            }
            let samples = pattern_sweep(&cfg.array, beam, points);
            let mut w = create(&out)?;
            write_pattern_csv(&mut w, &samples)
                .and_then(|_| w.flush())
                .map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
