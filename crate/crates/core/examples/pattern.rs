//! Azimuth and elevation cuts of a beam's normalized array pattern, written
//! as CSV to stdout.
//!
//! `cargo run --example pattern -- [theta_deg] [phi_deg] > pattern.csv`

use std::io;

use noma_dbs::harness::{pattern_sweep, write_pattern_csv};
use noma_dbs::{ArrayConfig, Direction};

fn main() -> noma_dbs::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>().expect("angles in degrees"));
    let theta = args.next().unwrap_or(60.0);
    let phi = args.next().unwrap_or(0.0);
    let cfg = ArrayConfig::half_wavelength(32, 2)?;
    let samples = pattern_sweep(&cfg, Direction::from_degrees(theta, phi), 721);
    write_pattern_csv(io::stdout().lock(), &samples).expect("stdout");
    Ok(())
}
