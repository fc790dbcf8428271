//! CSV emission for sweep rows, aggregates and pattern cuts.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{self, Write};

use crate::array::{array_factor, ArrayConfig, Direction};

use super::sim::{Aggregate, ScenarioResult};

pub const CSV_HEADER: &str =
    "scheme,K,trial,sum_rate_bps,spectral_eff,energy_eff,noma_clusters,deactivated_users";

/// Nine significant digits, scientific notation.
fn sig9(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn write_rows_csv<W: Write>(mut w: W, rows: &[ScenarioResult]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.scheme,
            r.users,
            r.trial,
            sig9(r.sum_rate_bps),
            sig9(r.spectral_eff_bps_per_hz),
            sig9(r.energy_eff_bps_per_j),
            r.noma_cluster_count,
            r.deactivated_user_count
        )?;
    }
    Ok(())
}

pub fn write_aggregate_csv<W: Write>(mut w: W, aggregates: &[Aggregate]) -> io::Result<()> {
    writeln!(
        w,
        "scheme,K,trials,mean_spectral_eff,se_spectral_eff,mean_energy_eff,se_energy_eff,mean_noma_clusters,mean_deactivated_users,sic_fallbacks"
    )?;
    for a in aggregates {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            a.scheme,
            a.users,
            a.trials,
            sig9(a.mean_spectral_eff),
            sig9(a.se_spectral_eff),
            sig9(a.mean_energy_eff),
            sig9(a.se_energy_eff),
            sig9(a.mean_noma_clusters),
            sig9(a.mean_deactivated),
            a.sic_fallbacks
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternSample {
    /// `"azimuth"` or `"elevation"`.
    pub cut: &'static str,
    pub probe: Direction,
    pub array_factor: f64,
}

/// Azimuth cut over `theta in [0, pi]` at the beam elevation and elevation
/// cut over `phi in [-pi/2, pi/2]` at the beam azimuth, `points` samples each.
pub fn pattern_sweep(cfg: &ArrayConfig, beam: Direction, points: usize) -> Vec<PatternSample> {
    assert!(points >= 2, "a pattern cut needs at least two points");
    let step = |span: f64, i: usize| span * i as f64 / (points - 1) as f64;
    let az = (0..points).map(|i| {
        let probe = Direction::new(step(PI, i), beam.phi);
        PatternSample {
            cut: "azimuth",
            probe,
            array_factor: array_factor(cfg, beam, probe),
        }
    });
    let el = (0..points).map(|i| {
        let probe = Direction::new(beam.theta, -FRAC_PI_2 + step(PI, i));
        PatternSample {
            cut: "elevation",
            probe,
            array_factor: array_factor(cfg, beam, probe),
        }
    });
    az.chain(el).collect()
}

pub fn write_pattern_csv<W: Write>(mut w: W, samples: &[PatternSample]) -> io::Result<()> {
    writeln!(w, "cut,theta_rad,phi_rad,array_factor")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{}",
            s.cut,
            sig9(s.probe.theta),
            sig9(s.probe.phi),
            sig9(s.array_factor)
        )?;
    }
    Ok(())
}
