//! NOMA-DBS on a 32x2 array against classical DBS on taller arrays:
//! spectral and energy efficiency per user count.
//!
//! `cargo run --release --example energy_efficiency -- [trials]`

use noma_dbs::harness::{run_sweep, ScenarioConfig};
use noma_dbs::{ArrayConfig, SchemeId};

fn main() -> noma_dbs::Result<()> {
    let trials = std::env::args().nth(1).map_or(200, |s| s.parse().expect("trials must be an integer"));
    let mut base = ScenarioConfig::default();
    base.trials = trials;

    let mut noma = base.clone();
    noma.schemes = vec![SchemeId::NomaDbsPartialCsi];
    let noma = run_sweep(&noma)?;

    let mut dbs_runs = Vec::new();
    for m_v in [2, 3, 4, 5] {
        let mut cfg = base.clone();
        cfg.array = ArrayConfig::half_wavelength(32, m_v)?;
        cfg.schemes = vec![SchemeId::Dbs];
        dbs_runs.push((m_v, run_sweep(&cfg)?));
    }

    print!("{:>3}  {:>18}", "K", "noma 32x2 SE/EE");
    for (m_v, _) in &dbs_runs {
        print!("  {:>18}", format!("dbs 32x{m_v} SE/EE"));
    }
    println!();
    for &k in &base.user_counts {
        let a = noma.aggregate(SchemeId::NomaDbsPartialCsi, k).unwrap();
        print!("{k:>3}  {:>8.2} {:>9.3e}", a.mean_spectral_eff, a.mean_energy_eff);
        for (_, run) in &dbs_runs {
            let d = run.aggregate(SchemeId::Dbs, k).unwrap();
            print!("  {:>8.2} {:>9.3e}", d.mean_spectral_eff, d.mean_energy_eff);
        }
        println!();
    }
    Ok(())
}
