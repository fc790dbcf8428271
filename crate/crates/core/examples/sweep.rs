//! Default rural sweep with every scheme; prints mean spectral efficiency
//! per user count and the NOMA gain over classical DBS.
//!
//! `cargo run --release --example sweep -- [trials]`

use noma_dbs::harness::{run_sweep, ScenarioConfig};
use noma_dbs::SchemeId;

fn main() -> noma_dbs::Result<()> {
    let mut cfg = ScenarioConfig::default();
    if let Some(t) = std::env::args().nth(1) {
        cfg.trials = t.parse().expect("trials must be an integer");
    }
    let sweep = run_sweep(&cfg)?;

    print!("{:>3}", "K");
    for s in cfg.active_schemes() {
        print!("  {:>13}", s.as_str());
    }
    println!("  {:>8}  {:>8}", "gain", "pcsi/fcsi");
    for &k in &cfg.user_counts {
        print!("{k:>3}");
        for s in cfg.active_schemes() {
            print!("  {:>13.4}", sweep.aggregate(s, k).unwrap().mean_spectral_eff);
        }
        let dbs = sweep.aggregate(SchemeId::Dbs, k).unwrap().mean_spectral_eff;
        let f = sweep.aggregate(SchemeId::NomaDbsFullCsi, k).unwrap().mean_spectral_eff;
        let p = sweep.aggregate(SchemeId::NomaDbsPartialCsi, k).unwrap().mean_spectral_eff;
        println!("  {:>7.2}%  {:>8.4}", 100.0 * (f / dbs - 1.0), p / f);
    }
    Ok(())
}
