//! Beta-based user clustering on a seeded drop.
//!
//! `cargo run --example clustering -- [users]`

use noma_dbs::beta_metric;
use noma_dbs::harness::{beta_clusters, draw_users, ScenarioConfig};

fn main() -> noma_dbs::Result<()> {
    let users = std::env::args().nth(1).map_or(20, |s| s.parse().expect("users must be an integer"));
    let cfg = ScenarioConfig::default();
    let drop = draw_users(&cfg, users, 0)?;
    let cs = beta_clusters(&cfg, &drop);

    println!("{users} users -> {} clusters, {} NOMA pairs (beta0 = {})", cs.total(), cs.noma_count, cfg.beta0);
    for pair in cs.noma_clusters() {
        let beta = beta_metric(&cfg.array, drop.los[pair.members[0]], drop.los[pair.members[1]]);
        println!(
            "  pair {:?}: beta = {beta:.3}, beam theta = {:.2}°",
            pair.members,
            pair.beam_dir.theta.to_degrees()
        );
    }
    let singles: Vec<usize> = cs.dbs_clusters().iter().map(|c| c.members[0]).collect();
    println!("  singletons: {singles:?}");
    Ok(())
}
