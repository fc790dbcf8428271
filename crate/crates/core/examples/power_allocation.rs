//! Intra-cluster power allocation: the three branches, then full- versus
//! angle-only CSI on a real cluster.
//!
//! `cargo run --example power_allocation`

use noma_dbs::beamforming::build_plan;
use noma_dbs::clustering::order_cluster_users;
use noma_dbs::harness::{beta_clusters, draw_users, ScenarioConfig};
use noma_dbs::link::{beam_gains, link_state_from_gains};
use noma_dbs::power::{cluster_rate, opa, opa_partial_csi, PaInput};

fn main() -> noma_dbs::Result<()> {
    println!("{:>8} {:>8}  {:>14} {:>8} {:>10}", "zeta1", "zeta2", "branch", "gamma1", "rate b/Hz");
    for (z1, z2) in [(40.0, 3.0), (3.0, 40.0), (10.0, 10.2), (3.0, 3.0)] {
        let r = opa(&PaInput { zeta1: z1, zeta2: z2, p_min: 1e-3, epsilon: 0.05 })?;
        println!(
            "{z1:>8.1} {z2:>8.1}  {:>14} {:>8.4} {:>10.4}",
            format!("{:?}", r.branch),
            r.gamma1,
            cluster_rate(z1, z2, r.gamma1)
        );
    }

    let cfg = ScenarioConfig::default();
    let drop = draw_users(&cfg, 30, 1)?;
    let cs = beta_clusters(&cfg, &drop);
    let plan = build_plan(&cs, &cfg.array, cfg.total_power_w(), cfg.inter_cluster_rule);
    let noise = cfg.noise_w();
    let gains: Vec<Vec<f64>> = drop.vectors.iter().map(|h| beam_gains(h, &plan)).collect();

    println!("\nper-cluster split, full vs angle-only CSI:");
    for (c, cluster) in cs.noma_clusters().iter().enumerate() {
        let received: Vec<f64> = cluster.members.iter().map(|&u| gains[u][c]).collect();
        let ordered = order_cluster_users(cluster, &received);
        let (s, w) = (ordered.members[0], ordered.members[1]);
        let z1 = link_state_from_gains(&gains[s], &plan, c, noise).zeta;
        let z2 = link_state_from_gains(&gains[w], &plan, c, noise).zeta;
        let full = opa(&PaInput { zeta1: z1, zeta2: z2, p_min: cfg.p_min, epsilon: cfg.epsilon })?;
        let partial = opa_partial_csi(
            drop.los[s], drop.los[w], &plan, c, &cfg.array, cfg.p_min, cfg.epsilon, noise,
        )?;
        println!(
            "  cluster {c:>2}: gamma1 full {:.4} ({:?}), partial {:.4} ({:?})",
            full.gamma1, full.branch, partial.gamma1, partial.branch
        );
    }
    Ok(())
}
