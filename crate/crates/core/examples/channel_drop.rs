//! One seeded drop of rural users: positions, path gains and directions.
//!
//! `cargo run --example channel_drop`

use noma_dbs::channel::{effective_gain, free_space_path_loss_db};
use noma_dbs::harness::{draw_users, ScenarioConfig};
use noma_dbs::steering_vector;

fn main() -> noma_dbs::Result<()> {
    let cfg = ScenarioConfig::default();
    let drop = draw_users(&cfg, 6, 0)?;

    println!("FSPL at 100 m: {:.2} dB", free_space_path_loss_db(100.0, cfg.channel.carrier_hz));
    for (k, (ch, h)) in drop.channels.iter().zip(&drop.vectors).enumerate() {
        let pos = ch.position();
        let w = steering_vector(&cfg.array, ch.los().direction);
        let g = effective_gain(h, w.entries())?;
        println!(
            "user {k}: r = {:6.1} m, theta = {:6.1}°, {} path(s), |h a|^2 = {:.3e}",
            pos.range_m,
            pos.direction.theta.to_degrees(),
            ch.paths().len(),
            g
        );
        for p in ch.paths() {
            println!(
                "    |gain| = {:.3e}  ({:6.1}°, {:6.1}°)",
                p.gain.norm(),
                p.direction.theta.to_degrees(),
                p.direction.phi.to_degrees()
            );
        }
    }
    Ok(())
}
