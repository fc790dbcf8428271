//! Steering vectors and the beta interference metric between two users.
//!
//! `cargo run --example steering_beta`

use noma_dbs::{array_factor, beta_metric, steering_vector, ArrayConfig, Direction};

fn main() -> noma_dbs::Result<()> {
    let cfg = ArrayConfig::half_wavelength(32, 2)?;
    let user = Direction::from_degrees(60.0, 0.0);

    let a = steering_vector(&cfg, user);
    println!("M = {} elements, |a_0| = {:.3}", a.len(), a.entries()[0].norm());

    // beta falls off as the second user moves away in azimuth.
    println!("{:>10}  {:>8}", "dtheta", "beta");
    for d in [0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 10.0] {
        let other = Direction::from_degrees(60.0 + d, 0.0);
        println!("{d:>9.1}°  {:>8.4}", beta_metric(&cfg, user, other));
    }

    // The normalized pattern of a beam is beta with the probe direction.
    let probe = Direction::from_degrees(61.0, 0.0);
    println!(
        "array factor of a 60° beam toward 61°: {:.4}",
        array_factor(&cfg, user, probe)
    );
    Ok(())
}
