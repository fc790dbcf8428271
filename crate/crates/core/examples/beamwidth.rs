//! 3 dB and beta0-level beamwidths across scan angles and array heights.
//!
//! `cargo run --example beamwidth`

use noma_dbs::{beamwidth, ArrayConfig, Direction};

fn main() -> noma_dbs::Result<()> {
    let half_power = 0.5f64.sqrt();
    println!("{:>4} {:>6}  {:>10} {:>10}  {:>10} {:>10}", "m_v", "theta", "az 3dB", "el 3dB", "az 0.5", "el 0.5");
    for m_v in [2, 3, 4, 5] {
        let cfg = ArrayConfig::half_wavelength(32, m_v)?;
        for theta in [90.0, 60.0, 30.0] {
            let beam = Direction::from_degrees(theta, 0.0);
            let hp = beamwidth(&cfg, beam, half_power)?;
            let b0 = beamwidth(&cfg, beam, 0.5)?;
            println!(
                "{m_v:>4} {theta:>5}°  {:>9.3}° {:>9.3}°  {:>9.3}° {:>9.3}°",
                hp.omega_az.to_degrees(),
                hp.omega_el.to_degrees(),
                b0.omega_az.to_degrees(),
                b0.omega_el.to_degrees()
            );
        }
    }
    Ok(())
}
