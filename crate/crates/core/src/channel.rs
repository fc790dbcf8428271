//! Sparse stochastic multipath channel.
//!
//! Each user gets a LOS path whose amplitude follows free-space path loss at
//! the carrier plus log-normal shadowing, and a few NLOS paths a configurable
//! number of dB below it, scattered around the LOS direction. The structural
//! knobs (time clusters, paths per cluster) default to the sparse rural
//! regime of one or two paths per user.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::array::{steering_vector, ArrayConfig, Direction};
use crate::error::{Error, Result};

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathComponent {
    pub gain: Complex64,
    pub direction: Direction,
}

/// Position of a user seen from the base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserPosition {
    /// Ground distance in meters.
    pub range_m: f64,
    pub direction: Direction,
}

/// Multipath channel of one user. `paths[0]` is the LOS (strongest) path.
#[derive(Debug, Clone, PartialEq)]
pub struct UserChannel {
    paths: Vec<PathComponent>,
    position: UserPosition,
}

impl UserChannel {
    /// Sorts paths by decreasing magnitude (stable) so the strongest is first.
    pub fn new(mut paths: Vec<PathComponent>, position: UserPosition) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::InvalidParams("channel needs at least one path".into()));
        }
        if paths.iter().any(|p| !(p.gain.norm() > 0.0)) {
            return Err(Error::InvalidParams("path gains must be non-zero".into()));
        }
        paths.sort_by(|a, b| b.gain.norm().total_cmp(&a.gain.norm()));
        Ok(Self { paths, position })
    }

    /// Single-path channel toward `direction` with gain `gain`.
    pub fn line_of_sight(gain: Complex64, direction: Direction) -> Result<Self> {
        Self::new(
            vec![PathComponent { gain, direction }],
            UserPosition {
                range_m: 0.0,
                direction,
            },
        )
    }

    pub fn paths(&self) -> &[PathComponent] {
        &self.paths
    }

    pub fn los(&self) -> &PathComponent {
        &self.paths[0]
    }

    pub fn position(&self) -> UserPosition {
        self.position
    }
}

/// Inclusive integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRange {
    pub min: u32,
    pub max: u32,
}

impl CountRange {
    pub const fn new(min: u32, max: u32) -> Self {
        Self { min, max }
    }
}

/// Inclusive real interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub const fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.min == self.max {
            self.min
        } else {
            rng.random_range(self.min..=self.max)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelParams {
    pub carrier_hz: f64,
    pub num_time_clusters: CountRange,
    pub paths_per_cluster: CountRange,
    /// How far below the LOS path each NLOS path sits, in dB.
    pub nlos_gain_offset_db: Interval,
    /// Half-width of the uniform angular scatter of NLOS paths around LOS.
    pub angle_spread_deg: f64,
    pub shadowing_sigma_db: f64,
    /// Antenna heights; their difference sets the LOS elevation.
    pub bs_height_m: f64,
    pub ue_height_m: f64,
    /// Keeps the path loss finite: no user is dropped closer than this.
    pub min_distance_m: f64,
}

impl ChannelParams {
    /// Rural defaults at 28 GHz: one time cluster holding one or two paths,
    /// users in the horizontal plane of the array.
    pub fn rural() -> Self {
        Self {
            carrier_hz: 28e9,
            num_time_clusters: CountRange::new(1, 1),
            paths_per_cluster: CountRange::new(1, 2),
            nlos_gain_offset_db: Interval::new(5.0, 15.0),
            angle_spread_deg: 15.0,
            shadowing_sigma_db: 4.0,
            bs_height_m: 0.0,
            ue_height_m: 0.0,
            min_distance_m: 1.0,
        }
    }

    /// Line-of-sight only.
    pub fn mono_path() -> Self {
        Self {
            paths_per_cluster: CountRange::new(1, 1),
            num_time_clusters: CountRange::new(1, 1),
            ..Self::rural()
        }
    }

    pub fn validate(&self, cell_radius_m: f64) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if !(self.carrier_hz > 0.0) {
            return bad(format!("carrier must be positive, got {}", self.carrier_hz));
        }
        if !(cell_radius_m > 0.0) {
            return bad(format!("cell radius must be positive, got {cell_radius_m}"));
        }
        for (name, r) in [
            ("num_time_clusters", self.num_time_clusters),
            ("paths_per_cluster", self.paths_per_cluster),
        ] {
            if r.min == 0 || r.min > r.max {
                return bad(format!("{name} range [{}, {}] is empty", r.min, r.max));
            }
        }
        let off = self.nlos_gain_offset_db;
        if !(off.min.is_finite() && off.max.is_finite() && off.min <= off.max) {
            return bad(format!(
                "nlos_gain_offset_db range [{}, {}] is empty",
                off.min, off.max
            ));
        }
        if !(self.angle_spread_deg >= 0.0) || !(self.shadowing_sigma_db >= 0.0) {
            return bad("angle spread and shadowing sigma must be non-negative".into());
        }
        if !(self.min_distance_m >= 0.0 && self.min_distance_m < cell_radius_m) {
            return bad(format!(
                "min distance {} must lie in [0, cell radius {cell_radius_m})",
                self.min_distance_m
            ));
        }
        if !(self.bs_height_m.is_finite() && self.ue_height_m.is_finite()) {
            return bad("antenna heights must be finite".into());
        }
        Ok(())
    }
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self::rural()
    }
}

/// Free-space path loss in dB at 3-D distance `distance_m`.
pub fn free_space_path_loss_db(distance_m: f64, carrier_hz: f64) -> f64 {
    20.0 * (4.0 * PI * distance_m * carrier_hz / SPEED_OF_LIGHT).log10()
}

fn draw_count<R: Rng + ?Sized>(rng: &mut R, r: CountRange) -> u32 {
    if r.min == r.max {
        r.min
    } else {
        rng.random_range(r.min..=r.max)
    }
}

/// Drops one user uniformly over the cell (outside `min_distance_m`) and
/// draws its multipath channel.
pub fn generate_user_channel<R: Rng + ?Sized>(
    rng: &mut R,
    params: &ChannelParams,
    cell_radius_m: f64,
) -> Result<UserChannel> {
    params.validate(cell_radius_m)?;

    let r0 = params.min_distance_m;
    let range_m = (rng.random::<f64>() * (cell_radius_m.powi(2) - r0 * r0) + r0 * r0).sqrt();
    let bearing = rng.random::<f64>() * 2.0 * PI;
    let dh = params.bs_height_m - params.ue_height_m;
    // Elevation below the horizon is negative.
    let elevation = (params.ue_height_m - params.bs_height_m).atan2(range_m);
    let los_dir = Direction::new(bearing, elevation).folded();

    let distance_3d = range_m.hypot(dh);
    let shadow_db = if params.shadowing_sigma_db > 0.0 {
        Normal::new(0.0, params.shadowing_sigma_db)
            .expect("sigma checked non-negative")
            .sample(rng)
    } else {
        0.0
    };
    let loss_db = free_space_path_loss_db(distance_3d, params.carrier_hz) + shadow_db;
    let los_amp = 10f64.powf(-loss_db / 20.0);
    let los_gain = Complex64::from_polar(los_amp, rng.random::<f64>() * 2.0 * PI);

    let clusters = draw_count(rng, params.num_time_clusters);
    let mut total = 0;
    for _ in 0..clusters {
        total += draw_count(rng, params.paths_per_cluster);
    }

    let spread = params.angle_spread_deg.to_radians();
    let mut paths = Vec::with_capacity(total as usize);
    paths.push(PathComponent {
        gain: los_gain,
        direction: los_dir,
    });
    for _ in 1..total {
        let offset_db = params.nlos_gain_offset_db.sample(rng);
        let amp = los_amp * 10f64.powf(-offset_db / 20.0);
        let gain = Complex64::from_polar(amp, rng.random::<f64>() * 2.0 * PI);
        let d_theta = (rng.random::<f64>() * 2.0 - 1.0) * spread;
        let d_phi = (rng.random::<f64>() * 2.0 - 1.0) * spread;
        let direction =
            Direction::new(los_dir.theta + d_theta, los_dir.phi + d_phi).folded();
        paths.push(PathComponent { gain, direction });
    }

    UserChannel::new(
        paths,
        UserPosition {
            range_m,
            direction: los_dir,
        },
    )
}

/// Row channel vector `h = sum_n gain_n * a(dir_n)^H`.
pub fn channel_vector(uc: &UserChannel, cfg: &ArrayConfig) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); cfg.elements()];
    for path in uc.paths() {
        let a = steering_vector(cfg, path.direction);
        for (hi, ai) in h.iter_mut().zip(a.entries()) {
            *hi += path.gain * ai.conj();
        }
    }
    h
}

/// Received-power statistic `|h w|^2` (no conjugation: `h` is already a row).
pub fn effective_gain(h: &[Complex64], w: &[Complex64]) -> Result<f64> {
    if h.len() != w.len() {
        return Err(Error::DimensionMismatch {
            left: h.len(),
            right: w.len(),
        });
    }
    Ok(h.iter().zip(w).map(|(a, b)| a * b).sum::<Complex64>().norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::beta_metric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mono_path_params_give_one_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let uc = generate_user_channel(&mut rng, &ChannelParams::mono_path(), 100.0).unwrap();
            assert_eq!(uc.paths().len(), 1);
        }
    }

    #[test]
    fn rural_draws_one_or_two_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = [false; 3];
        for _ in 0..200 {
            let uc = generate_user_channel(&mut rng, &ChannelParams::rural(), 100.0).unwrap();
            let n = uc.paths().len();
            assert!((1..=2).contains(&n));
            seen[n] = true;
            for p in &uc.paths()[1..] {
                assert!(p.gain.norm() <= uc.los().gain.norm());
            }
            let pos = uc.position();
            assert!(pos.range_m >= 1.0 && pos.range_m <= 100.0);
            assert!((0.0..=PI).contains(&pos.direction.theta));
            assert_eq!(pos.direction.phi, 0.0);
        }
        assert!(seen[1] && seen[2]);
    }

    #[test]
    fn elevated_base_station_looks_down() {
        let p = ChannelParams {
            bs_height_m: 35.0,
            ue_height_m: 1.5,
            min_distance_m: 10.0,
            ..ChannelParams::mono_path()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let uc = generate_user_channel(&mut rng, &p, 100.0).unwrap();
            let pos = uc.position();
            assert!(pos.range_m >= 10.0);
            let want = -(33.5f64).atan2(pos.range_m);
            assert!((pos.direction.phi - want).abs() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_channel() {
        let p = ChannelParams::rural();
        let a = generate_user_channel(&mut ChaCha8Rng::seed_from_u64(9), &p, 100.0).unwrap();
        let b = generate_user_channel(&mut ChaCha8Rng::seed_from_u64(9), &p, 100.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_params_are_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = ChannelParams::rural();
        assert!(matches!(
            generate_user_channel(&mut rng, &p, 0.0),
            Err(Error::InvalidParams(_))
        ));
        let empty = ChannelParams {
            paths_per_cluster: CountRange::new(3, 2),
            ..ChannelParams::rural()
        };
        assert!(generate_user_channel(&mut rng, &empty, 100.0).is_err());
        let zero = ChannelParams {
            num_time_clusters: CountRange::new(0, 0),
            ..ChannelParams::rural()
        };
        assert!(generate_user_channel(&mut rng, &zero, 100.0).is_err());
        let no_carrier = ChannelParams {
            carrier_hz: 0.0,
            ..ChannelParams::rural()
        };
        assert!(generate_user_channel(&mut rng, &no_carrier, 100.0).is_err());
    }

    #[test]
    fn constructor_sorts_strongest_first() {
        let d = Direction::broadside();
        let uc = UserChannel::new(
            vec![
                PathComponent {
                    gain: Complex64::new(0.1, 0.0),
                    direction: d,
                },
                PathComponent {
                    gain: Complex64::new(0.0, -2.0),
                    direction: d,
                },
            ],
            UserPosition {
                range_m: 1.0,
                direction: d,
            },
        )
        .unwrap();
        assert_eq!(uc.los().gain, Complex64::new(0.0, -2.0));
        assert!(UserChannel::new(vec![], uc.position()).is_err());
    }

    #[test]
    fn fspl_at_100m_28ghz() {
        // 20 log10(4 pi * 100 * 28e9 / c)
        let v = free_space_path_loss_db(100.0, 28e9);
        assert!((v - 101.390_944).abs() < 1e-5, "{v}");
    }

    #[test]
    fn single_path_gain_is_m_squared() {
        let cfg = ArrayConfig::half_wavelength(8, 2).unwrap();
        let d = Direction::from_degrees(63.0, -20.0);
        let w = steering_vector(&cfg, d).into_entries();
        let uc = UserChannel::line_of_sight(Complex64::new(1.0, 0.0), d).unwrap();
        let h = channel_vector(&uc, &cfg);
        let m = cfg.elements() as f64;
        assert!((effective_gain(&h, &w).unwrap() - m * m).abs() < 1e-9);

        let alpha = Complex64::new(0.3, -0.4);
        let uc = UserChannel::line_of_sight(alpha, d).unwrap();
        let h = channel_vector(&uc, &cfg);
        let g = effective_gain(&h, &w).unwrap();
        assert!((g - alpha.norm_sqr() * m * m).abs() < 1e-9 * m * m);
    }

    #[test]
    fn second_path_at_null_does_not_leak() {
        // 16-element row: broadside and sin-offset 1/8 are mutual nulls.
        let cfg = ArrayConfig::half_wavelength(16, 1).unwrap();
        let d1 = Direction::broadside();
        let d2 = Direction::new(std::f64::consts::FRAC_PI_2 - (0.125f64).asin(), 0.0);
        assert!(beta_metric(&cfg, d1, d2) < 1e-12);
        let alpha = Complex64::new(0.7, 0.2);
        let uc = UserChannel::new(
            vec![
                PathComponent {
                    gain: alpha,
                    direction: d1,
                },
                PathComponent {
                    gain: alpha,
                    direction: d2,
                },
            ],
            UserPosition {
                range_m: 1.0,
                direction: d1,
            },
        )
        .unwrap();
        let h = channel_vector(&uc, &cfg);
        let w = steering_vector(&cfg, d1).into_entries();
        let m = cfg.elements() as f64;
        let g = effective_gain(&h, &w).unwrap();
        assert!((g - alpha.norm_sqr() * m * m).abs() < 1e-9 * m * m);
    }

    #[test]
    fn effective_gain_checks_lengths_and_scales() {
        let h = vec![Complex64::new(1.0, 2.0); 3];
        let w = vec![Complex64::new(0.5, -1.0); 2];
        assert!(matches!(
            effective_gain(&h, &w),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h: Vec<Complex64> = (0..37)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let w: Vec<Complex64> = (0..37)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        // Reverse-order accumulation as an independent route.
        let (mut re, mut im) = (0.0, 0.0);
        for i in (0..37).rev() {
            re += h[i].re * w[i].re - h[i].im * w[i].im;
            im += h[i].re * w[i].im + h[i].im * w[i].re;
        }
        let brute = re * re + im * im;
        let g = effective_gain(&h, &w).unwrap();
        assert!((g - brute).abs() <= 1e-9 * brute);

        let c = Complex64::new(-2.0, 1.5);
        let hc: Vec<Complex64> = h.iter().map(|x| x * c).collect();
        let gc = effective_gain(&hc, &w).unwrap();
        assert!((gc - c.norm_sqr() * g).abs() <= 1e-9 * gc);
    }
}
