//! Comparison schemes and the energy-efficiency metric.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::channel::effective_gain;
use crate::clustering::Cluster;
use crate::link::{rate, LinkState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeId {
    /// One steered beam per user.
    Dbs,
    /// Beta-clustered NOMA with full-CSI power allocation.
    NomaDbsFullCsi,
    /// Beta-clustered NOMA with angle-only power allocation.
    NomaDbsPartialCsi,
    /// Beta clusters served with an orthogonal half/half split.
    OmaDbs,
    /// Conjugate (matched-filter) beamforming.
    ConjugateBf,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [
        SchemeId::Dbs,
        SchemeId::NomaDbsFullCsi,
        SchemeId::NomaDbsPartialCsi,
        SchemeId::OmaDbs,
        SchemeId::ConjugateBf,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeId::Dbs => "dbs",
            SchemeId::NomaDbsFullCsi => "noma_dbs_fcsi",
            SchemeId::NomaDbsPartialCsi => "noma_dbs_pcsi",
            SchemeId::OmaDbs => "oma_dbs",
            SchemeId::ConjugateBf => "cb",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                format!(
                    "unknown scheme '{s}' (expected one of: {})",
                    SchemeId::ALL.map(|id| id.as_str()).join(", ")
                )
            })
    }
}

/// OMA service of a beta cluster: a singleton keeps the whole band, a pair
/// splits the degrees of freedom in half, each user transmitting with the
/// full cluster power during its share. `link_states` follows
/// `cluster.members`.
pub fn oma_dbs_rates(cluster: &Cluster, link_states: &[LinkState], bandwidth_hz: f64) -> Vec<f64> {
    assert_eq!(cluster.members.len(), link_states.len());
    match link_states {
        [single] => vec![rate(single.zeta, bandwidth_hz)],
        pair => pair
            .iter()
            .map(|ls| rate(ls.zeta, 0.5 * bandwidth_hz))
            .collect(),
    }
}

/// Matched-filter beamforming: `w_k = h_k^H / |h_k|`, `eta = 1/K`, all users
/// at the full transmit power before normalization.
pub fn conjugate_bf_rates(
    channels: &[Vec<Complex64>],
    total_power_w: f64,
    noise_w: f64,
    bandwidth_hz: f64,
) -> Vec<f64> {
    let k = channels.len();
    if k == 0 {
        return Vec::new();
    }
    let weights: Vec<Vec<Complex64>> = channels
        .iter()
        .map(|h| {
            let norm = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            h.iter().map(|x| x.conj() / norm).collect()
        })
        .collect();
    let scale = total_power_w / k as f64;
    channels
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut signal = 0.0;
            let mut interference = 0.0;
            for (j, w) in weights.iter().enumerate() {
                let g = scale * effective_gain(h, w).expect("equal-length channels");
                if i == j {
                    signal = g;
                } else {
                    interference += g;
                }
            }
            rate(signal / (interference + noise_w), bandwidth_hz)
        })
        .collect()
}

/// Sum rate over total consumed power,
/// `rate / (rho * emitted + M * pa + p0)`, in bit/J.
pub fn energy_efficiency(
    sum_rate_bps: f64,
    emitted_power_w: f64,
    elements: usize,
    rho: f64,
    pa_w: f64,
    p0_w: f64,
) -> f64 {
    sum_rate_bps / (rho * emitted_power_w + elements as f64 * pa_w + p0_w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{steering_vector, ArrayConfig, Direction};
    use crate::beamforming::{build_plan, InterClusterRule};
    use crate::channel::{channel_vector, UserChannel};
    use crate::clustering::ClusterSet;
    use crate::link::{compute_link_state, sinr_dbs};
    use crate::power::{cluster_rate, opa, PaInput};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ls(zeta: f64) -> LinkState {
        LinkState {
            psi: zeta,
            nu: 1.0,
            zeta,
        }
    }

    #[test]
    fn scheme_names_round_trip() {
        for id in SchemeId::ALL {
            assert_eq!(id.as_str().parse::<SchemeId>().unwrap(), id);
        }
        assert!("noma".parse::<SchemeId>().is_err());
    }

    #[test]
    fn oma_singleton_is_dbs_rate() {
        let c = Cluster::singleton(0, Direction::broadside());
        let s = ls(7.0);
        assert_eq!(oma_dbs_rates(&c, &[s], 20e6), vec![rate(sinr_dbs(&s), 20e6)]);
    }

    #[test]
    fn oma_pair_half_dof() {
        let c = Cluster {
            members: vec![0, 1],
            beam_dir: Direction::broadside(),
        };
        let r = oma_dbs_rates(&c, &[ls(3.0), ls(3.0)], 1.0);
        assert!((r[0] - 1.0).abs() < 1e-15 && (r[1] - 1.0).abs() < 1e-15);
        let r = oma_dbs_rates(&c, &[ls(15.0), ls(0.0)], 1.0);
        assert_eq!(r[1], 0.0);
        assert!((r[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cb_single_user_is_matched_filter() {
        let cfg = ArrayConfig::half_wavelength(8, 2).unwrap();
        let uc = UserChannel::line_of_sight(Complex64::new(1e-5, 3e-6), Direction::from_degrees(70.0, -5.0))
            .unwrap();
        let h = channel_vector(&uc, &cfg);
        let noise = 1e-13;
        let r = conjugate_bf_rates(std::slice::from_ref(&h), 1.0, noise, 1.0);
        let snr = h.iter().map(|x| x.norm_sqr()).sum::<f64>() / noise;
        assert!((r[0] - (1.0 + snr).log2()).abs() < 1e-12 * r[0]);
    }

    #[test]
    fn cb_orthogonal_channels_do_not_interfere() {
        let h1 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let h2 = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0)];
        let r = conjugate_bf_rates(&[h1, h2], 2.0, 0.5, 1.0);
        // scale = 1; signals 1 and 4, no interference.
        assert!((r[0] - (1.0f64 + 2.0).log2()).abs() < 1e-12);
        assert!((r[1] - (1.0f64 + 8.0).log2()).abs() < 1e-12);
    }

    #[test]
    fn cb_equals_dbs_for_equal_gain_line_of_sight() {
        let cfg = ArrayConfig::half_wavelength(8, 2).unwrap();
        let dirs = [
            Direction::from_degrees(50.0, -10.0),
            Direction::from_degrees(58.0, -14.0),
            Direction::from_degrees(120.0, -30.0),
        ];
        let alpha = Complex64::from_polar(2e-5, 0.4);
        let chans: Vec<Vec<Complex64>> = dirs
            .iter()
            .map(|&d| channel_vector(&UserChannel::line_of_sight(alpha, d).unwrap(), &cfg))
            .collect();
        let noise = 1e-13;
        let cb = conjugate_bf_rates(&chans, 1.0, noise, 1.0);
        let plan = build_plan(
            &ClusterSet::all_singletons(&dirs),
            &cfg,
            1.0,
            InterClusterRule::Proportional,
        );
        for k in 0..3 {
            let dbs = rate(sinr_dbs(&compute_link_state(&chans[k], &plan, k, noise)), 1.0);
            assert!((cb[k] - dbs).abs() < 1e-9 * dbs, "{} vs {dbs}", cb[k]);
        }
        // Sanity: weights really are the steering vectors up to phase.
        let a = steering_vector(&cfg, dirs[0]);
        let w: Vec<Complex64> = chans[0].iter().map(|x| x.conj()).collect();
        let ratio = w[3] / a.entries()[3];
        for (x, y) in w.iter().zip(a.entries()) {
            assert!((x - y * ratio).norm() < 1e-15);
        }
    }

    #[test]
    fn energy_efficiency_hand_value() {
        let ee = energy_efficiency(2e8, 1.0, 64, 10.0, 1.0, 0.2);
        assert!((ee - 2e8 / 74.2).abs() < 1e-3);
        assert!((ee - 2.6954e6).abs() < 50.0);
        assert_eq!(energy_efficiency(0.0, 1.0, 64, 10.0, 1.0, 0.2), 0.0);
        assert!(energy_efficiency(2e8, 1.0, 128, 10.0, 1.0, 0.2) < ee);
        assert!(energy_efficiency(2e8, 2.0, 64, 10.0, 1.0, 0.2) < ee);
        assert!(energy_efficiency(2e8, 1.0, 64, 11.0, 1.0, 0.2) < ee);
        assert!(energy_efficiency(2e8, 1.0, 64, 10.0, 1.5, 0.2) < ee);
        assert!(energy_efficiency(2e8, 1.0, 64, 10.0, 1.0, 0.3) < ee);
    }

    #[test]
    fn noma_beats_oma_on_most_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = Cluster {
            members: vec![0, 1],
            beam_dir: Direction::broadside(),
        };
        let n = 2000;
        let mut wins = 0;
        for _ in 0..n {
            let z1 = 10f64.powf(rng.random_range(-2.0..3.0));
            let z2 = 10f64.powf(rng.random_range(-2.0..3.0));
            let r = opa(&PaInput {
                zeta1: z1,
                zeta2: z2,
                p_min: 1e-3,
                epsilon: 0.05,
            })
            .unwrap();
            let noma = cluster_rate(z1, z2, r.gamma1);
            let oma: f64 = oma_dbs_rates(&c, &[ls(z1), ls(z2)], 1.0).iter().sum();
            if noma >= oma {
                wins += 1;
            }
        }
        assert!(wins as f64 >= 0.95 * n as f64, "{wins}/{n}");
    }
}
