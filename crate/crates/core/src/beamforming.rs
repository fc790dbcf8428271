//! Beamforming matrix, normalization and the fixed inter-cluster power split.

use num_complex::Complex64;

use crate::array::{steering_vector, ArrayConfig};
use crate::clustering::ClusterSet;

/// How the total transmit power is shared between clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterClusterRule {
    /// Emitted power proportional to the number of users in the cluster.
    #[default]
    Proportional,
    /// Same emitted power for every cluster.
    Uniform,
}

/// Per-cluster beam weights and powers.
///
/// `eta * |w_c|^2 * p_c` is the power emitted toward cluster `c`; with
/// unit-modulus weights `eta * |w_c|^2 = 1 / C`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamformingPlan {
    pub weights: Vec<Vec<Complex64>>,
    pub eta: f64,
    /// `p_c`, the power coefficient fed to the superposition coder.
    pub cluster_powers: Vec<f64>,
    /// `P_c`, the power actually radiated toward each cluster.
    pub emitted_powers: Vec<f64>,
}

impl BeamformingPlan {
    pub fn clusters(&self) -> usize {
        self.weights.len()
    }

    /// `eta * p_c`, the scale applied to `|h w_c|^2`.
    pub fn beam_scale(&self, c: usize) -> f64 {
        self.eta * self.cluster_powers[c]
    }
}

/// Steers one beam per cluster and splits `total_power_w` between clusters.
///
/// With the proportional rule `P_c = K_c P_e / K` and `p_c = K_c C P_e / K`;
/// with the uniform rule `P_c = P_e / C` and `p_c = P_e`.
pub fn build_plan(
    cs: &ClusterSet,
    cfg: &ArrayConfig,
    total_power_w: f64,
    rule: InterClusterRule,
) -> BeamformingPlan {
    assert!(total_power_w > 0.0, "transmit power must be positive");
    let c_total = cs.total() as f64;
    let k_total = cs.user_count() as f64;
    let m = cfg.elements() as f64;
    let eta = 1.0 / (m * c_total);

    let weights = cs
        .clusters
        .iter()
        .map(|cl| steering_vector(cfg, cl.beam_dir).into_entries())
        .collect();
    let (cluster_powers, emitted_powers) = cs
        .clusters
        .iter()
        .map(|cl| {
            let share = match rule {
                InterClusterRule::Proportional => cl.size() as f64 / k_total,
                InterClusterRule::Uniform => 1.0 / c_total,
            };
            (share * c_total * total_power_w, share * total_power_w)
        })
        .unzip();

    BeamformingPlan {
        weights,
        eta,
        cluster_powers,
        emitted_powers,
    }
}

/// `sum_c eta |w_c|^2 p_c`, recomputed from the weights.
pub fn emitted_power_check(plan: &BeamformingPlan) -> f64 {
    plan.weights
        .iter()
        .zip(&plan.cluster_powers)
        .map(|(w, p)| plan.eta * w.iter().map(|x| x.norm_sqr()).sum::<f64>() * p)
        .sum()
}
