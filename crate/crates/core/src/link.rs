//! Per-user link quantities and SINR/rate formulas.
//!
//! For user `l` of cluster `c`:
//!
//! ```text
//! psi  = eta p_c |h w_c|^2                      (own superimposed signal)
//! nu   = sum_{b != c} eta p_b |h w_b|^2 + noise (other beams + noise)
//! zeta = psi / nu
//! ```
//!
//! Every SINR used by the schemes is a function of `zeta` and the intra-cluster
//! split `gamma1`. The closed mono-/multi-path DBS expressions at the end of
//! the module are written directly in steering-vector form and serve as
//! independent checks of the generic pipeline.

use num_complex::Complex64;

use crate::array::{inner, steering_vector, ArrayConfig, Direction};
use crate::beamforming::BeamformingPlan;
use crate::channel::{effective_gain, UserChannel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState {
    pub psi: f64,
    pub nu: f64,
    pub zeta: f64,
}

impl LinkState {
    /// Other-beam interference, `nu - noise`.
    pub fn interference(&self, noise_w: f64) -> f64 {
        self.nu - noise_w
    }
}

/// `|h w_b|^2` for every beam of the plan.
pub fn beam_gains(h: &[Complex64], plan: &BeamformingPlan) -> Vec<f64> {
    plan.weights
        .iter()
        .map(|w| effective_gain(h, w).expect("plan weights match array size"))
        .collect()
}

/// Link state from precomputed per-beam gains `|h w_b|^2`.
pub fn link_state_from_gains(
    gains: &[f64],
    plan: &BeamformingPlan,
    own_cluster: usize,
    noise_w: f64,
) -> LinkState {
    debug_assert!(noise_w > 0.0);
    let psi = plan.beam_scale(own_cluster) * gains[own_cluster];
    let interference: f64 = gains
        .iter()
        .enumerate()
        .filter(|&(b, _)| b != own_cluster)
        .map(|(b, g)| plan.beam_scale(b) * g)
        .sum();
    let nu = interference + noise_w;
    LinkState {
        psi,
        nu,
        zeta: psi / nu,
    }
}

pub fn compute_link_state(
    h: &[Complex64],
    plan: &BeamformingPlan,
    own_cluster: usize,
    noise_w: f64,
) -> LinkState {
    link_state_from_gains(&beam_gains(h, plan), plan, own_cluster, noise_w)
}

/// SINR of a DBS user (the whole beam is its own).
pub fn sinr_dbs(ls: &LinkState) -> f64 {
    ls.zeta
}

/// Strong NOMA user after perfect SIC.
pub fn sinr_noma_strong(ls: &LinkState, gamma1: f64) -> f64 {
    ls.zeta * gamma1
}

/// Weak NOMA user, treating the strong user's share as interference.
pub fn sinr_noma_weak(ls: &LinkState, gamma1: f64) -> f64 {
    weak_sinr(ls.zeta, gamma1)
}

pub(crate) fn weak_sinr(zeta2: f64, gamma1: f64) -> f64 {
    zeta2 * (1.0 - gamma1) / (1.0 + zeta2 * gamma1)
}

/// SIC decodability at the strong user: `(1 - 2 gamma1) >= p_min / zeta1`.
pub fn sic_feasible(zeta1: f64, gamma1: f64, p_min: f64) -> bool {
    1.0 - 2.0 * gamma1 >= p_min / zeta1
}

/// Shannon rate in bit/s.
pub fn rate(sinr: f64, bandwidth_hz: f64) -> f64 {
    bandwidth_hz * sinr.ln_1p() / std::f64::consts::LN_2
}

/// DBS SINR of user `own` when every user has a single LOS path with gain
/// `gains[k]` toward `dirs[k]` and one beam per user.
///
/// `beam_scale` is `eta * p` (equal for all beams) so the noise term reads
/// `noise / (eta p |alpha|^2)`.
pub fn sinr_dbs_monopath_closed(
    gains: &[Complex64],
    dirs: &[Direction],
    own: usize,
    beam_scale: f64,
    noise_w: f64,
    cfg: &ArrayConfig,
) -> f64 {
    let a_own = steering_vector(cfg, dirs[own]);
    let signal = inner(a_own.entries(), a_own.entries()).norm_sqr();
    let interference: f64 = dirs
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != own)
        .map(|(_, &d)| inner(a_own.entries(), steering_vector(cfg, d).entries()).norm_sqr())
        .sum();
    signal / (interference + noise_w / (beam_scale * gains[own].norm_sqr()))
}

/// DBS SINR of user `own` in a multipath drop, beams along each user's LOS
/// path, written in terms of gain ratios to the own LOS gain.
pub fn sinr_dbs_multipath_closed(
    channels: &[UserChannel],
    own: usize,
    beam_scale: f64,
    noise_w: f64,
    cfg: &ArrayConfig,
) -> f64 {
    let paths = channels[own].paths();
    let alpha1 = paths[0].gain;
    let path_vecs: Vec<_> = paths
        .iter()
        .map(|p| (p.gain / alpha1, steering_vector(cfg, p.direction)))
        .collect();
    let projected = |beam: &[Complex64]| -> Complex64 {
        path_vecs
            .iter()
            .map(|(ratio, a_n)| ratio * inner(a_n.entries(), beam))
            .sum()
    };

    let own_beam = steering_vector(cfg, paths[0].direction);
    let signal = projected(own_beam.entries()).norm_sqr();
    let interference: f64 = channels
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != own)
        .map(|(_, ch)| {
            let beam = steering_vector(cfg, ch.los().direction);
            projected(beam.entries()).norm_sqr()
        })
        .sum();
    signal / (interference + noise_w / (beam_scale * alpha1.norm_sqr()))
}
