//! Intra-cluster power allocation for two-user NOMA clusters.
//!
//! With the inter-cluster split fixed, the cluster sum rate (per Hz)
//!
//! ```text
//! R_c(g) = log2(1 + z1 g) + log2(1 + z2 (1 - g) / (1 + z2 g))
//! ```
//!
//! is monotone in the strong user's share `g`, increasing iff `z1 > z2`. The
//! optimum therefore sits on an end of the feasible interval `[0, g_hat]`,
//! except when both users see almost the same `zeta`, where the rate is nearly
//! flat and the rate-equalizing split is used instead.

use crate::array::{steering_vector, ArrayConfig, Direction};
use crate::beamforming::BeamformingPlan;
use crate::channel::effective_gain;
use crate::error::{Error, Result};
use crate::link::weak_sinr;

/// Partial-CSI interference below this fraction of the own-beam term counts
/// as vanished.
const DEGENERATE_NU_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaInput {
    pub zeta1: f64,
    pub zeta2: f64,
    pub p_min: f64,
    /// Relative rate-difference threshold below which the fair split is used.
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaBranch {
    Fair,
    UpperEndpoint,
    Deactivate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaResult {
    pub gamma1: f64,
    pub gamma2: f64,
    pub branch: PaBranch,
}

impl PaResult {
    fn with_gamma1(gamma1: f64, branch: PaBranch) -> Self {
        Self {
            gamma1,
            gamma2: 1.0 - gamma1,
            branch,
        }
    }

    /// All power to the weak user.
    pub fn deactivate() -> Self {
        Self::with_gamma1(0.0, PaBranch::Deactivate)
    }
}

/// Upper end of the feasible interval, `(1 - p_min / zeta1) / 2`.
pub fn gamma_hat(zeta1: f64, p_min: f64) -> Result<f64> {
    let ratio = p_min / zeta1;
    if ratio > 1.0 {
        return Err(Error::InfeasibleSic { ratio });
    }
    Ok((0.5 * (1.0 - ratio)).max(0.0))
}

/// Split at which both users get the same rate: the positive root of
/// `z1 z2 g^2 + (z1 + z2) g - z2 = 0`, in cancellation-free form.
pub fn gamma_fair(zeta1: f64, zeta2: f64) -> f64 {
    let s = zeta1 + zeta2;
    let disc = (s * s + 4.0 * zeta1 * zeta2 * zeta2).sqrt();
    2.0 * zeta2 / (s + disc)
}

/// Cluster sum rate per Hz at strong-user share `gamma1`.
pub fn cluster_rate(zeta1: f64, zeta2: f64, gamma1: f64) -> f64 {
    (zeta1 * gamma1).ln_1p() / std::f64::consts::LN_2
        + weak_sinr(zeta2, gamma1).ln_1p() / std::f64::consts::LN_2
}

/// `dR_c / dgamma1` per Hz:
/// `(z1 - z2) / (ln 2 (1 + z1 g)(1 + z2 g))`.
pub fn rc_derivative(zeta1: f64, zeta2: f64, gamma1: f64) -> f64 {
    (zeta1 - zeta2)
        / (std::f64::consts::LN_2 * (1.0 + zeta1 * gamma1) * (1.0 + zeta2 * gamma1))
}

/// Closed-form optimal split.
///
/// The fair split is clipped to the feasible interval so the SIC constraint
/// holds on every non-deactivating branch.
pub fn opa(input: &PaInput) -> Result<PaResult> {
    let PaInput {
        zeta1,
        zeta2,
        p_min,
        epsilon,
    } = *input;
    let r1 = zeta1.ln_1p();
    let r2 = zeta2.ln_1p();
    if ((r1 - r2) / r1).abs() < epsilon {
        let hat = gamma_hat(zeta1, p_min)?;
        Ok(PaResult::with_gamma1(
            gamma_fair(zeta1, zeta2).min(hat),
            PaBranch::Fair,
        ))
    } else if zeta2 <= zeta1 {
        Ok(PaResult::with_gamma1(
            gamma_hat(zeta1, p_min)?,
            PaBranch::UpperEndpoint,
        ))
    } else {
        Ok(PaResult::deactivate())
    }
}

/// `opa`, with an infeasible SIC constraint resolved by deactivating the
/// strong user. The flag reports whether the fallback fired.
pub fn opa_or_deactivate(input: &PaInput) -> (PaResult, bool) {
    match opa(input) {
        Ok(r) => (r, false),
        Err(_) => (PaResult::deactivate(), true),
    }
}

/// `(psi, nu)` of the partial-CSI ratio: beam powers seen along the LOS
/// steering vector only, without noise.
fn partial_terms(
    los_dir: Direction,
    plan: &BeamformingPlan,
    own_cluster: usize,
    cfg: &ArrayConfig,
) -> (f64, f64) {
    // a^H w is the row a^H times w; feed the conjugated entries as `h`.
    let a: Vec<_> = steering_vector(cfg, los_dir)
        .into_entries()
        .into_iter()
        .map(|x| x.conj())
        .collect();
    let mut psi = 0.0;
    let mut nu = 0.0;
    for (b, w) in plan.weights.iter().enumerate() {
        let g = plan.beam_scale(b) * effective_gain(&a, w).expect("plan matches array");
        if b == own_cluster {
            psi = g;
        } else {
            nu += g;
        }
    }
    (psi, nu)
}

/// Angle-only `zeta`: own-beam over other-beam power along the user's LOS
/// steering vector. Fails when the other-beam term vanishes (single cluster or
/// an exact pattern null).
pub fn partial_csi_zeta(
    los_dir: Direction,
    plan: &BeamformingPlan,
    own_cluster: usize,
    cfg: &ArrayConfig,
) -> Result<f64> {
    let (psi, nu) = partial_terms(los_dir, plan, own_cluster, cfg);
    if plan.clusters() == 1 || nu <= DEGENERATE_NU_RATIO * psi {
        return Err(Error::DegenerateInterference { nu });
    }
    Ok(psi / nu)
}

/// [`partial_csi_zeta`], adding the noise floor to the denominator when the
/// other-beam term vanishes.
pub fn partial_csi_zeta_floored(
    los_dir: Direction,
    plan: &BeamformingPlan,
    own_cluster: usize,
    cfg: &ArrayConfig,
    noise_w: f64,
) -> f64 {
    match partial_csi_zeta(los_dir, plan, own_cluster, cfg) {
        Ok(z) => z,
        Err(_) => {
            let (psi, nu) = partial_terms(los_dir, plan, own_cluster, cfg);
            psi / (nu + noise_w)
        }
    }
}

/// OPA driven by angle-only ratios. The strong/weak roles are fixed by the
/// caller from fed-back received powers.
#[allow(clippy::too_many_arguments)]
pub fn opa_partial_csi(
    strong_los: Direction,
    weak_los: Direction,
    plan: &BeamformingPlan,
    own_cluster: usize,
    cfg: &ArrayConfig,
    p_min: f64,
    epsilon: f64,
    noise_w: f64,
) -> Result<PaResult> {
    let zeta1 = partial_csi_zeta_floored(strong_los, plan, own_cluster, cfg, noise_w);
    let zeta2 = partial_csi_zeta_floored(weak_los, plan, own_cluster, cfg, noise_w);
    opa(&PaInput {
        zeta1,
        zeta2,
        p_min,
        epsilon,
    })
}
