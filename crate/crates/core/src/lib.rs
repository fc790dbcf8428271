//! Link-level simulation of NOMA-enhanced digital beamsteering (DBS) in a
//! downlink mmWave multi-user MIMO cell.
//!
//! The pipeline for one Monte Carlo trial:
//!
//! 1. [`channel`]: drop users and draw sparse multipath channels.
//! 2. [`clustering`]: pair users whose LOS beams interfere (`beta >= beta0`).
//! 3. [`beamforming`]: steer one beam per cluster, split power between clusters.
//! 4. [`link`]: per-user `psi`/`nu`/`zeta`, SINRs and rates.
//! 5. [`power`]: closed-form intra-cluster power allocation (full or angle-only CSI).
//! 6. [`baselines`]: classical DBS, OMA-DBS and conjugate beamforming for comparison.
//!
//! [`harness`] ties the steps into seeded sweeps with CSV output; the
//! `noma-dbs` binary is a thin CLI over it.

pub mod array;
pub mod baselines;
pub mod beamforming;
pub mod channel;
pub mod clustering;
pub mod error;
pub mod harness;
pub mod link;
pub mod power;

pub use array::{array_factor, beamwidth, beta_metric, steering_vector, ArrayConfig, Direction};
pub use baselines::SchemeId;
pub use error::{Error, Result};
