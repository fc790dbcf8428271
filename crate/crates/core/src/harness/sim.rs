//! Seeded Monte Carlo trials and sweeps.
//!
//! Every `(K, trial)` pair owns a random stream seeded by
//! [`trial_seed`]; all schemes evaluated for that pair see the same user
//! drop, so scheme comparisons are paired.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::array::Direction;
use crate::baselines::{conjugate_bf_rates, energy_efficiency, oma_dbs_rates, SchemeId};
use crate::beamforming::{build_plan, emitted_power_check};
use crate::channel::{channel_vector, generate_user_channel, UserChannel};
use crate::clustering::{beta_uc, order_cluster_users, ClusterSet};
use crate::error::Result;
use crate::link::{beam_gains, link_state_from_gains, rate, sinr_dbs, sinr_noma_strong, sinr_noma_weak};
use crate::power::{opa_or_deactivate, opa_partial_csi, PaInput, PaResult};

use super::config::ScenarioConfig;

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the stream for `(users, trial)`:
/// `splitmix64(master ^ splitmix64(users << 32 | trial))`.
pub fn trial_seed(master_seed: u64, users: usize, trial: usize) -> u64 {
    splitmix64(master_seed ^ splitmix64(((users as u64) << 32) | (trial as u64 & 0xFFFF_FFFF)))
}

/// One realization of the cell: user channels and their LOS directions.
#[derive(Debug, Clone)]
pub struct UserDrop {
    pub channels: Vec<UserChannel>,
    pub vectors: Vec<Vec<Complex64>>,
    pub los: Vec<Direction>,
}

pub fn draw_users(config: &ScenarioConfig, users: usize, trial: usize) -> Result<UserDrop> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.master_seed, users, trial));
    let channels = (0..users)
        .map(|_| generate_user_channel(&mut rng, &config.channel, config.cell_radius_m))
        .collect::<Result<Vec<_>>>()?;
    let vectors = channels
        .iter()
        .map(|c| channel_vector(c, &config.array))
        .collect();
    let los = channels.iter().map(|c| c.los().direction).collect();
    Ok(UserDrop {
        channels,
        vectors,
        los,
    })
}

/// Outcome of one scheme on one drop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeOutcome {
    pub sum_rate_bps: f64,
    pub emitted_power_w: f64,
    pub noma_clusters: usize,
    pub deactivated_users: usize,
    /// NOMA clusters whose SIC constraint had no feasible split.
    pub sic_fallbacks: usize,
}

/// Clustered schemes: DBS (all singletons), NOMA-DBS with full or partial
/// CSI, and OMA-DBS.
fn evaluate_clustered(
    config: &ScenarioConfig,
    drop: &UserDrop,
    cs: &ClusterSet,
    scheme: SchemeId,
) -> SchemeOutcome {
    let cfg = &config.array;
    let bw = config.bandwidth_hz;
    let noise = config.noise_w();
    let plan = build_plan(cs, cfg, config.total_power_w(), config.inter_cluster_rule);
    let owner = cs.cluster_of_users();
    let gains: Vec<Vec<f64>> = drop.vectors.iter().map(|h| beam_gains(h, &plan)).collect();

    let mut sum_rate = 0.0;
    let mut deactivated = 0;
    let mut fallbacks = 0;
    for (c, cluster) in cs.clusters.iter().enumerate() {
        if !cluster.is_noma() {
            let u = cluster.members[0];
            let ls = link_state_from_gains(&gains[u], &plan, owner[u], noise);
            sum_rate += rate(sinr_dbs(&ls), bw);
            continue;
        }
        let received: Vec<f64> = cluster.members.iter().map(|&u| gains[u][c]).collect();
        let ordered = order_cluster_users(cluster, &received);
        let (strong, weak) = (ordered.members[0], ordered.members[1]);
        let ls_strong = link_state_from_gains(&gains[strong], &plan, c, noise);
        let ls_weak = link_state_from_gains(&gains[weak], &plan, c, noise);

        let pa = match scheme {
            SchemeId::OmaDbs => {
                sum_rate += oma_dbs_rates(&ordered, &[ls_strong, ls_weak], bw)
                    .iter()
                    .sum::<f64>();
                continue;
            }
            SchemeId::NomaDbsFullCsi => {
                let (pa, fell_back) = opa_or_deactivate(&PaInput {
                    zeta1: ls_strong.zeta,
                    zeta2: ls_weak.zeta,
                    p_min: config.p_min,
                    epsilon: config.epsilon,
                });
                fallbacks += fell_back as usize;
                pa
            }
            SchemeId::NomaDbsPartialCsi => opa_partial_csi(
                drop.los[strong],
                drop.los[weak],
                &plan,
                c,
                cfg,
                config.p_min,
                config.epsilon,
                noise,
            )
            .unwrap_or_else(|_| {
                fallbacks += 1;
                PaResult::deactivate()
            }),
            SchemeId::Dbs | SchemeId::ConjugateBf => {
                unreachable!("{scheme} never forms NOMA clusters")
            }
        };
        if pa.gamma1 == 0.0 {
            deactivated += 1;
        }
        sum_rate += rate(sinr_noma_strong(&ls_strong, pa.gamma1), bw)
            + rate(sinr_noma_weak(&ls_weak, pa.gamma1), bw);
    }

    SchemeOutcome {
        sum_rate_bps: sum_rate,
        emitted_power_w: emitted_power_check(&plan),
        noma_clusters: cs.noma_count,
        deactivated_users: deactivated,
        sic_fallbacks: fallbacks,
    }
}

/// Clusters shared by the beta-clustered schemes.
pub fn beta_clusters(config: &ScenarioConfig, drop: &UserDrop) -> ClusterSet {
    beta_uc(&drop.los, &config.array, config.beta0)
}

pub fn evaluate_scheme(
    config: &ScenarioConfig,
    drop: &UserDrop,
    scheme: SchemeId,
    clusters: Option<&ClusterSet>,
) -> SchemeOutcome {
    match scheme {
        SchemeId::Dbs => {
            evaluate_clustered(config, drop, &ClusterSet::all_singletons(&drop.los), scheme)
        }
        SchemeId::ConjugateBf => {
            let rates = conjugate_bf_rates(
                &drop.vectors,
                config.total_power_w(),
                config.noise_w(),
                config.bandwidth_hz,
            );
            SchemeOutcome {
                sum_rate_bps: rates.iter().sum(),
                emitted_power_w: config.total_power_w(),
                noma_clusters: 0,
                deactivated_users: 0,
                sic_fallbacks: 0,
            }
        }
        _ => match clusters {
            Some(cs) => evaluate_clustered(config, drop, cs, scheme),
            None => evaluate_clustered(config, drop, &beta_clusters(config, drop), scheme),
        },
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub scheme: SchemeId,
    pub users: usize,
    pub trial: usize,
    pub sum_rate_bps: f64,
    pub spectral_eff_bps_per_hz: f64,
    pub energy_eff_bps_per_j: f64,
    pub noma_cluster_count: usize,
    pub deactivated_user_count: usize,
    pub sic_fallbacks: usize,
    pub emitted_power_w: f64,
}

fn to_result(
    config: &ScenarioConfig,
    users: usize,
    trial: usize,
    scheme: SchemeId,
    out: SchemeOutcome,
) -> ScenarioResult {
    ScenarioResult {
        scheme,
        users,
        trial,
        sum_rate_bps: out.sum_rate_bps,
        spectral_eff_bps_per_hz: out.sum_rate_bps / config.bandwidth_hz,
        energy_eff_bps_per_j: energy_efficiency(
            out.sum_rate_bps,
            out.emitted_power_w,
            config.array.elements(),
            config.rho,
            config.pa_w,
            config.p0_w,
        ),
        noma_cluster_count: out.noma_clusters,
        deactivated_user_count: out.deactivated_users,
        sic_fallbacks: out.sic_fallbacks,
        emitted_power_w: out.emitted_power_w,
    }
}

/// Full pipeline for one scheme on the drop of `(users, trial)`.
pub fn run_trial(
    config: &ScenarioConfig,
    users: usize,
    trial: usize,
    scheme: SchemeId,
) -> Result<ScenarioResult> {
    let drop = draw_users(config, users, trial)?;
    let out = evaluate_scheme(config, &drop, scheme, None);
    Ok(to_result(config, users, trial, scheme, out))
}

/// Mean and standard error per `(scheme, K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub scheme: SchemeId,
    pub users: usize,
    pub trials: usize,
    pub mean_spectral_eff: f64,
    pub se_spectral_eff: f64,
    pub mean_energy_eff: f64,
    pub se_energy_eff: f64,
    pub mean_noma_clusters: f64,
    pub mean_deactivated: f64,
    pub sic_fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<ScenarioResult>,
    pub aggregates: Vec<Aggregate>,
}

impl SweepResult {
    pub fn aggregate(&self, scheme: SchemeId, users: usize) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.scheme == scheme && a.users == users)
    }
}

fn mean_and_se(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn aggregate(rows: &[ScenarioResult], schemes: &[SchemeId], users: &[usize]) -> Vec<Aggregate> {
    let mut out = Vec::new();
    for &scheme in schemes {
        for &k in users {
            let sel: Vec<&ScenarioResult> = rows
                .iter()
                .filter(|r| r.scheme == scheme && r.users == k)
                .collect();
            if sel.is_empty() {
                continue;
            }
            let n = sel.len() as f64;
            let (mean_se, se_se) = mean_and_se(sel.iter().map(|r| r.spectral_eff_bps_per_hz));
            let (mean_ee, se_ee) = mean_and_se(sel.iter().map(|r| r.energy_eff_bps_per_j));
            out.push(Aggregate {
                scheme,
                users: k,
                trials: sel.len(),
                mean_spectral_eff: mean_se,
                se_spectral_eff: se_se,
                mean_energy_eff: mean_ee,
                se_energy_eff: se_ee,
                mean_noma_clusters: sel.iter().map(|r| r.noma_cluster_count as f64).sum::<f64>() / n,
                mean_deactivated: sel.iter().map(|r| r.deactivated_user_count as f64).sum::<f64>()
                    / n,
                sic_fallbacks: sel.iter().map(|r| r.sic_fallbacks).sum(),
            });
        }
    }
    out
}

/// Runs every `(K, trial)` drop in parallel and evaluates all active schemes
/// on it. Rows come back sorted by scheme (config order), then `K`, then
/// trial, independent of thread scheduling.
pub fn run_sweep(config: &ScenarioConfig) -> Result<SweepResult> {
    config.validate()?;
    let schemes = config.active_schemes();
    let jobs: Vec<(usize, usize)> = config
        .user_counts
        .iter()
        .flat_map(|&k| (0..config.trials).map(move |t| (k, t)))
        .collect();

    let per_job: Vec<Vec<ScenarioResult>> = jobs
        .par_iter()
        .map(|&(k, t)| {
            let drop = draw_users(config, k, t)?;
            let clusters = beta_clusters(config, &drop);
            Ok(schemes
                .iter()
                .map(|&s| {
                    let out = evaluate_scheme(config, &drop, s, Some(&clusters));
                    to_result(config, k, t, s, out)
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut rows: Vec<ScenarioResult> = per_job.into_iter().flatten().collect();
    let scheme_rank = |s: SchemeId| schemes.iter().position(|&x| x == s).unwrap_or(usize::MAX);
    let user_rank = |k: usize| config.user_counts.iter().position(|&x| x == k).unwrap_or(usize::MAX);
    rows.sort_by_key(|r| (scheme_rank(r.scheme), user_rank(r.users), r.trial));
    rows.dedup_by(|a, b| a.scheme == b.scheme && a.users == b.users && a.trial == b.trial);

    let aggregates = aggregate(&rows, &schemes, &config.user_counts);
    Ok(SweepResult { rows, aggregates })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ScenarioConfig {
        ScenarioConfig {
            user_counts: vec![1, 6],
            trials: 4,
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn seeds_differ_across_trials_and_user_counts() {
        let a = trial_seed(1, 5, 0);
        assert_ne!(a, trial_seed(1, 5, 1));
        assert_ne!(a, trial_seed(1, 6, 0));
        assert_ne!(a, trial_seed(2, 5, 0));
        assert_eq!(a, trial_seed(1, 5, 0));
    }

    #[test]
    fn single_user_is_noise_limited() {
        let cfg = small_config();
        for scheme in SchemeId::ALL {
            let r = run_trial(&cfg, 1, 0, scheme).unwrap();
            assert_eq!(r.noma_cluster_count, 0);
            assert!(r.sum_rate_bps > 0.0);
        }
        let dbs = run_trial(&cfg, 1, 0, SchemeId::Dbs).unwrap();
        let noma = run_trial(&cfg, 1, 0, SchemeId::NomaDbsFullCsi).unwrap();
        assert_eq!(dbs.sum_rate_bps, noma.sum_rate_bps);
    }

    #[test]
    fn trial_and_sweep_agree() {
        let cfg = small_config();
        let sweep = run_sweep(&cfg).unwrap();
        assert_eq!(sweep.rows.len(), 2 * 4 * SchemeId::ALL.len());
        for row in &sweep.rows {
            let single = run_trial(&cfg, row.users, row.trial, row.scheme).unwrap();
            assert_eq!(&single, row);
        }
    }

    #[test]
    fn one_trial_one_scheme_one_row() {
        let cfg = ScenarioConfig {
            user_counts: vec![10],
            trials: 1,
            schemes: vec![SchemeId::Dbs],
            ..ScenarioConfig::default()
        };
        let sweep = run_sweep(&cfg).unwrap();
        assert_eq!(sweep.rows.len(), 1);
        assert_eq!(sweep.aggregates.len(), 1);
        assert_eq!(sweep.aggregates[0].se_spectral_eff, 0.0);
    }

    #[test]
    fn mean_and_standard_error() {
        let (m, se) = mean_and_se([1.0, 2.0, 3.0, 4.0].into_iter());
        assert_eq!(m, 2.5);
        // sample variance 5/3, se = sqrt(5/12)
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }
}
