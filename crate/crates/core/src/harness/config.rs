//! Scenario configuration and its flat `key = value` file format.
//!
//! One key per line, `#` starts a comment, blank lines are ignored. Unknown
//! or repeated keys are errors. Lists are comma separated; integer and real
//! intervals are written `min,max` (a single value means `min = max`).

use std::collections::HashSet;
use std::path::Path;

use crate::array::ArrayConfig;
use crate::baselines::SchemeId;
use crate::beamforming::InterClusterRule;
use crate::channel::{ChannelParams, CountRange, Interval};
use crate::error::{Error, Result};

/// Which NOMA-DBS power-allocation variants a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CsiMode {
    Full,
    Partial,
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub array: ArrayConfig,
    pub bandwidth_hz: f64,
    pub cell_radius_m: f64,
    pub total_power_dbm: f64,
    pub noise_power_dbm: f64,
    /// SIC threshold, dimensionless after noise normalization.
    pub p_min: f64,
    pub beta0: f64,
    pub epsilon: f64,
    pub channel: ChannelParams,
    pub user_counts: Vec<usize>,
    pub schemes: Vec<SchemeId>,
    pub trials: usize,
    pub master_seed: u64,
    pub inter_cluster_rule: InterClusterRule,
    pub csi_mode: CsiMode,
    /// Power-amplifier inefficiency.
    pub rho: f64,
    /// Per-antenna circuit power.
    pub pa_w: f64,
    /// Static base-station power.
    pub p0_w: f64,
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            array: ArrayConfig::half_wavelength(32, 2).expect("valid default array"),
            bandwidth_hz: 20e6,
            cell_radius_m: 100.0,
            total_power_dbm: 30.0,
            noise_power_dbm: -100.9178,
            p_min: 1e-3,
            beta0: 0.5,
            epsilon: 0.05,
            channel: ChannelParams::rural(),
            user_counts: (1..=11).map(|i| 5 * i).collect(),
            schemes: SchemeId::ALL.to_vec(),
            trials: 500,
            master_seed: 2021,
            inter_cluster_rule: InterClusterRule::Proportional,
            csi_mode: CsiMode::Both,
            rho: 10.0,
            pa_w: 1.0,
            p0_w: 0.2,
        }
    }
}

impl ScenarioConfig {
    pub fn total_power_w(&self) -> f64 {
        dbm_to_watts(self.total_power_dbm)
    }

    pub fn noise_w(&self) -> f64 {
        dbm_to_watts(self.noise_power_dbm)
    }

    /// Schemes after applying the CSI-mode filter.
    pub fn active_schemes(&self) -> Vec<SchemeId> {
        self.schemes
            .iter()
            .copied()
            .filter(|s| match (self.csi_mode, s) {
                (CsiMode::Full, SchemeId::NomaDbsPartialCsi) => false,
                (CsiMode::Partial, SchemeId::NomaDbsFullCsi) => false,
                _ => true,
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidScenario(m));
        let m = self.array.elements();
        if self.user_counts.is_empty() {
            return bad("user_counts is empty".into());
        }
        if let Some(&k) = self.user_counts.iter().find(|&&k| k == 0 || k >= m) {
            return bad(format!("user count {k} must satisfy 1 <= K < M = {m}"));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.active_schemes().is_empty() {
            return bad("no schemes selected".into());
        }
        if !(self.beta0 > 0.0 && self.beta0 < 1.0) {
            return bad(format!("beta0 must lie in (0, 1), got {}", self.beta0));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0, 1), got {}", self.epsilon));
        }
        if !(self.p_min >= 0.0) {
            return bad(format!("p_min must be non-negative, got {}", self.p_min));
        }
        if !(self.bandwidth_hz > 0.0) {
            return bad(format!("bandwidth must be positive, got {}", self.bandwidth_hz));
        }
        if !(self.total_power_dbm.is_finite() && self.noise_power_dbm.is_finite()) {
            return bad("power levels must be finite".into());
        }
        if !(self.rho >= 1.0 && self.pa_w >= 0.0 && self.p0_w >= 0.0) {
            return bad("require rho >= 1, pa_w >= 0, p0_w >= 0".into());
        }
        self.channel.validate(self.cell_radius_m)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigRead {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Parses a config over the defaults and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        let (mut m_h, mut m_v, mut spacing) =
            (cfg.array.m_h(), cfg.array.m_v(), cfg.array.d_over_lambda());

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config { line, msg };
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{content}'")))?;
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(err(format!("duplicate key '{key}'")));
            }
            let real = || {
                value
                    .parse::<f64>()
                    .map_err(|_| err(format!("'{key}' expects a number, got '{value}'")))
            };
            let int = || {
                value
                    .parse::<u64>()
                    .map_err(|_| err(format!("'{key}' expects an integer, got '{value}'")))
            };
            let list = || -> Result<Vec<&str>> {
                let items: Vec<&str> = value.split(',').map(str::trim).collect();
                if items.iter().any(|s| s.is_empty()) {
                    return Err(err(format!("'{key}' has an empty list item")));
                }
                Ok(items)
            };
            let count_range = || -> Result<CountRange> {
                let items = list()?;
                let nums = items
                    .iter()
                    .map(|s| s.parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(format!("'{key}' expects integers, got '{value}'")))?;
                match nums[..] {
                    [a] => Ok(CountRange::new(a, a)),
                    [a, b] => Ok(CountRange::new(a, b)),
                    _ => Err(err(format!("'{key}' expects 'min,max'"))),
                }
            };
            let interval = || -> Result<Interval> {
                let items = list()?;
                let nums = items
                    .iter()
                    .map(|s| s.parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| err(format!("'{key}' expects numbers, got '{value}'")))?;
                match nums[..] {
                    [a] => Ok(Interval::new(a, a)),
                    [a, b] => Ok(Interval::new(a, b)),
                    _ => Err(err(format!("'{key}' expects 'min,max'"))),
                }
            };

            match key {
                "m_h" => m_h = int()? as usize,
                "m_v" => m_v = int()? as usize,
                "d_over_lambda" => spacing = real()?,
                "carrier_hz" => cfg.channel.carrier_hz = real()?,
                "bandwidth_hz" => cfg.bandwidth_hz = real()?,
                "cell_radius_m" => cfg.cell_radius_m = real()?,
                "total_power_dbm" => cfg.total_power_dbm = real()?,
                "noise_power_dbm" => cfg.noise_power_dbm = real()?,
                "p_min" => cfg.p_min = real()?,
                "beta0" => cfg.beta0 = real()?,
                "epsilon" => cfg.epsilon = real()?,
                "num_time_clusters" => cfg.channel.num_time_clusters = count_range()?,
                "paths_per_cluster" => cfg.channel.paths_per_cluster = count_range()?,
                "nlos_gain_offset_db" => cfg.channel.nlos_gain_offset_db = interval()?,
                "angle_spread_deg" => cfg.channel.angle_spread_deg = real()?,
                "shadowing_sigma_db" => cfg.channel.shadowing_sigma_db = real()?,
                "bs_height_m" => cfg.channel.bs_height_m = real()?,
                "ue_height_m" => cfg.channel.ue_height_m = real()?,
                "min_distance_m" => cfg.channel.min_distance_m = real()?,
                "user_counts" => {
                    cfg.user_counts = list()?
                        .iter()
                        .map(|s| s.parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| err(format!("'user_counts' expects integers, got '{value}'")))?
                }
                "schemes" => {
                    cfg.schemes = list()?
                        .iter()
                        .map(|s| s.parse::<SchemeId>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(err)?
                }
                "trials" => cfg.trials = int()? as usize,
                "master_seed" => cfg.master_seed = int()?,
                "inter_cluster_rule" => {
                    cfg.inter_cluster_rule = match value {
                        "proportional" => InterClusterRule::Proportional,
                        "uniform" => InterClusterRule::Uniform,
                        _ => {
                            return Err(err(format!(
                                "inter_cluster_rule must be 'proportional' or 'uniform', got '{value}'"
                            )))
                        }
                    }
                }
                "csi_mode" => {
                    cfg.csi_mode = match value {
                        "full" => CsiMode::Full,
                        "partial" => CsiMode::Partial,
                        "both" => CsiMode::Both,
                        _ => {
                            return Err(err(format!(
                                "csi_mode must be 'full', 'partial' or 'both', got '{value}'"
                            )))
                        }
                    }
                }
                "rho" => cfg.rho = real()?,
                "pa_w" => cfg.pa_w = real()?,
                "p0_w" => cfg.p0_w = real()?,
                _ => return Err(err(format!("unknown key '{key}'"))),
            }
        }

        cfg.array = ArrayConfig::new(m_h, m_v, spacing)?;
        cfg.validate()?;
        Ok(cfg)
    }
}
