//! Scenario configuration: the TOML file format, validation, and derived
//! domain objects.
//!
//! The config file has four sections: `[system]`, `[costs]`, `[rl]`, and
//! `[sweep]`. Keys match the domain-type field names; unknown keys are a hard
//! error. Every field has a documented default, so an empty file is a valid
//! scenario.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{EdgeServer, Link, UserNode, Weights};
use crate::opt::QueueModel;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid config:\n{}", violations.join("\n"))]
    Invalid { violations: Vec<String> },
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SystemSection {
    pub num_users: usize,
    pub num_servers: usize,
    pub tasks_per_user_max: usize,
    /// Mean Poisson task arrivals per user per slot.
    pub arrival_rate_lambda: f64,
    pub slots_per_episode: usize,
    pub slot_duration_s: f64,
    pub seed: u64,
    /// Recorded in reports; no behavioral effect (no PHY model).
    pub carrier_freq_hz: f64,
    /// QoS deadline; the drop penalty defaults to twice this value.
    pub latency_bound_s: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        Self {
            num_users: 50,
            num_servers: 5,
            tasks_per_user_max: 10,
            arrival_rate_lambda: 0.25,
            slots_per_episode: 60,
            slot_duration_s: 1.0,
            seed: 42,
            carrier_freq_hz: 5e9,
            latency_bound_s: 50.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct CostsSection {
    pub data_size_bits: u64,
    pub cycles_per_bit: u64,
    pub link_rate_bps: f64,
    pub server_cpu_rate_hz: f64,
    pub local_cpu_rate_hz: f64,
    pub tx_power_w: f64,
    pub kappa_local: f64,
    pub kappa_server: f64,
    pub capacity_cycles: f64,
    pub queue_limit: usize,
    pub local_queue_capacity: usize,
    /// Latency-equivalent penalty charged as reward for a dropped task.
    /// `0.0` means "derive as 2 * latency_bound_s".
    pub drop_penalty_s: f64,
    pub w_a: u32,
    pub w_b: u32,
    pub phi: u32,
    pub optimizer_queue_model: QueueModel,
    /// When true the optimizer weighs baseline-normalized latency/energy
    /// instead of raw values. The raw form is canonical.
    pub normalize_costs: bool,
}

impl Default for CostsSection {
    fn default() -> Self {
        Self {
            data_size_bits: 1_000_000_000,
            cycles_per_bit: 10,
            link_rate_bps: 1e8,
            server_cpu_rate_hz: 5e10,
            local_cpu_rate_hz: 1e9,
            tx_power_w: 0.25,
            kappa_local: 1e-27,
            kappa_server: 1e-33,
            capacity_cycles: 1e10,
            queue_limit: 1000,
            local_queue_capacity: 1,
            drop_penalty_s: 0.0,
            w_a: 5,
            w_b: 5,
            phi: 10,
            optimizer_queue_model: QueueModel::Independent,
            normalize_costs: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RlSection {
    /// Learning rate in (0, 1].
    pub delta: f64,
    /// Discount factor in [0, 1).
    pub beta: f64,
    /// Exploration probability in [0, 1].
    pub epsilon: f64,
    pub episodes: usize,
    pub monte_carlo_runs: usize,
    /// State discretization levels per load dimension (>= 2).
    pub load_buckets: usize,
    /// Use the modified update (exploration weight tau + reward retention)
    /// instead of the standard one.
    pub use_modified: bool,
    /// Linearly decay epsilon to 0.01 over the episodes.
    pub epsilon_decay: bool,
}

impl Default for RlSection {
    fn default() -> Self {
        Self {
            delta: 0.5,
            beta: 0.6,
            epsilon: 0.1,
            episodes: 20,
            monte_carlo_runs: 20,
            load_buckets: 4,
            use_modified: true,
            epsilon_decay: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    /// Node counts for the density sweep, ascending.
    pub node_counts: Vec<usize>,
    /// Policy names; see the bench module for the valid set.
    pub policies: Vec<String>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            node_counts: (1..=10).map(|i| i * 10).collect(),
            policies: vec![
                "local_only".into(),
                "optimized".into(),
                "rl_offload".into(),
                "rl_least_load".into(),
            ],
        }
    }
}

/// The on-disk representation. Serialization is deterministic, so
/// serialize -> parse -> serialize is byte-identical.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    pub system: SystemSection,
    pub costs: CostsSection,
    pub rl: RlSection,
    pub sweep: SweepSection,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serialization cannot fail")
    }
}

/// Tabular Q-learning hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RLParams {
    pub delta: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub episodes: usize,
    pub monte_carlo_runs: usize,
    pub load_buckets: usize,
    pub use_modified: bool,
    pub epsilon_decay: bool,
}

/// A full scenario description, pre-validation.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub num_users: usize,
    pub num_servers: usize,
    pub tasks_per_user_max: usize,
    pub arrival_rate_lambda: f64,
    pub slots_per_episode: usize,
    pub slot_duration_s: f64,
    pub seed: u64,
    pub carrier_freq_hz: f64,
    pub latency_bound_s: f64,
    pub data_size_bits: u64,
    pub cycles_per_bit: u64,
    pub link_rate_bps: f64,
    pub server_cpu_rate_hz: f64,
    pub local_cpu_rate_hz: f64,
    pub tx_power_w: f64,
    pub kappa_local: f64,
    pub kappa_server: f64,
    pub capacity_cycles: f64,
    pub queue_limit: usize,
    pub local_queue_capacity: usize,
    pub drop_penalty_s: f64,
    pub weights: Weights,
    pub optimizer_queue_model: QueueModel,
    pub normalize_costs: bool,
    pub rl: RLParams,
}

impl SystemConfig {
    pub fn from_file(file: &ConfigFile) -> Self {
        let s = &file.system;
        let c = &file.costs;
        let r = &file.rl;
        let drop_penalty_s = if c.drop_penalty_s > 0.0 {
            c.drop_penalty_s
        } else {
            2.0 * s.latency_bound_s
        };
        Self {
            num_users: s.num_users,
            num_servers: s.num_servers,
            tasks_per_user_max: s.tasks_per_user_max,
            arrival_rate_lambda: s.arrival_rate_lambda,
            slots_per_episode: s.slots_per_episode,
            slot_duration_s: s.slot_duration_s,
            seed: s.seed,
            carrier_freq_hz: s.carrier_freq_hz,
            latency_bound_s: s.latency_bound_s,
            data_size_bits: c.data_size_bits,
            cycles_per_bit: c.cycles_per_bit,
            link_rate_bps: c.link_rate_bps,
            server_cpu_rate_hz: c.server_cpu_rate_hz,
            local_cpu_rate_hz: c.local_cpu_rate_hz,
            tx_power_w: c.tx_power_w,
            kappa_local: c.kappa_local,
            kappa_server: c.kappa_server,
            capacity_cycles: c.capacity_cycles,
            queue_limit: c.queue_limit,
            local_queue_capacity: c.local_queue_capacity,
            drop_penalty_s,
            weights: Weights {
                w_a: c.w_a,
                w_b: c.w_b,
                phi: c.phi,
            },
            optimizer_queue_model: c.optimizer_queue_model,
            normalize_costs: c.normalize_costs,
            rl: RLParams {
                delta: r.delta,
                beta: r.beta,
                epsilon: r.epsilon,
                episodes: r.episodes,
                monte_carlo_runs: r.monte_carlo_runs,
                load_buckets: r.load_buckets,
                use_modified: r.use_modified,
                epsilon_decay: r.epsilon_decay,
            },
        }
    }
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self::from_file(&ConfigFile::default())
    }
}

/// A config whose invariants have all been checked.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig(SystemConfig);

impl std::ops::Deref for ValidatedConfig {
    type Target = SystemConfig;
    fn deref(&self) -> &SystemConfig {
        &self.0
    }
}

impl ValidatedConfig {
    /// Re-validates a config that differs from a validated one only in
    /// `num_users` (the sweep axis).
    pub fn with_num_users(&self, num_users: usize) -> Result<ValidatedConfig, ConfigError> {
        let mut raw = self.0.clone();
        raw.num_users = num_users;
        validate_config(raw)
    }

    pub fn with_seed(&self, seed: u64) -> ValidatedConfig {
        let mut raw = self.0.clone();
        raw.seed = seed;
        ValidatedConfig(raw)
    }

    pub fn with_use_modified(&self, use_modified: bool) -> ValidatedConfig {
        let mut raw = self.0.clone();
        raw.rl.use_modified = use_modified;
        ValidatedConfig(raw)
    }

    pub fn user_node(&self, id: usize) -> UserNode {
        UserNode {
            id,
            cpu_rate_hz: self.local_cpu_rate_hz,
            tx_power_w: self.tx_power_w,
            local_queue_capacity: self.local_queue_capacity,
            kappa_local: self.kappa_local,
        }
    }

    /// Server ids are 1-based (venue 0 is local).
    pub fn edge_server(&self, id: usize) -> EdgeServer {
        EdgeServer {
            id,
            cpu_rate_hz: self.server_cpu_rate_hz,
            capacity_cycles: self.capacity_cycles,
            queue_limit: self.queue_limit,
            kappa_server: self.kappa_server,
        }
    }

    pub fn link(&self, user: usize, server: usize) -> Link {
        Link {
            user,
            server,
            rate_bps: self.link_rate_bps,
        }
    }

    pub fn task_cycles(&self) -> u64 {
        self.data_size_bits * self.cycles_per_bit
    }

    /// Analytic all-local baseline latency: D*S / f_local.
    pub fn local_baseline_latency_s(&self) -> f64 {
        self.task_cycles() as f64 / self.local_cpu_rate_hz
    }

    /// Analytic all-local baseline energy: kappa * D*S * f_local^2.
    pub fn local_baseline_energy_j(&self) -> f64 {
        self.kappa_local * self.task_cycles() as f64 * self.local_cpu_rate_hz.powi(2)
    }
}

fn check(violations: &mut Vec<String>, ok: bool, field: &str, message: &str) {
    if !ok {
        violations.push(format!("{field}: {message}"));
    }
}

/// Checks every invariant and reports all violations, not just the first.
pub fn validate_config(raw: SystemConfig) -> Result<ValidatedConfig, ConfigError> {
    let mut v = Vec::new();

    check(
        &mut v,
        (1..=10_000).contains(&raw.num_users),
        "num_users",
        "must be in [1, 10000]",
    );
    check(&mut v, raw.num_servers >= 1, "num_servers", "must be >= 1");
    check(
        &mut v,
        raw.tasks_per_user_max >= 1,
        "tasks_per_user_max",
        "must be >= 1",
    );
    check(
        &mut v,
        raw.arrival_rate_lambda > 0.0 && raw.arrival_rate_lambda.is_finite(),
        "arrival_rate_lambda",
        "must be a positive real",
    );
    check(
        &mut v,
        raw.slots_per_episode >= 1,
        "slots_per_episode",
        "must be >= 1",
    );
    check(
        &mut v,
        raw.slot_duration_s > 0.0 && raw.slot_duration_s.is_finite(),
        "slot_duration_s",
        "must be a positive real",
    );
    check(
        &mut v,
        raw.carrier_freq_hz > 0.0 && raw.carrier_freq_hz.is_finite(),
        "carrier_freq_hz",
        "must be a positive real",
    );
    check(
        &mut v,
        raw.latency_bound_s > 0.0 && raw.latency_bound_s.is_finite(),
        "latency_bound_s",
        "must be a positive real",
    );
    check(
        &mut v,
        raw.data_size_bits > 0,
        "data_size_bits",
        "must be positive",
    );
    check(
        &mut v,
        raw.cycles_per_bit > 0,
        "cycles_per_bit",
        "must be positive",
    );
    check(
        &mut v,
        raw.data_size_bits.checked_mul(raw.cycles_per_bit).is_some(),
        "cycles_per_bit",
        "data_size_bits * cycles_per_bit overflows u64",
    );
    for (name, value) in [
        ("link_rate_bps", raw.link_rate_bps),
        ("server_cpu_rate_hz", raw.server_cpu_rate_hz),
        ("local_cpu_rate_hz", raw.local_cpu_rate_hz),
        ("tx_power_w", raw.tx_power_w),
        ("kappa_local", raw.kappa_local),
        ("capacity_cycles", raw.capacity_cycles),
        ("drop_penalty_s", raw.drop_penalty_s),
    ] {
        check(
            &mut v,
            value > 0.0 && value.is_finite(),
            name,
            "must be a positive real",
        );
    }
    check(
        &mut v,
        raw.kappa_server >= 0.0 && raw.kappa_server.is_finite(),
        "kappa_server",
        "must be a non-negative real",
    );
    check(&mut v, raw.queue_limit >= 1, "queue_limit", "must be >= 1");
    check(
        &mut v,
        raw.local_queue_capacity >= 1,
        "local_queue_capacity",
        "must be >= 1",
    );
    check(&mut v, raw.weights.phi > 0, "phi", "must be positive");
    check(
        &mut v,
        raw.weights.w_a + raw.weights.w_b == raw.weights.phi,
        "w_a",
        "weights must sum to phi",
    );
    check(
        &mut v,
        raw.rl.delta > 0.0 && raw.rl.delta <= 1.0,
        "delta",
        "delta out of (0,1]",
    );
    check(
        &mut v,
        (0.0..1.0).contains(&raw.rl.beta),
        "beta",
        "beta out of [0,1)",
    );
    check(
        &mut v,
        (0.0..=1.0).contains(&raw.rl.epsilon),
        "epsilon",
        "epsilon out of [0,1]",
    );
    check(&mut v, raw.rl.episodes >= 1, "episodes", "must be >= 1");
    check(
        &mut v,
        raw.rl.monte_carlo_runs >= 1,
        "monte_carlo_runs",
        "must be >= 1",
    );
    check(
        &mut v,
        raw.rl.load_buckets >= 2,
        "load_buckets",
        "must be >= 2",
    );

    if v.is_empty() {
        Ok(ValidatedConfig(raw))
    } else {
        Err(ConfigError::Invalid { violations: v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = SystemConfig::default();
        assert_eq!(cfg.num_servers, 5);
        assert!(validate_config(cfg).is_ok());
    }

    #[test]
    fn default_scenario_with_fifty_users_is_valid() {
        let mut cfg = SystemConfig::default();
        cfg.num_users = 50;
        assert!(validate_config(cfg).is_ok());
    }

    #[test]
    fn weight_mismatch_is_reported_by_name() {
        let mut cfg = SystemConfig::default();
        cfg.weights = Weights {
            w_a: 3,
            w_b: 3,
            phi: 5,
        };
        let err = validate_config(cfg).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("weights must sum to phi"), "{text}");
    }

    #[test]
    fn epsilon_out_of_range_is_reported() {
        let mut cfg = SystemConfig::default();
        cfg.rl.epsilon = 1.2;
        let err = validate_config(cfg).unwrap_err();
        assert!(err.to_string().contains("epsilon out of [0,1]"));
    }

    #[test]
    fn all_violations_are_collected() {
        let mut cfg = SystemConfig::default();
        cfg.rl.epsilon = 1.2;
        cfg.weights.w_b = 99;
        cfg.link_rate_bps = -1.0;
        match validate_config(cfg) {
            Err(ConfigError::Invalid { violations }) => assert_eq!(violations.len(), 3),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = ConfigFile::parse("[system]\nnum_users = 5\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn config_roundtrip_is_byte_identical() {
        let file = ConfigFile::default();
        let s1 = file.to_toml_string();
        let parsed = ConfigFile::parse(&s1).unwrap();
        let s2 = parsed.to_toml_string();
        assert_eq!(s1, s2);
        assert_eq!(file, parsed);
    }

    #[test]
    fn drop_penalty_defaults_to_twice_latency_bound() {
        let cfg = SystemConfig::default();
        assert_eq!(cfg.drop_penalty_s, 2.0 * cfg.latency_bound_s);
    }
}
