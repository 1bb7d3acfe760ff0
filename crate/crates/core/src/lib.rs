//! Task-offloading simulator and algorithm library for MEC-assisted
//! ultra-dense IoT networks.
//!
//! The crate is organized around five subsystems:
//!
//! - [`model`]: domain types (tasks, nodes, servers, links, assignments).
//! - [`config`]: scenario configuration, validation, and the TOML file format.
//! - [`env`]: the slotted simulation environment with latency/energy cost
//!   models, server queues, and per-step rewards.
//! - [`opt`]: an exact branch-and-bound solver for the weighted
//!   latency/energy offloading problem and its energy-min variant, plus the
//!   brute-force oracle used to certify it.
//! - [`rl`]: tabular Q-learning (standard and modified updates), epsilon-greedy
//!   selection, and the multi-agent training loop.
//! - [`bench`]: policies, metrics (QoS, reliability, energy, latency), the
//!   Monte Carlo experiment harness, and CSV exports.

pub mod bench;
pub mod config;
pub mod env;
pub mod model;
pub mod opt;
pub mod rl;
pub mod rng;

pub use config::{validate_config, ConfigError, ConfigFile, SystemConfig, ValidatedConfig};
pub use model::{check_assignment, Assignment, EdgeServer, Link, Task, UserNode, Weights};
pub use rng::seeded_rng;
