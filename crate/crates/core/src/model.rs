//! Domain types shared by the environment, the solver, and the learners.

use thiserror::Error;

/// Venue index 0 always denotes local execution; servers occupy 1..=M.
pub const LOCAL_VENUE: usize = 0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("task {id}: data_size_bits must be positive")]
    ZeroDataSize { id: u64 },
    #[error("task {id}: cycles_per_bit must be positive")]
    ZeroCyclesPerBit { id: u64 },
    #[error("task {id}: data_size_bits * cycles_per_bit overflows u64")]
    CyclesOverflow { id: u64 },
    #[error("weights must sum to phi (w_a={w_a} + w_b={w_b} != phi={phi})")]
    WeightSum { w_a: u32, w_b: u32, phi: u32 },
    #[error("phi must be positive")]
    ZeroPhi,
}

/// One unit of computation: `data_size_bits` of input, `cycles_per_bit`
/// CPU cycles needed per bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Task {
    pub id: u64,
    /// Index of the user node that generated the task.
    pub owner: usize,
    pub data_size_bits: u64,
    pub cycles_per_bit: u64,
    pub arrival_slot: u64,
}

impl Task {
    pub fn new(
        id: u64,
        owner: usize,
        data_size_bits: u64,
        cycles_per_bit: u64,
        arrival_slot: u64,
    ) -> Result<Self, ModelError> {
        if data_size_bits == 0 {
            return Err(ModelError::ZeroDataSize { id });
        }
        if cycles_per_bit == 0 {
            return Err(ModelError::ZeroCyclesPerBit { id });
        }
        if data_size_bits.checked_mul(cycles_per_bit).is_none() {
            return Err(ModelError::CyclesOverflow { id });
        }
        Ok(Self {
            id,
            owner,
            data_size_bits,
            cycles_per_bit,
            arrival_slot,
        })
    }

    /// Total CPU demand of the task in cycles.
    pub fn total_cycles(&self) -> u64 {
        self.data_size_bits * self.cycles_per_bit
    }
}

/// An end device: a local processor plus an uplink transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserNode {
    pub id: usize,
    /// Local processor speed in cycles/s.
    pub cpu_rate_hz: f64,
    /// Transmit power in watts.
    pub tx_power_w: f64,
    /// Maximum number of tasks admitted to the local execution queue.
    pub local_queue_capacity: usize,
    /// Effective switched capacitance of the local chip (J*s^2/cycle^3).
    pub kappa_local: f64,
}

/// An edge server co-located with a base station. Ids are 1-based because
/// venue 0 is reserved for local execution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeServer {
    pub id: usize,
    pub cpu_rate_hz: f64,
    /// Cycle backlog a server is willing to hold; admission above this is
    /// filtered by `valid_decisions` and the optimizer's capacity constraint.
    pub capacity_cycles: f64,
    /// Hard queue-length limit; dispatching into a full queue drops the task.
    pub queue_limit: usize,
    pub kappa_server: f64,
}

/// An uplink between a user and a server, modeled as a configurable rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub user: usize,
    pub server: usize,
    pub rate_bps: f64,
}

/// Integer importance weights for latency (`w_a`) and energy (`w_b`),
/// summing to `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Weights {
    pub w_a: u32,
    pub w_b: u32,
    pub phi: u32,
}

impl Weights {
    pub fn new(w_a: u32, w_b: u32, phi: u32) -> Result<Self, ModelError> {
        if phi == 0 {
            return Err(ModelError::ZeroPhi);
        }
        if w_a + w_b != phi {
            return Err(ModelError::WeightSum { w_a, w_b, phi });
        }
        Ok(Self { w_a, w_b, phi })
    }
}

impl Default for Weights {
    /// Equal importance of latency and energy.
    fn default() -> Self {
        Self {
            w_a: 5,
            w_b: 5,
            phi: 10,
        }
    }
}

/// The offloading decision: one venue per task. Storing a venue index per
/// task makes the one-hot row property of the paper-style decision matrix
/// structural rather than checked.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    pub venues: Vec<usize>,
}

impl Assignment {
    pub fn new(venues: Vec<usize>) -> Self {
        Self { venues }
    }

    pub fn len(&self) -> usize {
        self.venues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.venues.is_empty()
    }
}

/// True iff every venue is in `{0, 1, ..., num_servers}`.
pub fn check_assignment(assignment: &Assignment, num_servers: usize) -> bool {
    assignment.venues.iter().all(|&v| v <= num_servers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn task_rejects_zero_fields() {
        assert_eq!(
            Task::new(1, 0, 0, 10, 0),
            Err(ModelError::ZeroDataSize { id: 1 })
        );
        assert_eq!(
            Task::new(2, 0, 10, 0, 0),
            Err(ModelError::ZeroCyclesPerBit { id: 2 })
        );
    }

    #[test]
    fn task_rejects_cycle_overflow() {
        assert_eq!(
            Task::new(3, 0, u64::MAX / 2, 3, 0),
            Err(ModelError::CyclesOverflow { id: 3 })
        );
        let t = Task::new(4, 0, 1_000_000_000, 10, 0).unwrap();
        assert_eq!(t.total_cycles(), 10_000_000_000);
    }

    #[test]
    fn weights_must_sum_to_phi() {
        assert!(Weights::new(3, 2, 5).is_ok());
        assert_eq!(
            Weights::new(3, 3, 5),
            Err(ModelError::WeightSum {
                w_a: 3,
                w_b: 3,
                phi: 5
            })
        );
    }

    #[test]
    fn assignment_check_examples() {
        assert!(check_assignment(&Assignment::new(vec![0, 3, 1]), 5));
        assert!(!check_assignment(&Assignment::new(vec![6]), 5));
        assert!(check_assignment(&Assignment::new(vec![]), 5));
    }
}
