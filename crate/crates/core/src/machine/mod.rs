//! The self-replicating-machine model: parametrized input qubits, abstract
//! program/control factors defined by declared overlaps, machine
//! configurations, and the formal one-step replication transformation.
//!
//! Program and control states are never constructed as concrete circuits;
//! only their pairwise inner products enter any derived quantity, so they
//! live in an [`OverlapRegistry`] and are realized into vectors on demand
//! for the numeric cross-checks.

mod config;
mod param;
mod registry;

pub use config::{branch_overlap_after, Branch, MachineConfiguration, ReplicationOutput};
pub use param::{state_overlap, DataQubit, ParamQubit, PARAM_TOL};
pub use registry::{Label, OverlapRegistry};
