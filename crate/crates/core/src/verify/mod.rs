//! The three theorem checkers: breakdown of the replication contract under
//! linear extension, the no-signalling dichotomy on Alice's reduced state,
//! and the entanglement-eigenvalue gap. Every closed-form quantity is
//! cross-checked against a brute-force tensor construction, and one
//! explicit basis-state copier shows the orthogonal regime working.

mod condition;
mod demo;
mod entanglement;
mod grid;
mod linearity;
mod resource;
mod signalling;

pub use condition::{classify_existence_condition, ConditionClass, CLASS_ZERO_TOL};
pub use demo::{demo_orthogonal_replication, demo_superposition_fidelity, ReplicationDemoReport};
pub use entanglement::{verify_entanglement_conservation, EntanglementReport};
pub use grid::{GridPoint, GridSpec};
pub use linearity::{
    verify_linearity, LinearityReport, LinearityVerdict, SuperpositionSpec, LINEARITY_TOL,
};
pub use resource::{
    build_entangled_resource, reduced_alice_after, reduced_alice_before, registry_with,
    AliceReduced, EntangledResource,
};
pub use signalling::{verify_no_signalling, SignallingReport, BOUNDARY_TOL};
