//! Finite-dimensional quantum mechanics over explicit tensor layouts, a
//! formal model of self-replicating machines, and numeric verifiers for the
//! no-go arguments against replicating unknown quantum states: linearity,
//! no-signalling, and entanglement conservation under local steps.
//!
//! Everything is dense, double-precision, and sized for desk-scale spaces
//! (a hard cap of 2^20 composite dimensions). All public values are
//! immutable after construction and all operations are pure functions, so
//! the whole API is safe to drive from multiple threads.

pub mod error;
pub mod linalg;
pub mod machine;
pub mod verify;

pub use error::{Error, ErrorCategory, Result};
