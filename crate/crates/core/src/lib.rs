//! Phase-locking and synchronization of two qubits under Lindblad dynamics
//! with normal Lindblad operators.

pub mod analysis;
pub mod attractors;
pub mod error;
pub mod liouvillian;
pub mod mechanisms;
pub mod operators;
pub mod scenario;

pub use error::{Error, Result};
