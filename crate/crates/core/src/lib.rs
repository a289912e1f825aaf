//! Polyamorous scheduling.
//!
//! A polycule is a simple graph of people whose edges are relationships. Each day a
//! matching of relationships is scheduled. In the optimisation variant (OPS) every edge
//! has a growth rate and the goal is to keep the heat, growth rate times recurrence time,
//! low. In the decision variant (DPS) every edge has an integer frequency that its
//! recurrence time must not exceed.
//!
//! The crate is `no_std` and needs only `alloc`. All arithmetic on growth rates, heats
//! and densities is exact.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod convert;
pub mod density;
pub mod error;
pub mod graph;
pub mod instance;
pub mod instances;
pub mod oracle;
pub mod rational;
pub mod reduction;
pub mod schedule;
pub mod schedulers;

pub use error::Error;
pub use graph::{Edge, EdgeId, Graph, PersonId};
pub use instance::{DpsInstance, OpsInstance};
pub use rational::Rational;
pub use schedule::{HeatReport, Recurrence, Schedule, Violation};

pub type Result<T, E = Error> = core::result::Result<T, E>;
