use alloc::boxed::Box;
use alloc::string::String;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("edge {edge} is a self-loop")]
    SelfLoop { edge: usize },
    #[error("edge {edge} duplicates edge {first}")]
    ParallelEdge { edge: usize, first: usize },
    #[error("edge {edge} refers to unknown person {person}")]
    UnknownPerson { edge: usize, person: usize },
    #[error("edge {edge} has non-positive growth rate")]
    NonPositiveGrowth { edge: usize },
    #[error("edge {edge} has frequency 0")]
    ZeroFrequency { edge: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown edge index {edge}")]
    UnknownEdge { edge: usize },
    #[error("instance has no edges")]
    NoEdges,
    #[error("schedule period must be positive")]
    EmptySchedule,
    #[error("day {day} is not a matching: edges {a} and {b} share person {person}")]
    NotAMatching { day: usize, a: usize, b: usize, person: usize },
    #[error("target heat {heat} is below the largest growth rate {max_growth}")]
    HeatUnreachable { heat: Box<Rational>, max_growth: Box<Rational> },
    #[error("frequency for edge {edge} does not fit in 64 bits")]
    FrequencyOverflow { edge: usize },
    #[error("horizon must be positive")]
    ZeroHorizon,
    #[error("threshold multiplier must be positive")]
    NonPositiveThreshold,
    #[error("tie order is not a permutation of the edges")]
    InvalidTieOrder,
    #[error("edge {edge} has frequency {frequency}, which is not a power of two")]
    NotPowerOfTwo { edge: usize, frequency: u64 },
    #[error("person {person} has local density {density}, above the limit {limit}")]
    DensityTooHigh { person: usize, density: Box<Rational>, limit: Box<Rational> },
    #[error("schedule has {len} days but {needed} are required")]
    ScheduleTooShort { len: usize, needed: usize },
    #[error("edge {edge} is never scheduled")]
    EdgeNeverScheduled { edge: usize },
    #[error("{what}: {size} exceeds the limit {limit}; use the bounds-only path")]
    Refused { what: &'static str, size: u128, limit: u128 },
    #[error("graph is not a star")]
    NotAStar,
    #[error("complete graph K_{n} needs an odd number of people of at least 3")]
    EvenOrSmallCompleteGraph { n: usize },
    #[error("no instance satisfied the density cap after {attempts} attempts")]
    CapUnachievable { attempts: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("clause {clause} is not satisfied by the assignment")]
    UnsatisfiedClause { clause: usize },
    #[error("internal error: {0}")]
    Internal(String),
}
