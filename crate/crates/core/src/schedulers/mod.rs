//! Schedulers for OPS and DPS instances.

mod coloring;
mod compact;
mod polygreedy;
mod reduce_fastest;

pub use coloring::{color_edges, color_schedule, EdgeColoring};
pub use compact::{compact, Compacted};
pub use polygreedy::{polygreedy, round_down_to_powers_of_two, schedule_low_density};
pub use reduce_fastest::{default_horizon, reduce_fastest, RfConfig, RfTrace};
