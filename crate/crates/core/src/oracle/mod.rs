//! Brute-force ground truth for small instances and gadgets.

mod feasibility;
mod local;
mod optimal;

pub use feasibility::{dps_feasible, state_space_size, Feasibility, DEFAULT_GUARD};
pub use local::{enumerate_local_schedules, LocalGadget, DEFAULT_NODE_BUDGET};
pub use optimal::{optimal_heat, OptimalHeat};

/// Colour of a day in a slot-respecting schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotColor {
    Red,
    Blue,
    Green,
    Purple,
}

impl SlotColor {
    pub const ALL: [SlotColor; 4] = [SlotColor::Red, SlotColor::Blue, SlotColor::Green, SlotColor::Purple];

    pub fn name(self) -> &'static str {
        match self {
            SlotColor::Red => "red",
            SlotColor::Blue => "blue",
            SlotColor::Green => "green",
            SlotColor::Purple => "purple",
        }
    }

    /// Slots of this colour repeat with this period.
    pub fn period(self) -> u64 {
        match self {
            SlotColor::Red | SlotColor::Blue => 3,
            SlotColor::Green | SlotColor::Purple => 6,
        }
    }

    /// First day of this colour.
    pub fn offset(self) -> u64 {
        match self {
            SlotColor::Red => 0,
            SlotColor::Blue => 1,
            SlotColor::Green => 2,
            SlotColor::Purple => 5,
        }
    }
}

/// Red on days `≡ 0 (mod 3)`, blue on `≡ 1 (mod 3)`, green on `≡ 2 (mod 6)`, purple on
/// `≡ 5 (mod 6)`. Every day has a colour, so the result is always `Some`.
pub fn slot_color(t: u64) -> Option<SlotColor> {
    Some(match (t % 3, t % 6) {
        (0, _) => SlotColor::Red,
        (1, _) => SlotColor::Blue,
        (_, 2) => SlotColor::Green,
        _ => SlotColor::Purple,
    })
}
