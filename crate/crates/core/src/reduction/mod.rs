//! 3-SAT to bipartite DPS reduction: compiler, witness schedules and checks.

mod build;
mod cnf;
pub mod lemmas;
mod structure;
mod witness;

pub use build::{build_polycule, EdgeRole, ExpectedColor, GadgetGraph, GadgetTag, Sex};
pub use cnf::{parse_dimacs, Assignment, CnfFormula, Lit};
pub use lemmas::{verify_gadget_lemmas, LemmaCase};
pub use structure::{check_structure, node_budget, sex_counts, StructureReport, NODES_BASE, NODES_PER_UNIT};
pub use witness::{is_slot_respecting, slot_violations, witness_schedule, WITNESS_PERIOD};
