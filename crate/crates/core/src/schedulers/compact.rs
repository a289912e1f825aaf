//! Compaction of an arbitrary schedule into one of period `2C`.

use alloc::vec::Vec;

use crate::graph::EdgeId;
use crate::instance::OpsInstance;
use crate::rational::{int, Rational};
use crate::schedule::{heat, Schedule};
use crate::schedulers::coloring::{color_edges, color_schedule};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compacted {
    pub schedule: Schedule,
    /// Number of colours `C` of the round robin.
    pub colors: usize,
    /// Edges scheduled in the first `C` days of the input.
    pub truncated_edges: Vec<EdgeId>,
    pub heat: Rational,
    pub input_heat: Rational,
}

/// Takes the first `C` days of `arbitrary` and interleaves them with the colour round
/// robin: even days from the truncation, odd days from the colouring. The input's heat
/// is computed treating it as one period.
pub fn compact(inst: &OpsInstance, arbitrary: &[Vec<EdgeId>]) -> Result<Compacted> {
    if inst.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let sa = Schedule::new(arbitrary.to_vec())?;
    let report = heat(&sa, inst)?;
    let Some(input_heat) = report.heat else {
        let edge = report.per_edge.iter().position(|h| h.contribution.is_none()).expect("some edge missing");
        return Err(Error::EdgeNeverScheduled { edge });
    };
    let coloring = color_edges(inst.graph());
    let c = coloring.num_colors;
    if sa.period() < c {
        return Err(Error::ScheduleTooShort { len: sa.period(), needed: c });
    }
    let sc = color_schedule(&coloring);
    let mut days = Vec::with_capacity(2 * c);
    let mut truncated_edges = Vec::new();
    for t in 0..c {
        days.push(sa.days()[t].clone());
        truncated_edges.extend_from_slice(&sa.days()[t]);
        days.push(sc.days()[t].clone());
    }
    truncated_edges.sort_unstable();
    truncated_edges.dedup();
    let schedule = Schedule::new(days)?;
    let h = heat(&schedule, inst)?.heat.expect("the colour classes cover every edge");
    if h > &input_heat * int(4) {
        return Err(Error::Internal(alloc::format!("compacted heat {h} exceeds four times {input_heat}")));
    }
    Ok(Compacted { schedule, colors: c, truncated_edges, heat: h, input_heat })
}
