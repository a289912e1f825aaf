//! Optimal OPS heat by search over candidate heats.

use alloc::vec::Vec;

use crate::convert::ops_to_dps;
use crate::instance::OpsInstance;
use crate::oracle::feasibility::{dps_feasible, Feasibility};
use crate::rational::{ceil_u64, floor_u64, int, Rational};
use crate::schedule::{gstar, Schedule};
use crate::schedulers::color_edges;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalHeat {
    pub heat: Rational,
    pub schedule: Schedule,
    /// Number of feasibility probes made.
    pub probes: usize,
}

/// The optimal heat is `g(e)·r` for some edge and integer recurrence, at least
/// `max(G*, max g)` and at most the colour round robin's heat `C·max g`. The sorted
/// candidates are searched from the bottom with doubling steps, then bisected, so that
/// early probes use the smallest frequencies.
pub fn optimal_heat(inst: &OpsInstance, guard: u128) -> Result<OptimalHeat> {
    let gs = gstar(inst)?;
    let max_g = inst.max_growth().expect("gstar checked for edges").clone();
    let lo = if gs > max_g { gs } else { max_g.clone() };
    let colors = color_edges(inst.graph()).num_colors as u64;
    let hi = &max_g * int(colors);
    let mut candidates: Vec<Rational> = Vec::new();
    for g in inst.growth() {
        let from = ceil_u64(&(&lo / g)).ok_or(Error::FrequencyOverflow { edge: 0 })?;
        let to = floor_u64(&(&hi / g)).ok_or(Error::FrequencyOverflow { edge: 0 })?;
        candidates.extend((from..=to).map(|k| g * int(k)));
    }
    candidates.sort();
    candidates.dedup();

    let mut probes = 0;
    let mut probe = |h: &Rational| -> Result<Option<Schedule>> {
        probes += 1;
        match dps_feasible(&ops_to_dps(inst, h)?, guard) {
            Feasibility::Feasible(s) => Ok(Some(s)),
            Feasibility::Infeasible => Ok(None),
            Feasibility::Refused { size, guard } => {
                Err(Error::Refused { what: "feasibility state space", size, limit: guard })
            }
        }
    };
    let last = candidates.len() - 1;
    let mut bad = None;
    let mut i = 0;
    let mut step = 1;
    let mut best = loop {
        if let Some(s) = probe(&candidates[i])? {
            break (i, s);
        }
        if i == last {
            return Err(Error::Internal("the colour round robin heat was found infeasible".into()));
        }
        bad = Some(i);
        i = (i + step).min(last);
        step *= 2;
    };
    let mut lo_bad = bad;
    while lo_bad.map_or(0, |b| b + 1) < best.0 {
        let from = lo_bad.map_or(0, |b| b + 1);
        let mid = from + (best.0 - from) / 2;
        match probe(&candidates[mid])? {
            Some(s) => best = (mid, s),
            None => lo_bad = Some(mid),
        }
    }
    Ok(OptimalHeat { heat: candidates[best.0].clone(), schedule: best.1, probes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_GUARD;
    use crate::rational::ratio;
    use crate::schedule::heat;
    use alloc::vec;

    fn check(inst: &OpsInstance, expected: Rational) {
        let out = optimal_heat(inst, DEFAULT_GUARD).unwrap();
        assert_eq!(out.heat, expected);
        assert!(heat(&out.schedule, inst).unwrap().heat.unwrap() <= expected);
    }

    #[test]
    fn examples() {
        check(&OpsInstance::from_edges(2, &[(0, 1)], vec![ratio(1, 1)]).unwrap(), ratio(1, 1));
        check(&crate::instances::gen_disjoint_stars(2).unwrap(), ratio(1, 1));
        let tri = OpsInstance::from_edges(3, &[(0, 1), (1, 2), (0, 2)], vec![ratio(1, 1); 3]).unwrap();
        check(&tri, ratio(3, 1));
    }

    #[test]
    fn pinwheel_two_three() {
        // g = (1/2, 1/3, 1/6) has G* = 1 but is not schedulable at heat 1
        let star =
            OpsInstance::from_edges(4, &[(0, 1), (0, 2), (0, 3)], vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)]).unwrap();
        let out = optimal_heat(&star, DEFAULT_GUARD).unwrap();
        assert!(out.heat > ratio(1, 1));
        assert_eq!(out.heat, ratio(4, 3));
    }
}
