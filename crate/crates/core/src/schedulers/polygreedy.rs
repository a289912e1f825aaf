//! PolyGreedy for power-of-two frequencies, and the density-1/4 scheduler built on it.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::EdgeId;
use crate::instance::DpsInstance;
use crate::rational::ratio;
use crate::schedule::{local_density, Schedule};
use crate::{Error, Result};

fn check_density(inst: &DpsInstance, limit: crate::Rational) -> Result<()> {
    let d = local_density(inst);
    if d.max > limit {
        return Err(Error::DensityTooHigh {
            person: d.argmax.expect("positive density has a person"),
            density: Box::new(d.max),
            limit: Box::new(limit),
        });
    }
    Ok(())
}

/// Requires every frequency to be a power of two and every local density at most 1/2.
/// Edges are taken by increasing frequency; each goes to its first conflict-free day and
/// repeats every `f_e` days. The period is the largest frequency.
pub fn polygreedy(inst: &DpsInstance) -> Result<Schedule> {
    for (edge, &frequency) in inst.freq().iter().enumerate() {
        if !frequency.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { edge, frequency });
        }
    }
    check_density(inst, ratio(1, 2))?;
    let Some(period) = inst.max_frequency() else {
        return Schedule::new(vec![Vec::new()]);
    };
    let period = period as usize;
    let graph = inst.graph();
    let mut busy = vec![vec![false; period]; graph.num_people()];
    let mut days: Vec<Vec<EdgeId>> = vec![Vec::new(); period];
    let mut order: Vec<EdgeId> = (0..inst.num_edges()).collect();
    order.sort_by_key(|&e| (inst.f(e), e));
    for e in order {
        let edge = graph.edges()[e];
        let f = inst.f(e) as usize;
        let free = |busy: &Vec<Vec<bool>>, t: usize| !busy[edge.u][t] && !busy[edge.v][t];
        let s = (0..period)
            .find(|&t| free(&busy, t))
            .ok_or_else(|| Error::Internal(alloc::format!("no conflict-free slot for edge {e}")))?;
        let base = s % f;
        for t in (base..period).step_by(f) {
            if !free(&busy, t) {
                return Err(Error::Internal(alloc::format!("slot {s} for edge {e} conflicts on day {t}")));
            }
            busy[edge.u][t] = true;
            busy[edge.v][t] = true;
            days[t].push(e);
        }
    }
    Schedule::new(days)
}

/// Rounds every frequency down to a power of two and runs [`polygreedy`]; requires local
/// density at most 1/4. The result is valid for the original frequencies.
pub fn schedule_low_density(inst: &DpsInstance) -> Result<Schedule> {
    check_density(inst, ratio(1, 4))?;
    polygreedy(&round_down_to_powers_of_two(inst))
}

/// Same graph with every frequency replaced by the largest power of two not above it.
pub fn round_down_to_powers_of_two(inst: &DpsInstance) -> DpsInstance {
    let rounded: Vec<u64> = inst.freq().iter().map(|&f| 1u64 << (63 - f.leading_zeros())).collect();
    DpsInstance::new(inst.graph().clone(), rounded).expect("powers of two are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{validate_dps, Recurrence};

    #[test]
    fn star_four_four() {
        let s = polygreedy(&DpsInstance::star(&[4, 4]).unwrap()).unwrap();
        assert_eq!(s.days(), &[vec![0], vec![1], vec![], vec![]]);
    }

    #[test]
    fn rejects_hypotheses() {
        let dense = DpsInstance::star(&[2, 4, 8, 8]).unwrap();
        assert!(matches!(polygreedy(&dense), Err(Error::DensityTooHigh { person: 0, .. })));
        let odd = DpsInstance::star(&[4, 6]).unwrap();
        assert_eq!(polygreedy(&odd), Err(Error::NotPowerOfTwo { edge: 1, frequency: 6 }));
    }

    #[test]
    fn path_exact_recurrence() {
        let path = DpsInstance::from_edges(4, &[(0, 1), (1, 2), (2, 3)], vec![4, 4, 4]).unwrap();
        let s = polygreedy(&path).unwrap();
        assert_eq!(s.period(), 4);
        assert!(validate_dps(&s, &path).is_empty());
        assert_eq!(s.recurrences(3).unwrap(), vec![Recurrence::Finite(4); 3]);
    }

    #[test]
    fn low_density_examples() {
        let refused = DpsInstance::star(&[5, 9]).unwrap();
        assert!(matches!(schedule_low_density(&refused), Err(Error::DensityTooHigh { .. })));
        let ok = DpsInstance::star(&[8, 12]).unwrap();
        let s = schedule_low_density(&ok).unwrap();
        assert_eq!(s.period(), 8);
        assert!(validate_dps(&s, &ok).is_empty());
        // density 1/3 is above the threshold even though rounding would work
        let single = DpsInstance::star(&[3]).unwrap();
        assert!(matches!(schedule_low_density(&single), Err(Error::DensityTooHigh { .. })));
        let rounded = round_down_to_powers_of_two(&single);
        assert_eq!(rounded.freq(), &[2]);
        let s = polygreedy(&rounded).unwrap();
        assert_eq!(s.period(), 2);
        assert!(validate_dps(&s, &single).is_empty());
    }
}
