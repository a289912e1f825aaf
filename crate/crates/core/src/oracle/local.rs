//! Exhaustive enumeration of periodic local schedules of a gadget.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::EdgeId;
use crate::instance::DpsInstance;
use crate::oracle::{slot_color, SlotColor};
use crate::schedule::Schedule;
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// A gadget cut out of a polycule. Only `constrained` people are limited to one edge per
/// day; the others stand for the rest of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGadget {
    pub dps: DpsInstance,
    pub constrained: Vec<bool>,
    pub names: Vec<String>,
}

impl LocalGadget {
    pub fn edge_named(&self, name: &str) -> Option<EdgeId> {
        self.names.iter().position(|n| n == name)
    }
}

struct Search<'a> {
    period: usize,
    freq: Vec<usize>,
    conflicts: Vec<u64>,
    allowed: Vec<u64>,
    groups: Vec<Vec<EdgeId>>,
    first: Vec<Option<usize>>,
    last: Vec<Option<usize>>,
    days: Vec<u64>,
    out: &'a mut Vec<Schedule>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn need(&self, e: EdgeId) -> usize {
        let f = self.freq[e];
        match (self.first[e], self.last[e]) {
            (Some(first), Some(last)) => {
                let target = first + self.period - f;
                if last >= target {
                    0
                } else {
                    (target - last).div_ceil(f)
                }
            }
            _ => self.period.div_ceil(f),
        }
    }

    fn has_room(&self, t: usize) -> bool {
        let remaining = self.period - 1 - t;
        (0..self.freq.len()).all(|e| self.need(e) <= remaining)
            && self.groups.iter().all(|g| g.iter().map(|&e| self.need(e)).sum::<usize>() <= remaining)
    }

    fn day(&mut self, t: usize) -> Result<()> {
        if t == self.period {
            let ok = (0..self.freq.len()).all(|e| match (self.first[e], self.last[e]) {
                (Some(f), Some(l)) => f + self.period - l <= self.freq[e],
                _ => false,
            });
            if ok {
                let days = self
                    .days
                    .iter()
                    .map(|&mask| (0..self.freq.len()).filter(|&e| mask >> e & 1 == 1).collect())
                    .collect();
                self.out.push(Schedule::new(days).expect("period is positive"));
            }
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Refused {
                what: "local schedule search nodes",
                size: self.nodes as u128,
                limit: self.budget as u128,
            });
        }
        let mut due = 0u64;
        for e in 0..self.freq.len() {
            let is_due = match self.last[e] {
                Some(l) => t - l == self.freq[e],
                None => t + 1 == self.freq[e],
            };
            if is_due {
                due |= 1 << e;
            }
        }
        if due & !self.allowed[t] != 0 {
            return Ok(());
        }
        let mut blocked = 0u64;
        for e in 0..self.freq.len() {
            if due >> e & 1 == 1 {
                if self.conflicts[e] & due != 0 {
                    return Ok(());
                }
                blocked |= self.conflicts[e];
            }
        }
        let optional: Vec<EdgeId> =
            (0..self.freq.len()).filter(|&e| (self.allowed[t] & !due & !blocked) >> e & 1 == 1).collect();
        self.choose(t, due, &optional, 0)
    }

    fn choose(&mut self, t: usize, mask: u64, optional: &[EdgeId], i: usize) -> Result<()> {
        if i == optional.len() {
            return self.commit(t, mask);
        }
        let e = optional[i];
        if self.conflicts[e] & mask == 0 {
            self.choose(t, mask | 1 << e, optional, i + 1)?;
        }
        self.choose(t, mask, optional, i + 1)
    }

    fn commit(&mut self, t: usize, mask: u64) -> Result<()> {
        let saved: Vec<(EdgeId, Option<usize>, Option<usize>)> =
            (0..self.freq.len()).filter(|&e| mask >> e & 1 == 1).map(|e| (e, self.first[e], self.last[e])).collect();
        for &(e, _, _) in &saved {
            self.first[e].get_or_insert(t);
            self.last[e] = Some(t);
        }
        self.days.push(mask);
        let result = if self.has_room(t) { self.day(t + 1) } else { Ok(()) };
        self.days.pop();
        for (e, f, l) in saved {
            self.first[e] = f;
            self.last[e] = l;
        }
        result
    }
}

/// Every schedule of length `period`, read periodically, in which constrained people see
/// at most one edge per day, every edge meets its frequency, and each pinned edge only
/// uses slots of its allowed colours. Schedules are returned in search order.
pub fn enumerate_local_schedules(
    gadget: &LocalGadget,
    pins: &[(EdgeId, Vec<SlotColor>)],
    period: usize,
    budget: u64,
) -> Result<Vec<Schedule>> {
    let inst = &gadget.dps;
    let m = inst.num_edges();
    if m > 64 {
        return Err(Error::Refused { what: "gadget edges", size: m as u128, limit: 64 });
    }
    if gadget.constrained.len() != inst.graph().num_people() {
        return Err(Error::LengthMismatch { expected: inst.graph().num_people(), got: gadget.constrained.len() });
    }
    if period == 0 || !period.is_multiple_of(6) || inst.freq().iter().any(|&f| !(period as u64).is_multiple_of(f)) {
        return Err(Error::InvalidParameter(alloc::format!(
            "period {period} must be a multiple of 6 and of every frequency"
        )));
    }
    let mut conflicts = vec![0u64; m];
    let mut groups = Vec::new();
    for (p, &c) in gadget.constrained.iter().enumerate() {
        if !c {
            continue;
        }
        let inc = inst.graph().incident(p);
        for &a in inc {
            for &b in inc {
                if a != b {
                    conflicts[a] |= 1 << b;
                }
            }
        }
        groups.push(inc.to_vec());
    }
    let mut allowed = vec![u64::MAX >> (64 - m.max(1)); period];
    for (e, colors) in pins {
        if *e >= m {
            return Err(Error::UnknownEdge { edge: *e });
        }
        for (t, slot) in allowed.iter_mut().enumerate() {
            let c = slot_color(t as u64).expect("every day has a colour");
            if !colors.contains(&c) {
                *slot &= !(1 << e);
            }
        }
    }
    let mut out = Vec::new();
    let mut search = Search {
        period,
        freq: inst.freq().iter().map(|&f| f as usize).collect(),
        conflicts,
        allowed,
        groups,
        first: vec![None; m],
        last: vec![None; m],
        days: Vec::with_capacity(period),
        out: &mut out,
        nodes: 0,
        budget,
    };
    search.day(0)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::validate_dps;
    use alloc::string::ToString;

    fn star(freq: &[u64]) -> LocalGadget {
        let dps = DpsInstance::star(freq).unwrap();
        let mut constrained = vec![false; freq.len() + 1];
        constrained[0] = true;
        LocalGadget { dps, constrained, names: (0..freq.len()).map(|i| i.to_string()).collect() }
    }

    #[test]
    fn two_edges_of_frequency_two() {
        let g = star(&[2, 2]);
        let all = enumerate_local_schedules(&g, &[], 6, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(all.len(), 2);
        for s in &all {
            assert!(validate_dps(s, &g.dps).is_empty());
        }
    }

    #[test]
    fn unconstrained_edges_may_repeat() {
        let mut g = star(&[2]);
        g.constrained[0] = false;
        // any subset of 6 days with no gap above 2, read cyclically
        let all = enumerate_local_schedules(&g, &[], 6, DEFAULT_NODE_BUDGET).unwrap();
        let brute = (0u32..64)
            .filter(|mask| {
                let days: Vec<usize> = (0..6).filter(|d| mask >> d & 1 == 1).collect();
                !days.is_empty() && days.windows(2).all(|w| w[1] - w[0] <= 2) && days[0] + 6 - days[days.len() - 1] <= 2
            })
            .count();
        assert_eq!(all.len(), brute);
    }

    #[test]
    fn pins_restrict_slots() {
        let g = star(&[3, 3, 3]);
        let pinned = enumerate_local_schedules(&g, &[(0, vec![SlotColor::Red])], 6, DEFAULT_NODE_BUDGET).unwrap();
        // edge 0 on red days; edges 1 and 2 split the other two residues mod 3
        assert_eq!(pinned.len(), 2);
        assert!(enumerate_local_schedules(&g, &[], 7, DEFAULT_NODE_BUDGET).is_err());
        assert!(matches!(enumerate_local_schedules(&g, &[], 6, 3), Err(Error::Refused { .. })));
    }
}
