//! Reduce-Fastest(x): each day, greedily schedule the fastest-growing edges whose heat has
//! reached `x·G*`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::graph::EdgeId;
use crate::instance::OpsInstance;
use crate::rational::{ceil_u64, int, ratio, Rational};
use crate::schedule::gstar;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfConfig {
    pub x: Rational,
    pub horizon: u64,
    /// Secondary scan order after decreasing growth rate; must be a permutation of the edges.
    pub tie_order: Option<Vec<EdgeId>>,
}

impl RfConfig {
    pub fn new(x: Rational, horizon: u64) -> Self {
        RfConfig { x, horizon, tie_order: None }
    }

    pub fn with_tie_order(mut self, order: Vec<EdgeId>) -> Self {
        self.tie_order = Some(order);
        self
    }

    /// Below `x = 2` heats can grow without bound.
    pub fn warning(&self) -> Option<&'static str> {
        (self.x < ratio(2, 1)).then_some("x < 2: the maximum heat may tend to infinity")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfTrace {
    pub schedule_prefix: Vec<Vec<EdgeId>>,
    pub max_heat_seen: Rational,
    /// First day on which `max_heat_seen` was observed.
    pub day_of_max: u64,
    pub heats_final: Vec<Rational>,
}

/// Ten times the longest climb of any edge from zero heat to `(x + 2)·G*`, which leaves
/// room for every edge to be scheduled many times.
pub fn default_horizon(inst: &OpsInstance, x: &Rational) -> Result<u64> {
    let target = (x + int(2)) * gstar(inst)?;
    let longest = inst
        .growth()
        .iter()
        .enumerate()
        .map(|(edge, g)| ceil_u64(&(&target / g)).ok_or(Error::FrequencyOverflow { edge }))
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .max()
        .ok_or(Error::NoEdges)?;
    longest.checked_mul(10).ok_or(Error::InvalidParameter("horizon does not fit in 64 bits".into()))
}

/// Simulates `cfg.horizon` days from all-zero heats. Each day every heat grows by its
/// rate, then edges are scanned by (growth desc, tie order, index) and added to the day's
/// matching when their heat is at least `x·G*` and both endpoints are free.
pub fn reduce_fastest(inst: &OpsInstance, cfg: &RfConfig) -> Result<RfTrace> {
    if cfg.horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    if cfg.x <= Rational::zero() {
        return Err(Error::NonPositiveThreshold);
    }
    let gs = gstar(inst)?;
    let m = inst.num_edges();
    let mut tie = vec![0usize; m];
    if let Some(order) = &cfg.tie_order {
        if order.len() != m {
            return Err(Error::InvalidTieOrder);
        }
        let mut seen = vec![false; m];
        for (pos, &e) in order.iter().enumerate() {
            if e >= m || seen[e] {
                return Err(Error::InvalidTieOrder);
            }
            seen[e] = true;
            tie[e] = pos;
        }
    }
    let mut order: Vec<EdgeId> = (0..m).collect();
    order.sort_by(|&a, &b| inst.g(b).cmp(inst.g(a)).then(tie[a].cmp(&tie[b])).then(a.cmp(&b)));

    // Heat after k days without a visit is k·g, so thresholds become day counts.
    let threshold = &cfg.x * &gs;
    let need: Vec<u64> = (0..m)
        .map(|e| ceil_u64(&(&threshold / inst.g(e))).map(|k| k.max(1)).ok_or(Error::FrequencyOverflow { edge: e }))
        .collect::<Result<_>>()?;
    let edges = inst.graph().edges();
    let mut since = vec![0u64; m];
    let mut best = vec![0u64; m];
    let mut best_day = vec![0u64; m];
    let mut busy = vec![false; inst.graph().num_people()];
    let mut prefix = Vec::with_capacity(cfg.horizon.min(1 << 20) as usize);
    for day in 0..cfg.horizon {
        for s in since.iter_mut() {
            *s += 1;
        }
        let mut today = Vec::new();
        for &e in &order {
            let edge = edges[e];
            if since[e] >= need[e] && !busy[edge.u] && !busy[edge.v] {
                busy[edge.u] = true;
                busy[edge.v] = true;
                if since[e] > best[e] {
                    best[e] = since[e];
                    best_day[e] = day;
                }
                since[e] = 0;
                today.push(e);
            }
        }
        for &e in &today {
            busy[edges[e].u] = false;
            busy[edges[e].v] = false;
        }
        today.sort_unstable();
        prefix.push(today);
    }
    let last = cfg.horizon - 1;
    for e in 0..m {
        if since[e] > best[e] {
            best[e] = since[e];
            best_day[e] = last;
        }
    }
    let mut max_heat_seen = Rational::zero();
    let mut day_of_max = 0;
    for e in 0..m {
        let h = inst.g(e) * int(best[e]);
        if h > max_heat_seen || (h == max_heat_seen && best_day[e] < day_of_max) {
            max_heat_seen = h;
            day_of_max = best_day[e];
        }
    }
    let heats_final = (0..m).map(|e| inst.g(e) * int(since[e])).collect();
    Ok(RfTrace { schedule_prefix: prefix, max_heat_seen, day_of_max, heats_final })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn horizon_covers_slowest_climb() {
        let inst = OpsInstance::from_edges(3, &[(0, 1), (1, 2)], vec![ratio(1, 2), ratio(1, 3)]).unwrap();
        assert_eq!(default_horizon(&inst, &ratio(4, 1)).unwrap(), 150);
    }

    #[test]
    fn single_edge() {
        let inst = OpsInstance::from_edges(2, &[(0, 1)], vec![ratio(1, 1)]).unwrap();
        let t = reduce_fastest(&inst, &RfConfig::new(ratio(2, 1), 10)).unwrap();
        assert_eq!(t.max_heat_seen, ratio(2, 1));
        assert_eq!(t.day_of_max, 1);
        let days: Vec<bool> = t.schedule_prefix.iter().map(|d| !d.is_empty()).collect();
        assert_eq!(days, vec![false, true, false, true, false, true, false, true, false, true]);
        assert_eq!(t.heats_final, vec![ratio(0, 1)]);
    }

    #[test]
    fn star_below_six() {
        let inst = OpsInstance::from_edges(3, &[(0, 1), (0, 2)], vec![ratio(1, 2); 2]).unwrap();
        let t = reduce_fastest(&inst, &RfConfig::new(ratio(4, 1), 100)).unwrap();
        assert!(t.max_heat_seen < ratio(6, 1));
        assert!(t.schedule_prefix.iter().all(|d| d.len() <= 1));
    }

    #[test]
    fn rejects_bad_config() {
        let inst = OpsInstance::from_edges(2, &[(0, 1)], vec![ratio(1, 1)]).unwrap();
        assert_eq!(reduce_fastest(&inst, &RfConfig::new(ratio(4, 1), 0)), Err(Error::ZeroHorizon));
        let cfg = RfConfig::new(ratio(4, 1), 5).with_tie_order(vec![1]);
        assert_eq!(reduce_fastest(&inst, &cfg), Err(Error::InvalidTieOrder));
        assert!(RfConfig::new(ratio(3, 2), 5).warning().is_some());
        assert!(RfConfig::new(ratio(2, 1), 5).warning().is_none());
    }

    #[test]
    fn deterministic() {
        let inst = OpsInstance::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], vec![ratio(1, 4); 4]).unwrap();
        let cfg = RfConfig::new(ratio(289, 100), 200);
        assert_eq!(reduce_fastest(&inst, &cfg), reduce_fastest(&inst, &cfg));
    }
}
