//! DPS feasibility as a safety game over days-since-last-visit states.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::EdgeId;
use crate::instance::DpsInstance;
use crate::rational::lcm_u64;
use crate::schedule::Schedule;

pub const DEFAULT_GUARD: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Schedule),
    Infeasible,
    /// A connected component's state space `Π (f_e + 1)` exceeds the guard.
    Refused {
        size: u128,
        guard: u128,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// `Π (f_e + 1)`, saturating.
pub fn state_space_size(freq: impl IntoIterator<Item = u64>) -> u128 {
    freq.into_iter().fold(1u128, |acc, f| acc.saturating_mul(f as u128 + 1))
}

/// Decides feasibility component by component. Within a component the state records,
/// per edge, the days since it was last scheduled; states where an edge would go `f_e`
/// days unscheduled are dead. Dead states are pruned backwards until only states with a
/// live successor remain; the instance is feasible iff the all-zero start state survives.
/// The returned schedule is the cycle reached by always taking the first live action,
/// combined across components with the lcm of their periods.
pub fn dps_feasible(inst: &DpsInstance, guard: u128) -> Feasibility {
    let components = inst.graph().edge_components();
    for comp in &components {
        let size = state_space_size(comp.iter().map(|&e| inst.f(e)));
        if size > guard || comp.len() > 63 {
            return Feasibility::Refused { size, guard };
        }
    }
    let mut cycles = Vec::with_capacity(components.len());
    for comp in &components {
        match solve_component(inst, comp) {
            Some(days) => cycles.push(days),
            None => return Feasibility::Infeasible,
        }
    }
    let period = cycles.iter().fold(1u64, |acc, c| lcm_u64(acc, c.len() as u64)) as usize;
    let days: Vec<Vec<EdgeId>> =
        (0..period).map(|t| cycles.iter().flat_map(|c| c[t % c.len()].iter().copied()).collect()).collect();
    Feasibility::Feasible(Schedule::new(days).expect("period is positive"))
}

fn solve_component(inst: &DpsInstance, comp: &[EdgeId]) -> Option<Vec<Vec<EdgeId>>> {
    let k = comp.len();
    let freq: Vec<u64> = comp.iter().map(|&e| inst.f(e)).collect();
    let edges = inst.graph().edges();
    let actions = matchings(comp, |a, b| edges[comp[a]].adjacent(&edges[comp[b]]));

    let mut stride = vec![1u64; k];
    for i in 1..k {
        stride[i] = stride[i - 1] * freq[i - 1];
    }
    let total = (stride[k - 1] * freq[k - 1]) as usize;
    let decode = |mut code: u64, out: &mut [u64]| {
        for i in (0..k).rev() {
            out[i] = code / stride[i];
            code %= stride[i];
        }
    };

    const UNSEEN: u32 = u32::MAX;
    let mut id_of = vec![UNSEEN; total];
    let mut codes: Vec<u64> = vec![0];
    id_of[0] = 0;
    let mut succ_start: Vec<u32> = vec![0];
    let mut succ: Vec<u32> = Vec::new();
    let mut succ_action: Vec<u32> = Vec::new();
    let mut s = vec![0u64; k];
    let mut head = 0;
    while head < codes.len() {
        decode(codes[head], &mut s);
        let urgent: u64 = (0..k).filter(|&i| s[i] + 1 == freq[i]).fold(0, |m, i| m | 1 << i);
        for (ai, &a) in actions.iter().enumerate() {
            if a & urgent != urgent {
                continue;
            }
            let code: u64 = (0..k).map(|i| if a >> i & 1 == 1 { 0 } else { (s[i] + 1) * stride[i] }).sum();
            let target = &mut id_of[code as usize];
            if *target == UNSEEN {
                *target = codes.len() as u32;
                codes.push(code);
            }
            succ.push(*target);
            succ_action.push(ai as u32);
        }
        succ_start.push(succ.len() as u32);
        head += 1;
    }

    let n = codes.len();
    let mut live_succ: Vec<u32> = (0..n).map(|v| succ_start[v + 1] - succ_start[v]).collect();
    let mut pred_start = vec![0u32; n + 1];
    for &t in &succ {
        pred_start[t as usize + 1] += 1;
    }
    for v in 0..n {
        pred_start[v + 1] += pred_start[v];
    }
    let mut fill = pred_start.clone();
    let mut pred = vec![0u32; succ.len()];
    for v in 0..n {
        for j in succ_start[v]..succ_start[v + 1] {
            let t = succ[j as usize] as usize;
            pred[fill[t] as usize] = v as u32;
            fill[t] += 1;
        }
    }
    let mut alive = vec![true; n];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&v| live_succ[v as usize] == 0).collect();
    for &v in &queue {
        alive[v as usize] = false;
    }
    while let Some(v) = queue.pop() {
        for j in pred_start[v as usize]..pred_start[v as usize + 1] {
            let p = pred[j as usize] as usize;
            if alive[p] {
                live_succ[p] -= 1;
                if live_succ[p] == 0 {
                    alive[p] = false;
                    queue.push(p as u32);
                }
            }
        }
    }
    if !alive[0] {
        return None;
    }

    let mut step_of = vec![u32::MAX; n];
    let mut path: Vec<u32> = Vec::new();
    let mut v = 0usize;
    loop {
        if step_of[v] != u32::MAX {
            let start = step_of[v] as usize;
            return Some(
                path[start..]
                    .iter()
                    .map(|&a| (0..k).filter(|&i| actions[a as usize] >> i & 1 == 1).map(|i| comp[i]).collect())
                    .collect(),
            );
        }
        step_of[v] = path.len() as u32;
        let j = (succ_start[v]..succ_start[v + 1])
            .find(|&j| alive[succ[j as usize] as usize])
            .expect("live states have a live successor");
        path.push(succ_action[j as usize]);
        v = succ[j as usize] as usize;
    }
}

/// Every matching of the component as a bitmask over local edge positions, largest first.
fn matchings(comp: &[EdgeId], adjacent: impl Fn(usize, usize) -> bool) -> Vec<u64> {
    let k = comp.len();
    let conflicts: Vec<u64> =
        (0..k).map(|a| (0..k).filter(|&b| b != a && adjacent(a, b)).fold(0, |m, b| m | 1 << b)).collect();
    let mut out = Vec::new();
    fn rec(i: usize, mask: u64, k: usize, conflicts: &[u64], out: &mut Vec<u64>) {
        if i == k {
            out.push(mask);
            return;
        }
        if mask & conflicts[i] == 0 {
            rec(i + 1, mask | 1 << i, k, conflicts, out);
        }
        rec(i + 1, mask, k, conflicts, out);
    }
    rec(0, 0, k, &conflicts, &mut out);
    out.sort_by_key(|m| core::cmp::Reverse(m.count_ones()));
    out
}
