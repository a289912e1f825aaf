//! Instance generators: adversarial families and seeded random corpora.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, Graph};
use crate::instance::{DpsInstance, OpsInstance};
use crate::rational::{int, ratio, Rational};
use crate::reduction::{Assignment, CnfFormula, Lit};
use crate::schedule::{gstar, local_density, normalize};
use crate::{Error, Result};

/// `d` disjoint stars; star `i` has `i` leaves and growth `1/i` on each edge.
pub fn gen_disjoint_stars(d: usize) -> Result<OpsInstance> {
    if d == 0 {
        return Err(Error::InvalidParameter("need at least one star".into()));
    }
    let mut edges = Vec::new();
    let mut growth = Vec::new();
    let mut next = 0;
    for i in 1..=d {
        let center = next;
        for leaf in 1..=i {
            edges.push((center, center + leaf));
            growth.push(ratio(1, i as i64));
        }
        next += i + 1;
    }
    OpsInstance::from_edges(next, &edges, growth)
}

/// `K_n` with growth `1/(n-1)` and the adversarial scan order: a 1-factorisation of
/// `K_{n-1}` (people `0..n-1`) matching by matching, then the edges of person `n-1`.
/// Edges are listed lexicographically.
pub fn gen_kn_adversarial(n: usize) -> Result<(OpsInstance, Vec<EdgeId>)> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenOrSmallCompleteGraph { n });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let id = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        a * (2 * n - a - 1) / 2 + (b - a - 1)
    };
    let k = n - 1;
    let mut order = Vec::with_capacity(pairs.len());
    for matching in one_factorization(k) {
        order.extend(matching.into_iter().map(|(a, b)| id(a, b)));
    }
    order.extend((0..k).map(|a| id(a, n - 1)));
    let inst = OpsInstance::uniform(Graph::new(n, &pairs)?, ratio(1, k as i64))?;
    Ok((inst, order))
}

/// Circle method for even `k`: person `k-1` stays fixed while the others rotate.
pub fn one_factorization(k: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(k >= 2 && k.is_multiple_of(2), "one-factorisations need an even, positive order");
    let r = k - 1;
    (0..r)
        .map(|round| {
            let mut m = vec![(round.min(k - 1), round.max(k - 1))];
            for i in 1..k / 2 {
                let a = (round + i) % r;
                let b = (round + r - i) % r;
                m.push((a.min(b), a.max(b)));
            }
            m
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Weights {
    /// Integer growth rates drawn uniformly from `min..=max`, optionally normalised.
    Growth { min: u64, max: u64, normalize: bool },
    /// Frequencies drawn uniformly from `min..=max`.
    Frequency { min: u64, max: u64 },
    /// Frequencies `2^k` with `k` uniform in `min_exp..=max_exp`.
    PowerOfTwo { min_exp: u32, max_exp: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomParams {
    pub people: usize,
    pub edge_prob: f64,
    pub weights: Weights,
    /// Upper bound on local density (DPS) or on `G*` before normalisation (OPS).
    pub density_cap: Option<Rational>,
    pub max_attempts: usize,
}

impl RandomParams {
    pub fn new(people: usize, edge_prob: f64, weights: Weights) -> Self {
        RandomParams { people, edge_prob, weights, density_cap: None, max_attempts: 1000 }
    }

    pub fn with_cap(mut self, cap: Rational) -> Self {
        self.density_cap = Some(cap);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomInstance {
    Ops(OpsInstance),
    Dps(DpsInstance),
}

impl RandomInstance {
    pub fn ops(self) -> Option<OpsInstance> {
        match self {
            RandomInstance::Ops(i) => Some(i),
            RandomInstance::Dps(_) => None,
        }
    }

    pub fn dps(self) -> Option<DpsInstance> {
        match self {
            RandomInstance::Dps(i) => Some(i),
            RandomInstance::Ops(_) => None,
        }
    }
}

/// Seeded random instance with at least one edge. Attempts that miss the cap are
/// rejected and redrawn from the same stream.
pub fn gen_random(seed: u64, params: &RandomParams) -> Result<RandomInstance> {
    if !(0.0..=1.0).contains(&params.edge_prob) || params.people < 2 {
        return Err(Error::InvalidParameter("need two people and an edge probability in [0, 1]".into()));
    }
    match params.weights {
        Weights::Growth { min, max, .. } | Weights::Frequency { min, max } if min == 0 || min > max => {
            return Err(Error::InvalidParameter("weight range must be positive and nonempty".into()))
        }
        Weights::PowerOfTwo { min_exp, max_exp } if min_exp > max_exp || max_exp > 62 => {
            return Err(Error::InvalidParameter("exponent range must be nonempty and below 63".into()))
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_attempts {
        let mut pairs = Vec::new();
        for a in 0..params.people {
            for b in a + 1..params.people {
                if rng.gen_bool(params.edge_prob) {
                    pairs.push((a, b));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let graph = Graph::new(params.people, &pairs)?;
        let m = pairs.len();
        let candidate = match params.weights {
            Weights::Growth { min, max, normalize: norm } => {
                let growth = (0..m).map(|_| int(rng.gen_range(min..=max))).collect();
                let inst = OpsInstance::new(graph, growth)?;
                if params.density_cap.as_ref().is_some_and(|cap| gstar(&inst).map_or(true, |g| &g > cap)) {
                    continue;
                }
                RandomInstance::Ops(if norm { normalize(&inst)?.0 } else { inst })
            }
            Weights::Frequency { min, max } => {
                RandomInstance::Dps(DpsInstance::new(graph, (0..m).map(|_| rng.gen_range(min..=max)).collect())?)
            }
            Weights::PowerOfTwo { min_exp, max_exp } => RandomInstance::Dps(DpsInstance::new(
                graph,
                (0..m).map(|_| 1u64 << rng.gen_range(min_exp..=max_exp)).collect(),
            )?),
        };
        if let (RandomInstance::Dps(d), Some(cap)) = (&candidate, &params.density_cap) {
            if &local_density(d).max > cap {
                continue;
            }
        }
        return Ok(candidate);
    }
    Err(Error::CapUnachievable { attempts: params.max_attempts })
}

/// `len` days of random maximal matchings, then one extra single-edge day for every edge
/// not yet covered.
pub fn gen_random_schedule(seed: u64, graph: &Graph, len: usize) -> Vec<Vec<EdgeId>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<EdgeId> = (0..graph.num_edges()).collect();
    let mut covered = vec![false; graph.num_edges()];
    let mut days = Vec::with_capacity(len);
    for _ in 0..len {
        order.shuffle(&mut rng);
        let mut busy = vec![false; graph.num_people()];
        let mut day = Vec::new();
        for &e in &order {
            let edge = graph.edges()[e];
            if !busy[edge.u] && !busy[edge.v] {
                busy[edge.u] = true;
                busy[edge.v] = true;
                covered[e] = true;
                day.push(e);
            }
        }
        day.sort_unstable();
        days.push(day);
    }
    for (e, c) in covered.iter().enumerate() {
        if !c {
            days.push(vec![e]);
        }
    }
    days
}

/// Random 3-CNF with clauses of 1 to 3 literals over distinct variables.
pub fn gen_random_cnf(seed: u64, num_vars: usize, num_clauses: usize) -> Result<CnfFormula> {
    if num_vars == 0 {
        return Err(Error::InvalidParameter("a formula needs at least one variable".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<usize> = (0..num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            let len = rng.gen_range(1..=3.min(num_vars));
            vars.choose_multiple(&mut rng, len).map(|&v| Lit { var: v, negated: rng.gen_bool(0.5) }).collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses)
}

/// The first satisfiable formula from `gen_random_cnf` over seeds `seed, seed + 1, …`,
/// with a satisfying assignment found by exhaustive search.
pub fn gen_satisfiable_cnf(seed: u64, num_vars: usize, num_clauses: usize) -> Result<(CnfFormula, Assignment)> {
    if num_vars >= 32 {
        return Err(Error::Refused { what: "variables for exhaustive search", size: num_vars as u128, limit: 31 });
    }
    for s in seed..seed.saturating_add(10_000) {
        let phi = gen_random_cnf(s, num_vars, num_clauses)?;
        if let Some(a) = phi.brute_force_solve() {
            return Ok((phi, a));
        }
    }
    Err(Error::CapUnachievable { attempts: 10_000 })
}
