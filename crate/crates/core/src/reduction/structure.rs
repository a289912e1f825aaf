//! Structural checks on compiled polycules.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;
use crate::reduction::build::{GadgetGraph, GadgetTag, Sex};
use num_traits::One;

/// Node budget: a polycule for `n` variables and `m` clauses has at most
/// `NODES_PER_UNIT * (n + m) + NODES_BASE` people.
pub const NODES_PER_UNIT: usize = 100;
pub const NODES_BASE: usize = 100;

pub fn node_budget(num_vars: usize, num_clauses: usize) -> usize {
    NODES_PER_UNIT * (num_vars + num_clauses) + NODES_BASE
}

/// Sorted frequencies every node of a tag must carry.
fn template(tag: GadgetTag) -> Option<&'static [u64]> {
    Some(match tag {
        GadgetTag::TrueClock | GadgetTag::Var(_) | GadgetTag::F6 | GadgetTag::F3 => &[3, 3, 6, 6],
        GadgetTag::D3 => &[3, 6, 6, 9, 9, 9],
        GadgetTag::D6 => &[3, 3, 6, 12, 12],
        GadgetTag::Inverter => &[3, 12],
        GadgetTag::Or(_) | GadgetTag::Tension => &[3, 6, 6, 12, 12, 12, 12],
        GadgetTag::Fill => &[6],
        GadgetTag::Pendant => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub nodes: usize,
    pub edges: usize,
    pub budget: usize,
    pub max_frequency: Option<u64>,
    pub min_frequency: Option<u64>,
    pub max_density: Rational,
    /// Edges whose endpoints carry the same sex label.
    pub same_sex_edges: Vec<usize>,
    pub two_colorable: bool,
    pub failures: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn two_colorable(g: &GadgetGraph) -> bool {
    let graph = g.dps.graph();
    let mut side: Vec<Option<bool>> = vec![None; graph.num_people()];
    for s in 0..graph.num_people() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(p) = queue.pop_front() {
            let here = side[p].expect("visited");
            for &e in graph.incident(p) {
                let q = graph.edges()[e].other(p);
                match side[q] {
                    None => {
                        side[q] = Some(!here);
                        queue.push_back(q);
                    }
                    Some(x) if x == here => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Checks sex-bipartiteness, frequency range, per-node density, gadget degree templates,
/// pendant shape and the size budget. Problems are listed, never raised.
pub fn check_structure(g: &GadgetGraph) -> StructureReport {
    let graph = g.dps.graph();
    let freq = g.dps.freq();
    let n = graph.num_people();
    let mut failures = Vec::new();

    if g.sex.len() != n || g.gadget_of.len() != n {
        failures.push(format!("labels cover {} / {} of {} people", g.sex.len(), g.gadget_of.len(), n));
    }
    if g.expected_color.len() != g.num_edges() || g.role.len() != g.num_edges() {
        failures.push(String::from("edge metadata does not cover every edge"));
    }

    let same_sex_edges: Vec<usize> =
        graph.edges().iter().filter(|e| g.sex.get(e.u) == g.sex.get(e.v)).map(|e| e.index).collect();
    if !same_sex_edges.is_empty() {
        failures.push(format!("{} edges join people of the same sex", same_sex_edges.len()));
    }
    let two = two_colorable(g);
    if !two {
        failures.push(String::from("graph is not bipartite"));
    }

    let max_frequency = g.dps.max_frequency();
    let min_frequency = freq.iter().copied().min();
    let expected_max = if g.formula.clauses.is_empty() { None } else { Some(12) };
    match (max_frequency, expected_max) {
        (Some(f), _) if f > 12 => failures.push(format!("maximum frequency {f} exceeds 12")),
        (f, Some(12)) if f != Some(12) => failures.push(format!("maximum frequency is {f:?}, not 12")),
        _ => {}
    }
    if let Some(f) = min_frequency.filter(|&f| f < 3) {
        failures.push(format!("minimum frequency {f} is below 3"));
    }

    let mut max_density = Rational::default();
    for p in 0..n {
        let d = g.dps.density_at(p);
        if d > Rational::one() {
            failures.push(format!("person {p} has density {d}"));
        }
        if d > max_density {
            max_density = d;
        }
        let Some(&tag) = g.gadget_of.get(p) else { continue };
        let mut fs: Vec<u64> = graph.incident(p).iter().map(|&e| freq[e]).collect();
        fs.sort_unstable();
        match template(tag) {
            Some(t) if fs != t => failures.push(format!("{tag:?} node {p} has frequencies {fs:?}, expected {t:?}")),
            None if fs.len() != 1 => failures.push(format!("pendant {p} has degree {}", fs.len())),
            _ => {}
        }
    }

    let budget = node_budget(g.formula.num_vars, g.formula.clauses.len());
    if n > budget {
        failures.push(format!("{n} people exceed the budget of {budget}"));
    }
    StructureReport {
        nodes: n,
        edges: g.num_edges(),
        budget,
        max_frequency,
        min_frequency,
        max_density,
        same_sex_edges,
        two_colorable: two,
        failures,
    }
}

/// People of each sex, for reporting.
pub fn sex_counts(g: &GadgetGraph) -> (usize, usize) {
    let males = g.sex.iter().filter(|&&s| s == Sex::Male).count();
    (males, g.sex.len() - males)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::DpsInstance;
    use crate::instances::gen_random_cnf;
    use crate::reduction::build::build_polycule;

    #[test]
    fn generated_polycules_pass() {
        for seed in 0..30 {
            let phi = gen_random_cnf(seed, 1 + seed as usize % 7, seed as usize % 13).unwrap();
            let g = build_polycule(&phi).unwrap();
            let r = check_structure(&g);
            assert!(r.passed(), "seed {seed}: {:?}", r.failures);
        }
    }

    #[test]
    fn corrupted_sex_label_is_reported() {
        let phi = gen_random_cnf(3, 3, 4).unwrap();
        let mut g = build_polycule(&phi).unwrap();
        g.sex[0] = g.sex[0].opposite();
        let r = check_structure(&g);
        assert!(!r.same_sex_edges.is_empty());
        assert!(r.two_colorable);
        assert!(!r.passed());
    }

    #[test]
    fn raised_frequency_is_reported() {
        let phi = gen_random_cnf(4, 3, 4).unwrap();
        let mut g = build_polycule(&phi).unwrap();
        let mut freq = g.dps.freq().to_vec();
        let e = freq.iter().position(|&f| f == 12).unwrap();
        freq[e] = 13;
        g.dps = DpsInstance::new(g.dps.graph().clone(), freq).unwrap();
        let r = check_structure(&g);
        assert_eq!(r.max_frequency, Some(13));
        assert!(r.failures.iter().any(|f| f.contains("exceeds 12")));
    }
}
