use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Graph};
use crate::{Error, Result};

pub const DEFAULT_EDGE_LIMIT: usize = 20;

/// All inclusion-maximal matchings, each sorted, listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSet {
    pub matchings: Vec<Vec<EdgeId>>,
}

impl MatchingSet {
    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }
}

/// Refuses graphs with more than `limit` edges.
pub fn enumerate_maximal_matchings(graph: &Graph, limit: usize) -> Result<MatchingSet> {
    let m = graph.num_edges();
    if m > limit {
        return Err(Error::Refused {
            what: "edge count for matching enumeration",
            size: m as u128,
            limit: limit as u128,
        });
    }
    let mut used = vec![false; graph.num_people()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    walk(graph, 0, &mut used, &mut chosen, &mut out);
    out.sort();
    Ok(MatchingSet { matchings: out })
}

fn walk(graph: &Graph, i: usize, used: &mut [bool], chosen: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
    let edges = graph.edges();
    if i == edges.len() {
        if edges.iter().all(|e| used[e.u] || used[e.v]) {
            out.push(chosen.clone());
        }
        return;
    }
    let e = edges[i];
    if !used[e.u] && !used[e.v] {
        used[e.u] = true;
        used[e.v] = true;
        chosen.push(i);
        walk(graph, i + 1, used, chosen, out);
        chosen.pop();
        used[e.u] = false;
        used[e.v] = false;
    }
    // Leaving a free edge out only pays off if a later edge can still block it.
    let blockable = used[e.u] || used[e.v] || graph.incident(e.u).iter().chain(graph.incident(e.v)).any(|&f| f > i);
    if blockable {
        walk(graph, i + 1, used, chosen, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(graph: &Graph) -> Vec<Vec<EdgeId>> {
        let m = graph.num_edges();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            let set: Vec<EdgeId> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            if !graph.is_matching(&set) {
                continue;
            }
            let maximal = (0..m).filter(|e| mask >> e & 1 == 0).all(|e| {
                let mut bigger = set.clone();
                bigger.push(e);
                !graph.is_matching(&bigger)
            });
            if maximal {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn examples() {
        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(enumerate_maximal_matchings(&tri, 20).unwrap().matchings, vec![vec![0], vec![1], vec![2]]);
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(enumerate_maximal_matchings(&path, 20).unwrap().matchings, vec![vec![0, 2], vec![1]]);
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let ms = enumerate_maximal_matchings(&k4, 20).unwrap();
        assert_eq!(ms.len(), 3);
        assert_eq!(ms.matchings, brute(&k4));
    }

    #[test]
    fn agrees_with_brute_force() {
        let petersen_ish =
            Graph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3), (1, 5), (2, 6)]).unwrap();
        assert_eq!(enumerate_maximal_matchings(&petersen_ish, 20).unwrap().matchings, brute(&petersen_ish));
    }

    #[test]
    fn guard() {
        let edges: Vec<_> = (1..=5).map(|l| (0, l)).collect();
        let star = Graph::new(6, &edges).unwrap();
        assert!(matches!(enumerate_maximal_matchings(&star, 4), Err(Error::Refused { .. })));
    }
}
