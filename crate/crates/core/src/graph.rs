//! Simple undirected graphs of people and relationships.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub type PersonId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Person {
    pub id: PersonId,
    pub label: Option<String>,
}

/// A relationship. `index` is its position in the edge list and the final tie-breaker
/// everywhere an order is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub index: EdgeId,
    pub u: PersonId,
    pub v: PersonId,
}

impl Edge {
    pub fn touches(&self, p: PersonId) -> bool {
        self.u == p || self.v == p
    }

    pub fn other(&self, p: PersonId) -> PersonId {
        if self.u == p {
            self.v
        } else {
            self.u
        }
    }

    pub fn adjacent(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    people: Vec<Person>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph on `n` unlabelled people.
    pub fn new(n: usize, pairs: &[(PersonId, PersonId)]) -> Result<Self> {
        Self::with_labels(vec![None; n], pairs)
    }

    pub fn with_labels(labels: Vec<Option<String>>, pairs: &[(PersonId, PersonId)]) -> Result<Self> {
        let n = labels.len();
        let people: Vec<Person> = labels.into_iter().enumerate().map(|(id, label)| Person { id, label }).collect();
        let mut seen = BTreeMap::new();
        let mut incidence = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(pairs.len());
        for (index, &(u, v)) in pairs.iter().enumerate() {
            for p in [u, v] {
                if p >= n {
                    return Err(Error::UnknownPerson { edge: index, person: p });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: index });
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Err(Error::ParallelEdge { edge: index, first });
            }
            seen.insert(key, index);
            incidence[u].push(index);
            incidence[v].push(index);
            edges.push(Edge { index, u, v });
        }
        Ok(Graph { people, edges, incidence })
    }

    pub fn people(&self) -> &[Person] {
        &self.people
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::UnknownEdge { edge: e })
    }

    pub fn num_people(&self) -> usize {
        self.people.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges incident to `p`, in index order.
    pub fn incident(&self, p: PersonId) -> &[EdgeId] {
        &self.incidence[p]
    }

    pub fn degree(&self, p: PersonId) -> usize {
        self.incidence[p].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn pairs(&self) -> Vec<(PersonId, PersonId)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// First conflict in `set` as `(a, b, person)`, checking edge indices exist.
    pub fn matching_conflict(&self, set: &[EdgeId]) -> Result<Option<(EdgeId, EdgeId, PersonId)>> {
        let mut owner: BTreeMap<PersonId, EdgeId> = BTreeMap::new();
        for &e in set {
            let edge = self.edge(e)?;
            for p in [edge.u, edge.v] {
                if let Some(&a) = owner.get(&p) {
                    return Ok(Some((a, e, p)));
                }
                owner.insert(p, e);
            }
        }
        Ok(None)
    }

    pub fn is_matching(&self, set: &[EdgeId]) -> bool {
        matches!(self.matching_conflict(set), Ok(None))
    }

    /// Connected components that contain at least one edge, as sorted edge lists.
    pub fn edge_components(&self) -> Vec<Vec<EdgeId>> {
        let n = self.people.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<EdgeId>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX || self.incidence[start].is_empty() {
                continue;
            }
            let id = out.len();
            let mut edges = Vec::new();
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(p) = stack.pop() {
                for &e in &self.incidence[p] {
                    let q = self.edges[e].other(p);
                    edges.push(e);
                    if comp[q] == usize::MAX {
                        comp[q] = id;
                        stack.push(q);
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            out.push(edges);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop { edge: 0 }));
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]), Err(Error::ParallelEdge { edge: 1, first: 0 }));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::UnknownPerson { edge: 0, person: 2 }));
    }

    #[test]
    fn incidence_and_matching() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.incident(1), &[0, 1]);
        assert_eq!(g.max_degree(), 2);
        assert!(g.is_matching(&[0, 2]));
        assert!(!g.is_matching(&[0, 1]));
        assert_eq!(g.matching_conflict(&[1, 2]).unwrap(), Some((1, 2, 2)));
        assert!(g.matching_conflict(&[7]).is_err());
    }

    #[test]
    fn components() {
        let g = Graph::new(6, &[(0, 1), (3, 4), (1, 2), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.edge_components(), vec![vec![0, 2], vec![1, 3, 4]]);
    }
}
