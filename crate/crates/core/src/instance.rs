//! OPS and DPS instances.

use alloc::vec::Vec;

use num_traits::One;

use crate::graph::{EdgeId, Graph, PersonId};
use crate::rational::{is_positive, recip, Rational};
use crate::{Error, Result};

/// Optimisation instance: a growth rate per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpsInstance {
    graph: Graph,
    growth: Vec<Rational>,
}

impl OpsInstance {
    pub fn new(graph: Graph, growth: Vec<Rational>) -> Result<Self> {
        if growth.len() != graph.num_edges() {
            return Err(Error::LengthMismatch { expected: graph.num_edges(), got: growth.len() });
        }
        if let Some(edge) = growth.iter().position(|g| !is_positive(g)) {
            return Err(Error::NonPositiveGrowth { edge });
        }
        Ok(OpsInstance { graph, growth })
    }

    /// Convenience constructor from an edge list and growth rates.
    pub fn from_edges(n: usize, edges: &[(PersonId, PersonId)], growth: Vec<Rational>) -> Result<Self> {
        Self::new(Graph::new(n, edges)?, growth)
    }

    /// Every edge with growth rate `g`.
    pub fn uniform(graph: Graph, g: Rational) -> Result<Self> {
        let growth = alloc::vec![g; graph.num_edges()];
        Self::new(graph, growth)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn growth(&self) -> &[Rational] {
        &self.growth
    }

    pub fn g(&self, e: EdgeId) -> &Rational {
        &self.growth[e]
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn max_growth(&self) -> Option<&Rational> {
        self.growth.iter().max()
    }

    /// G_v for every person.
    pub fn personal_growth(&self) -> Vec<Rational> {
        (0..self.graph.num_people()).map(|p| self.graph.incident(p).iter().map(|&e| &self.growth[e]).sum()).collect()
    }

    /// Same graph, every growth rate divided by `by`.
    pub fn scaled_down(&self, by: &Rational) -> OpsInstance {
        OpsInstance { graph: self.graph.clone(), growth: self.growth.iter().map(|g| g / by).collect() }
    }
}

/// Decision instance: an integer frequency per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpsInstance {
    graph: Graph,
    freq: Vec<u64>,
}

impl DpsInstance {
    pub fn new(graph: Graph, freq: Vec<u64>) -> Result<Self> {
        if freq.len() != graph.num_edges() {
            return Err(Error::LengthMismatch { expected: graph.num_edges(), got: freq.len() });
        }
        if let Some(edge) = freq.iter().position(|&f| f == 0) {
            return Err(Error::ZeroFrequency { edge });
        }
        Ok(DpsInstance { graph, freq })
    }

    pub fn from_edges(n: usize, edges: &[(PersonId, PersonId)], freq: Vec<u64>) -> Result<Self> {
        Self::new(Graph::new(n, edges)?, freq)
    }

    /// Star with center 0 and one leaf per frequency.
    pub fn star(freq: &[u64]) -> Result<Self> {
        let edges: Vec<_> = (1..=freq.len()).map(|leaf| (0, leaf)).collect();
        Self::from_edges(freq.len() + 1, &edges, freq.to_vec())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn freq(&self) -> &[u64] {
        &self.freq
    }

    pub fn f(&self, e: EdgeId) -> u64 {
        self.freq[e]
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn max_frequency(&self) -> Option<u64> {
        self.freq.iter().copied().max()
    }

    /// Restriction to a subset of edges, keeping every person.
    pub fn restrict(&self, edges: &[EdgeId]) -> Result<DpsInstance> {
        let pairs: Vec<_> = edges.iter().map(|&e| (self.graph.edges()[e].u, self.graph.edges()[e].v)).collect();
        let freq = edges.iter().map(|&e| self.freq[e]).collect();
        DpsInstance::new(Graph::new(self.graph.num_people(), &pairs)?, freq)
    }

    /// Sum of `1/f_e` over a person's edges.
    pub fn density_at(&self, p: PersonId) -> Rational {
        self.graph.incident(p).iter().map(|&e| recip(self.freq[e])).sum()
    }
}

impl OpsInstance {
    /// Whether `G* = 1`.
    pub fn is_normalized(&self) -> bool {
        self.personal_growth().into_iter().max().is_some_and(|g| g.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn validates_values() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(OpsInstance::new(g.clone(), alloc::vec![ratio(0, 1)]), Err(Error::NonPositiveGrowth { edge: 0 }));
        assert_eq!(DpsInstance::new(g.clone(), alloc::vec![0]), Err(Error::ZeroFrequency { edge: 0 }));
        assert_eq!(DpsInstance::new(g, alloc::vec![1, 2]), Err(Error::LengthMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn personal_growth_sums_incident_edges() {
        let inst = OpsInstance::from_edges(3, &[(0, 1), (0, 2)], alloc::vec![ratio(1, 1), ratio(2, 1)]).unwrap();
        assert_eq!(inst.personal_growth(), alloc::vec![ratio(3, 1), ratio(1, 1), ratio(2, 1)]);
    }
}
