//! Proper edge colouring with at most `Δ+1` colours (Misra–Gries fan rotation).

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Graph, PersonId};
use crate::schedule::Schedule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Colour of each edge, in `0..num_colors`.
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl EdgeColoring {
    pub fn is_proper(&self, graph: &Graph) -> bool {
        (0..graph.num_people()).all(|p| {
            let mut seen: Vec<usize> = graph.incident(p).iter().map(|&e| self.colors[e]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        }) && self.colors.iter().all(|&c| c < self.num_colors)
    }

    /// Edges of each colour class, in index order.
    pub fn classes(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (e, &c) in self.colors.iter().enumerate() {
            out[c].push(e);
        }
        out
    }
}

struct State<'a> {
    graph: &'a Graph,
    color: Vec<Option<usize>>,
    // at[v][c]: the edge of colour c at v
    at: Vec<Vec<Option<EdgeId>>>,
}

impl State<'_> {
    fn is_free(&self, v: PersonId, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn first_free(&self, v: PersonId) -> usize {
        self.at[v].iter().position(Option::is_none).expect("Δ+1 colours leave one free")
    }

    fn unset(&mut self, e: EdgeId) {
        if let Some(c) = self.color[e].take() {
            let edge = self.graph.edges()[e];
            self.at[edge.u][c] = None;
            self.at[edge.v][c] = None;
        }
    }

    fn set(&mut self, e: EdgeId, c: usize) {
        let edge = self.graph.edges()[e];
        debug_assert!(self.is_free(edge.u, c) && self.is_free(edge.v, c));
        self.color[e] = Some(c);
        self.at[edge.u][c] = Some(e);
        self.at[edge.v][c] = Some(e);
    }

    fn color_edge(&mut self, e: EdgeId) {
        let edge = self.graph.edges()[e];
        let u = edge.u;
        let mut fan = vec![edge.v];
        let mut fan_edges = vec![e];
        loop {
            let last = fan[fan.len() - 1];
            let next = self.graph.incident(u).iter().copied().find(|&f| {
                let w = self.graph.edges()[f].other(u);
                match self.color[f] {
                    Some(c) => !fan.contains(&w) && self.is_free(last, c),
                    None => false,
                }
            });
            match next {
                Some(f) => {
                    fan.push(self.graph.edges()[f].other(u));
                    fan_edges.push(f);
                }
                None => break,
            }
        }
        let c = self.first_free(u);
        let d = self.first_free(fan[fan.len() - 1]);
        if c != d {
            let mut path = Vec::new();
            let mut x = u;
            let mut want = d;
            while let Some(f) = self.at[x][want] {
                path.push(f);
                x = self.graph.edges()[f].other(x);
                want = if want == d { c } else { d };
            }
            let old: Vec<usize> = path.iter().map(|&f| self.color[f].expect("path edges are coloured")).collect();
            for &f in &path {
                self.unset(f);
            }
            for (&f, &o) in path.iter().zip(&old) {
                self.set(f, if o == c { d } else { c });
            }
        }
        let mut w = None;
        for i in 0..fan.len() {
            if i > 0 {
                let ci = self.color[fan_edges[i]].expect("fan edges are coloured");
                if !self.is_free(fan[i - 1], ci) {
                    break;
                }
            }
            if self.is_free(fan[i], d) {
                w = Some(i);
                break;
            }
        }
        let w = w.expect("a fan prefix ending at a d-free vertex exists");
        let shifted: Vec<usize> = (1..=w).map(|i| self.color[fan_edges[i]].expect("coloured")).collect();
        for &f in &fan_edges[1..=w] {
            self.unset(f);
        }
        for (i, c) in shifted.into_iter().enumerate() {
            self.set(fan_edges[i], c);
        }
        self.set(fan_edges[w], d);
    }
}

/// Proper colouring with at most `Δ+1` colours; colours are renumbered densely in
/// increasing order so `num_colors` counts only colours actually used.
pub fn color_edges(graph: &Graph) -> EdgeColoring {
    let k = graph.max_degree() + 1;
    let mut st = State { graph, color: vec![None; graph.num_edges()], at: vec![vec![None; k]; graph.num_people()] };
    for e in 0..graph.num_edges() {
        st.color_edge(e);
    }
    let raw: Vec<usize> = st.color.into_iter().map(|c| c.expect("every edge coloured")).collect();
    let mut remap = vec![usize::MAX; k];
    let mut used: Vec<usize> = raw.clone();
    used.sort_unstable();
    used.dedup();
    for (new, &old) in used.iter().enumerate() {
        remap[old] = new;
    }
    EdgeColoring { colors: raw.into_iter().map(|c| remap[c]).collect(), num_colors: used.len() }
}

/// The colour round robin: day `t` schedules colour class `t`, period `C`.
pub fn color_schedule(coloring: &EdgeColoring) -> Schedule {
    let classes = coloring.classes();
    if classes.is_empty() {
        return Schedule::new(vec![Vec::new()]).expect("one day");
    }
    Schedule::new(classes).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_chromatic_index(g: &Graph) -> usize {
        let m = g.num_edges();
        for k in 1..=m {
            let mut colors = vec![0usize; m];
            loop {
                let ok = EdgeColoring { colors: colors.clone(), num_colors: k }.is_proper(g);
                if ok {
                    return k;
                }
                let mut i = 0;
                while i < m {
                    colors[i] += 1;
                    if colors[i] < k {
                        break;
                    }
                    colors[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
            }
        }
        m
    }

    #[test]
    fn small_examples() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(color_edges(&path).num_colors, 2);
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(color_edges(&star).num_colors, 4);
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let c = color_edges(&c5);
        assert!(c.is_proper(&c5));
        assert_eq!(c.num_colors, 3);
        assert_eq!(brute_chromatic_index(&c5), 3);
    }

    #[test]
    fn complete_graphs_stay_within_vizing() {
        for n in 2..9 {
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    pairs.push((a, b));
                }
            }
            let g = Graph::new(n, &pairs).unwrap();
            let c = color_edges(&g);
            assert!(c.is_proper(&g));
            assert!(c.num_colors <= g.max_degree() + 1);
        }
    }

    #[test]
    fn schedule_from_star() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = color_schedule(&color_edges(&star));
        assert_eq!(s.period(), 3);
        assert!(s.days().iter().all(|d| d.len() == 1));
    }
}
