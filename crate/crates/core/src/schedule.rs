//! Periodic schedules and their evaluation.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::graph::{EdgeId, Graph, PersonId};
use crate::instance::{DpsInstance, OpsInstance};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// A periodic schedule: day `t` is `days[t mod period]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Schedule {
    days: Vec<Vec<EdgeId>>,
}

/// Recurrence time of an edge under a periodic schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Recurrence {
    Finite(u64),
    /// The edge never appears.
    Infinite,
}

impl Recurrence {
    pub fn finite(self) -> Option<u64> {
        match self {
            Recurrence::Finite(r) => Some(r),
            Recurrence::Infinite => None,
        }
    }
}

impl Schedule {
    /// Each day is sorted and deduplicated. Matching validity is checked against an
    /// instance by [`Schedule::check_matchings`], [`heat`] and [`validate_dps`].
    pub fn new(days: Vec<Vec<EdgeId>>) -> Result<Self> {
        if days.is_empty() {
            return Err(Error::EmptySchedule);
        }
        let days = days
            .into_iter()
            .map(|mut d| {
                d.sort_unstable();
                d.dedup();
                d
            })
            .collect();
        Ok(Schedule { days })
    }

    pub fn period(&self) -> usize {
        self.days.len()
    }

    pub fn days(&self) -> &[Vec<EdgeId>] {
        &self.days
    }

    pub fn day(&self, t: usize) -> &[EdgeId] {
        &self.days[t % self.days.len()]
    }

    pub fn into_days(self) -> Vec<Vec<EdgeId>> {
        self.days
    }

    /// Days on which `e` is scheduled within one period.
    pub fn occurrences(&self, e: EdgeId) -> Vec<usize> {
        (0..self.days.len()).filter(|&t| self.days[t].binary_search(&e).is_ok()).collect()
    }

    /// Recurrence times of edges `0..m`, counting the wraparound gap.
    pub fn recurrences(&self, m: usize) -> Result<Vec<Recurrence>> {
        let period = self.days.len() as u64;
        let mut first = vec![None; m];
        let mut last: Vec<Option<u64>> = vec![None; m];
        let mut gap = vec![0u64; m];
        for (t, day) in self.days.iter().enumerate() {
            let t = t as u64;
            for &e in day {
                if e >= m {
                    return Err(Error::UnknownEdge { edge: e });
                }
                match last[e] {
                    Some(l) => gap[e] = gap[e].max(t - l),
                    None => first[e] = Some(t),
                }
                last[e] = Some(t);
            }
        }
        Ok((0..m)
            .map(|e| match (first[e], last[e]) {
                (Some(f), Some(l)) => Recurrence::Finite(gap[e].max(f + period - l)),
                _ => Recurrence::Infinite,
            })
            .collect())
    }

    /// Errors on the first day that is not a matching of `graph`, or names an unknown edge.
    pub fn check_matchings(&self, graph: &Graph) -> Result<()> {
        for (day, set) in self.days.iter().enumerate() {
            if let Some((a, b, person)) = graph.matching_conflict(set)? {
                return Err(Error::NotAMatching { day, a, b, person });
            }
        }
        Ok(())
    }
}

/// Maximum gap between consecutive occurrences of `e`, including across the wraparound.
pub fn recurrence_time(sched: &Schedule, e: EdgeId, graph: &Graph) -> Result<Recurrence> {
    graph.edge(e)?;
    Ok(sched.recurrences(graph.num_edges())?[e])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeHeat {
    pub recurrence: Recurrence,
    /// `g(e)·r(e)`, or `None` when the edge never appears.
    pub contribution: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeatReport {
    /// `None` means infinite: some edge is never scheduled.
    pub heat: Option<Rational>,
    pub per_edge: Vec<EdgeHeat>,
}

impl HeatReport {
    pub fn is_finite(&self) -> bool {
        self.heat.is_some()
    }
}

/// Heat of a periodic schedule on an OPS instance.
pub fn heat(sched: &Schedule, inst: &OpsInstance) -> Result<HeatReport> {
    sched.check_matchings(inst.graph())?;
    let recs = sched.recurrences(inst.num_edges())?;
    let per_edge: Vec<EdgeHeat> = recs
        .into_iter()
        .enumerate()
        .map(|(e, recurrence)| EdgeHeat { recurrence, contribution: recurrence.finite().map(|r| inst.g(e) * int(r)) })
        .collect();
    let heat = if per_edge.iter().all(|h| h.contribution.is_some()) {
        per_edge.iter().filter_map(|h| h.contribution.clone()).max()
    } else {
        None
    };
    Ok(HeatReport { heat, per_edge })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownEdge { day: usize, edge: EdgeId },
    Conflict { day: usize, a: EdgeId, b: EdgeId, person: PersonId },
    NeverScheduled { edge: EdgeId },
    TooRare { edge: EdgeId, recurrence: u64, frequency: u64 },
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::UnknownEdge { day, edge } => write!(f, "day {day}: unknown edge {edge}"),
            Violation::Conflict { day, a, b, person } => {
                write!(f, "day {day}: edges {a} and {b} share person {person}")
            }
            Violation::NeverScheduled { edge } => write!(f, "edge {edge} is never scheduled"),
            Violation::TooRare { edge, recurrence, frequency } => {
                write!(f, "edge {edge} recurs every {recurrence} days but needs {frequency}")
            }
        }
    }
}

/// All ways `sched` fails to solve `inst`. Empty means valid.
pub fn validate_dps(sched: &Schedule, inst: &DpsInstance) -> Vec<Violation> {
    let graph = inst.graph();
    let m = graph.num_edges();
    let mut out = Vec::new();
    let mut known = Vec::with_capacity(sched.period());
    for (day, set) in sched.days().iter().enumerate() {
        let mut ok = Vec::with_capacity(set.len());
        for &e in set {
            if e >= m {
                out.push(Violation::UnknownEdge { day, edge: e });
            } else {
                ok.push(e);
            }
        }
        if let Ok(Some((a, b, person))) = graph.matching_conflict(&ok) {
            out.push(Violation::Conflict { day, a, b, person });
        }
        known.push(ok);
    }
    let recs = Schedule { days: known }.recurrences(m).expect("edges filtered");
    for (edge, r) in recs.into_iter().enumerate() {
        match r {
            Recurrence::Infinite => out.push(Violation::NeverScheduled { edge }),
            Recurrence::Finite(recurrence) if recurrence > inst.f(edge) => {
                out.push(Violation::TooRare { edge, recurrence, frequency: inst.f(edge) })
            }
            Recurrence::Finite(_) => {}
        }
    }
    out
}

/// `G* = max_v Σ_{e∋v} g(e)`.
pub fn gstar(inst: &OpsInstance) -> Result<Rational> {
    if inst.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(inst.personal_growth().into_iter().max().expect("edges imply people"))
}

/// Divides every growth rate by `G*`; returns the normalised instance and `G*`.
pub fn normalize(inst: &OpsInstance) -> Result<(OpsInstance, Rational)> {
    let scale = gstar(inst)?;
    if scale.is_one() {
        return Ok((inst.clone(), scale));
    }
    Ok((inst.scaled_down(&scale), scale))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDensity {
    pub per_person: Vec<Rational>,
    pub max: Rational,
    pub argmax: Option<PersonId>,
}

/// `Σ 1/f_e` over each person's edges.
pub fn local_density(inst: &DpsInstance) -> LocalDensity {
    let per_person: Vec<Rational> = (0..inst.graph().num_people()).map(|p| inst.density_at(p)).collect();
    let mut max = Rational::default();
    let mut argmax = None;
    for (p, d) in per_person.iter().enumerate() {
        if argmax.is_none() || d > &max {
            max = d.clone();
            argmax = Some(p);
        }
    }
    LocalDensity { per_person, max, argmax }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    fn sched(days: Vec<Vec<EdgeId>>) -> Schedule {
        Schedule::new(days).unwrap()
    }

    fn star_ops(g: Vec<Rational>) -> OpsInstance {
        let edges: Vec<_> = (1..=g.len()).map(|l| (0, l)).collect();
        OpsInstance::from_edges(g.len() + 1, &edges, g).unwrap()
    }

    fn triangle(g: Rational) -> OpsInstance {
        OpsInstance::from_edges(3, &[(0, 1), (1, 2), (0, 2)], vec![g; 3]).unwrap()
    }

    #[test]
    fn recurrence_examples() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(recurrence_time(&sched(vec![vec![0], vec![]]), 0, &g), Ok(Recurrence::Finite(2)));
        assert_eq!(recurrence_time(&sched(vec![vec![0]]), 0, &g), Ok(Recurrence::Finite(1)));
        let six = sched(vec![vec![0], vec![], vec![0], vec![], vec![], vec![]]);
        assert_eq!(recurrence_time(&six, 0, &g), Ok(Recurrence::Finite(4)));
        assert_eq!(recurrence_time(&sched(vec![vec![]]), 0, &g), Ok(Recurrence::Infinite));
        assert!(recurrence_time(&six, 1, &g).is_err());
    }

    #[test]
    fn heat_examples() {
        let star = star_ops(vec![ratio(1, 2), ratio(1, 2)]);
        let h = heat(&sched(vec![vec![0], vec![1]]), &star).unwrap();
        assert_eq!(h.heat, Some(ratio(1, 1)));

        let tri = triangle(ratio(1, 1));
        let h = heat(&sched(vec![vec![0], vec![1], vec![2]]), &tri).unwrap();
        assert_eq!(h.heat, Some(ratio(3, 1)));
        assert!(h.per_edge.iter().all(|e| e.recurrence == Recurrence::Finite(3)));

        let h = heat(&sched(vec![vec![0]]), &tri).unwrap();
        assert_eq!(h.heat, None);

        assert_eq!(heat(&sched(vec![vec![0, 1]]), &tri), Err(Error::NotAMatching { day: 0, a: 0, b: 1, person: 1 }));
    }

    #[test]
    fn validate_examples() {
        let path = DpsInstance::from_edges(3, &[(0, 1), (1, 2)], vec![2, 2]).unwrap();
        assert!(validate_dps(&sched(vec![vec![0], vec![1]]), &path).is_empty());
        assert_eq!(validate_dps(&sched(vec![vec![0], vec![0]]), &path), vec![Violation::NeverScheduled { edge: 1 }]);
        let pinwheel = DpsInstance::star(&[2, 3, 6]).unwrap();
        // e2 sits on days 1 and 5, a gap of four
        let s = sched(vec![vec![0], vec![1], vec![0], vec![2], vec![0], vec![1]]);
        assert_eq!(validate_dps(&s, &pinwheel), vec![Violation::TooRare { edge: 1, recurrence: 4, frequency: 3 }]);
        let relaxed = DpsInstance::star(&[2, 4, 6]).unwrap();
        assert!(validate_dps(&s, &relaxed).is_empty());
        let bad = sched(vec![vec![0, 1], vec![5]]);
        let v = validate_dps(&bad, &pinwheel);
        assert!(v.contains(&Violation::Conflict { day: 0, a: 0, b: 1, person: 0 }));
        assert!(v.contains(&Violation::UnknownEdge { day: 1, edge: 5 }));
        assert!(v.contains(&Violation::NeverScheduled { edge: 2 }));
    }

    #[test]
    fn gstar_examples() {
        assert_eq!(gstar(&star_ops(vec![ratio(1, 1), ratio(2, 1)])), Ok(ratio(3, 1)));
        assert_eq!(gstar(&triangle(ratio(1, 1))), Ok(ratio(2, 1)));
        let empty = OpsInstance::from_edges(2, &[], vec![]).unwrap();
        assert_eq!(gstar(&empty), Err(Error::NoEdges));
    }

    #[test]
    fn normalize_examples() {
        let (n, scale) = normalize(&star_ops(vec![ratio(1, 1), ratio(2, 1)])).unwrap();
        assert_eq!(n.growth(), &[ratio(1, 3), ratio(2, 3)]);
        assert_eq!(scale, ratio(3, 1));
        let (again, one) = normalize(&n).unwrap();
        assert_eq!(again, n);
        assert_eq!(one, ratio(1, 1));
    }

    #[test]
    fn local_density_examples() {
        assert_eq!(local_density(&DpsInstance::star(&[2, 4, 4]).unwrap()).max, ratio(1, 1));
        let path = DpsInstance::from_edges(3, &[(0, 1), (1, 2)], vec![4, 4]).unwrap();
        let d = local_density(&path);
        assert_eq!(d.per_person[1], ratio(1, 2));
        assert_eq!(d.argmax, Some(1));
        assert_eq!(local_density(&DpsInstance::star(&[3, 3, 6, 6]).unwrap()).max, ratio(1, 1));
    }
}
