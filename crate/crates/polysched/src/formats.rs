//! JSON file formats for instances, schedules and reports.
//!
//! Rationals are written as `"num/den"` strings so they survive round trips exactly.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use polysched_core::density::DensityReport;
use polysched_core::graph::Graph;
use polysched_core::reduction::{ExpectedColor, GadgetGraph, GadgetTag, Sex, StructureReport};
use polysched_core::schedule::{HeatReport, Recurrence};
use polysched_core::{DpsInstance, OpsInstance, Rational, Schedule};
use serde::{Deserialize, Serialize};

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|e| anyhow!("invalid rational {s:?}: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ops,
    Dps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub people: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Ops(OpsInstance),
    Dps(DpsInstance),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Ops(i) => i.graph(),
            Instance::Dps(i) => i.graph(),
        }
    }

    /// DPS instances are read as OPS with `g = 1/f`.
    pub fn to_ops(&self) -> OpsInstance {
        match self {
            Instance::Ops(i) => i.clone(),
            Instance::Dps(i) => polysched_core::convert::dps_to_ops(i),
        }
    }
}

fn labels(graph: &Graph) -> Vec<String> {
    graph.people().iter().map(|p| p.label.clone().unwrap_or_else(|| p.id.to_string())).collect()
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let graph = inst.graph();
        let edges = graph
            .edges()
            .iter()
            .map(|e| match inst {
                Instance::Ops(i) => EdgeRecord { u: e.u, v: e.v, g: Some(format_rational(i.g(e.index))), f: None },
                Instance::Dps(i) => EdgeRecord { u: e.u, v: e.v, g: None, f: Some(i.f(e.index)) },
            })
            .collect();
        let kind = match inst {
            Instance::Ops(_) => Kind::Ops,
            Instance::Dps(_) => Kind::Dps,
        };
        InstanceFile { kind, people: labels(graph), edges }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let graph = Graph::with_labels(self.people.iter().cloned().map(Some).collect(), &pairs)?;
        Ok(match self.kind {
            Kind::Ops => {
                let growth = self
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        if e.f.is_some() {
                            bail!("edge {i}: an ops instance takes \"g\", not \"f\"");
                        }
                        parse_rational(e.g.as_deref().ok_or_else(|| anyhow!("edge {i} has no growth rate \"g\""))?)
                            .with_context(|| format!("edge {i}"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Instance::Ops(OpsInstance::new(graph, growth)?)
            }
            Kind::Dps => {
                let freq = self
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        if e.g.is_some() {
                            bail!("edge {i}: a dps instance takes \"f\", not \"g\"");
                        }
                        e.f.ok_or_else(|| anyhow!("edge {i} has no frequency \"f\""))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Instance::Dps(DpsInstance::new(graph, freq)?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub period: usize,
    pub days: Vec<Vec<usize>>,
}

impl ScheduleFile {
    pub fn from_schedule(s: &Schedule) -> Self {
        ScheduleFile { period: s.period(), days: s.days().to_vec() }
    }

    pub fn to_schedule(&self) -> Result<Schedule> {
        if self.period != self.days.len() {
            bail!("period {} does not match the {} days listed", self.period, self.days.len());
        }
        Ok(Schedule::new(self.days.clone())?)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    read_json::<InstanceFile>(path)?.to_instance().with_context(|| format!("instance {}", path.display()))
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    fs::write(path, to_json(&InstanceFile::from_instance(inst))?).with_context(|| format!("writing {}", path.display()))
}

pub fn read_schedule(path: &Path) -> Result<Schedule> {
    read_json::<ScheduleFile>(path)?.to_schedule().with_context(|| format!("schedule {}", path.display()))
}

pub fn write_schedule(path: &Path, s: &Schedule) -> Result<()> {
    fs::write(path, to_json(&ScheduleFile::from_schedule(s))?).with_context(|| format!("writing {}", path.display()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeHeatRecord {
    pub edge: usize,
    /// `None` when the edge never appears.
    pub recurrence: Option<u64>,
    pub heat: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeatReportFile {
    /// `None` means infinite.
    pub heat: Option<String>,
    pub gstar: String,
    pub per_edge: Vec<EdgeHeatRecord>,
}

impl HeatReportFile {
    pub fn new(report: &HeatReport, gstar: &Rational) -> Self {
        let per_edge = report
            .per_edge
            .iter()
            .enumerate()
            .map(|(edge, h)| EdgeHeatRecord {
                edge,
                recurrence: match h.recurrence {
                    Recurrence::Finite(r) => Some(r),
                    Recurrence::Infinite => None,
                },
                heat: h.contribution.as_ref().map(format_rational),
            })
            .collect();
        HeatReportFile { heat: report.heat.as_ref().map(format_rational), gstar: format_rational(gstar), per_edge }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReportFile {
    pub value: Option<String>,
    pub gstar: String,
    pub lower: String,
    pub upper: String,
    pub witness_z: Option<Vec<String>>,
    pub witness_y: Option<Vec<WeightedMatching>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedMatching {
    pub edges: Vec<usize>,
    pub y: String,
}

impl DensityReportFile {
    pub fn full(r: &DensityReport) -> Self {
        DensityReportFile {
            value: Some(format_rational(&r.value)),
            gstar: format_rational(&r.gstar),
            lower: format_rational(&r.lower),
            upper: format_rational(&r.upper),
            witness_z: Some(r.witness_z.z.iter().map(format_rational).collect()),
            witness_y: Some(
                r.witness_y
                    .matchings
                    .iter()
                    .zip(&r.witness_y.y)
                    .filter(|(_, y)| **y != Rational::default())
                    .map(|(m, y)| WeightedMatching { edges: m.clone(), y: format_rational(y) })
                    .collect(),
            ),
        }
    }

    pub fn bounds(lower: &Rational, upper: &Rational) -> Self {
        DensityReportFile {
            value: None,
            gstar: format_rational(lower),
            lower: format_rational(lower),
            upper: format_rational(upper),
            witness_z: None,
            witness_y: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetEdge {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub f: u64,
    pub role: String,
    pub expected: Vec<String>,
    pub fixed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetPerson {
    pub person: usize,
    pub sex: String,
    pub gadget: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub passed: bool,
    pub nodes: usize,
    pub edges: usize,
    pub budget: usize,
    pub max_frequency: Option<u64>,
    pub max_density: String,
    pub failures: Vec<String>,
}

impl StructureSummary {
    pub fn new(r: &StructureReport) -> Self {
        StructureSummary {
            passed: r.passed(),
            nodes: r.nodes,
            edges: r.edges,
            budget: r.budget,
            max_frequency: r.max_frequency,
            max_density: format_rational(&r.max_density),
            failures: r.failures.clone(),
        }
    }
}

/// Debugging sidecar for a compiled polycule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    pub formula: String,
    pub people: Vec<GadgetPerson>,
    pub edges: Vec<GadgetEdge>,
    pub structure: StructureSummary,
}

fn tag_name(t: GadgetTag) -> String {
    match t {
        GadgetTag::TrueClock => "true-clock".into(),
        GadgetTag::Var(i) => format!("var-{}", i + 1),
        GadgetTag::F3 => "flipper-3".into(),
        GadgetTag::F6 => "flipper-6".into(),
        GadgetTag::D3 => "duplicator-3".into(),
        GadgetTag::D6 => "duplicator-6".into(),
        GadgetTag::Inverter => "inverter".into(),
        GadgetTag::Or(j) => format!("or-{}", j + 1),
        GadgetTag::Fill => "fill".into(),
        GadgetTag::Tension => "tension".into(),
        GadgetTag::Pendant => "pendant".into(),
    }
}

impl GadgetMap {
    pub fn new(g: &GadgetGraph, structure: &StructureReport) -> Self {
        let people = (0..g.num_nodes())
            .map(|p| GadgetPerson {
                person: p,
                sex: match g.sex[p] {
                    Sex::Male => "male".into(),
                    Sex::Female => "female".into(),
                },
                gadget: tag_name(g.gadget_of[p]),
            })
            .collect();
        let edges = g
            .dps
            .graph()
            .edges()
            .iter()
            .map(|e| {
                let (expected, fixed) = match &g.expected_color[e.index] {
                    ExpectedColor::Fixed(c) => (vec![c.name().to_string()], true),
                    ExpectedColor::Free(cs) => (cs.iter().map(|c| c.name().to_string()).collect(), false),
                };
                GadgetEdge {
                    edge: e.index,
                    u: e.u,
                    v: e.v,
                    f: g.dps.f(e.index),
                    role: format!("{:?}", g.role[e.index]),
                    expected,
                    fixed,
                }
            })
            .collect();
        GadgetMap { formula: g.formula.to_dimacs(), people, edges, structure: StructureSummary::new(structure) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polysched_core::rational::ratio;

    #[test]
    fn rationals_round_trip() {
        for r in [ratio(1, 3), ratio(7, 1), ratio(22, 7)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert_eq!(parse_rational("4").unwrap(), ratio(4, 1));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn instance_round_trip() {
        let ops = OpsInstance::from_edges(3, &[(0, 1), (1, 2)], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let file = InstanceFile::from_instance(&Instance::Ops(ops.clone()));
        let text = to_json(&file).unwrap();
        assert!(text.contains("\"1/3\""));
        let back: InstanceFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_instance().unwrap().to_ops().growth(), ops.growth());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"kind":"dps","people":["a","b"],"edges":[{"u":0,"v":1,"f":2,"w":1}]}"#;
        let err = serde_json::from_str::<InstanceFile>(text).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
        assert!(err.line() == 1 && err.column() > 0);
        let mixed = r#"{"kind":"dps","people":["a","b"],"edges":[{"u":0,"v":1,"g":"1/2"}]}"#;
        assert!(serde_json::from_str::<InstanceFile>(mixed).unwrap().to_instance().is_err());
    }
}
