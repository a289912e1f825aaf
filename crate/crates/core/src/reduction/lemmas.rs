//! Exhaustive checks of the gadget schedule lemmas with the local oracle.
//!
//! Each gadget is rebuilt on its own: its internal people are constrained and every
//! boundary edge ends at an unconstrained stand-in for the rest of the polycule.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Graph, PersonId};
use crate::instance::DpsInstance;
use crate::oracle::{enumerate_local_schedules, slot_color, LocalGadget, SlotColor};
use crate::schedule::Schedule;
use crate::Result;

use SlotColor::{Blue, Green, Purple, Red};

pub const LEMMA_PERIOD: usize = 36;

/// Outcome of one enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCase {
    pub gadget: &'static str,
    pub case: String,
    pub schedules: usize,
    pub holds: bool,
}

#[derive(Default)]
struct Local {
    constrained: Vec<bool>,
    pairs: Vec<(PersonId, PersonId)>,
    freq: Vec<u64>,
    names: Vec<String>,
}

impl Local {
    fn node(&mut self, constrained: bool) -> PersonId {
        self.constrained.push(constrained);
        self.constrained.len() - 1
    }

    fn edge(&mut self, a: PersonId, b: PersonId, f: u64, name: &str) -> EdgeId {
        self.pairs.push((a, b));
        self.freq.push(f);
        self.names.push(name.to_string());
        self.pairs.len() - 1
    }

    /// Edge from `a` to a fresh unconstrained person.
    fn boundary(&mut self, a: PersonId, f: u64, name: &str) -> EdgeId {
        let b = self.node(false);
        self.edge(a, b, f, name)
    }

    fn finish(self) -> Result<LocalGadget> {
        let graph = Graph::new(self.constrained.len(), &self.pairs)?;
        Ok(LocalGadget { dps: DpsInstance::new(graph, self.freq)?, constrained: self.constrained, names: self.names })
    }
}

/// Colours of the days on which `e` occurs.
pub fn colors_of(s: &Schedule, e: EdgeId) -> Vec<SlotColor> {
    let mut out: Vec<SlotColor> =
        s.occurrences(e).into_iter().map(|t| slot_color(t as u64).expect("every day has a colour")).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn on_one_residue(s: &Schedule, e: EdgeId, f: u64) -> bool {
    let days = s.occurrences(e);
    days.iter().all(|&t| t as u64 % f == days[0] as u64 % f)
}

fn only(s: &Schedule, e: EdgeId, c: SlotColor) -> bool {
    colors_of(s, e) == [c]
}

fn other(c: SlotColor) -> SlotColor {
    match c {
        Red => Blue,
        Blue => Red,
        Green => Purple,
        Purple => Green,
    }
}

struct Runner {
    budget: u64,
    out: Vec<LemmaCase>,
}

impl Runner {
    fn run(
        &mut self,
        gadget: &'static str,
        case: String,
        g: &LocalGadget,
        pins: &[(EdgeId, Vec<SlotColor>)],
        check: impl Fn(&[Schedule]) -> bool,
    ) -> Result<()> {
        let all = enumerate_local_schedules(g, pins, LEMMA_PERIOD, self.budget)?;
        let holds = check(&all);
        self.out.push(LemmaCase { gadget, case, schedules: all.len(), holds });
        Ok(())
    }
}

/// A `[3, 3, 6, 6]` node, shared by the True Clock, variables and F6 flippers.
fn four_edge_node() -> Result<(LocalGadget, [EdgeId; 4])> {
    let mut l = Local::default();
    let x = l.node(true);
    let e = [l.boundary(x, 3, "3_a"), l.boundary(x, 3, "3_b"), l.boundary(x, 6, "6_in"), l.boundary(x, 6, "6_out")];
    Ok((l.finish()?, e))
}

fn true_clock(r: &mut Runner) -> Result<()> {
    let (g, [r3, b3, g6, p6]) = four_edge_node()?;
    let pins = [(r3, vec![Red]), (b3, vec![Blue]), (g6, vec![Green]), (p6, vec![Purple])];
    r.run("true-clock", "all four edges pinned".into(), &g, &pins, |all| all.len() == 1)?;
    r.run("true-clock", "only 3_R pinned red".into(), &g, &pins[..1], |all| {
        all.len() == 4 && all.iter().all(|s| [b3, g6, p6].iter().all(|&e| on_one_residue(s, e, g.dps.f(e))))
    })
}

fn variable_like(r: &mut Runner, gadget: &'static str) -> Result<()> {
    let (g, [a, b, input, output]) = four_edge_node()?;
    for c in [Green, Purple] {
        r.run(gadget, format!("6 input pinned {}", c.name()), &g, &[(input, vec![c])], |all| {
            all.len() == 2
                && all.iter().all(|s| {
                    only(s, output, other(c))
                        && colors_of(s, a).len() == 1
                        && colors_of(s, b).len() == 1
                        && colors_of(s, a) != colors_of(s, b)
                        && [Red, Blue].contains(&colors_of(s, a)[0])
                        && [Red, Blue].contains(&colors_of(s, b)[0])
                })
                && all.iter().any(|s| only(s, a, Red))
                && all.iter().any(|s| only(s, a, Blue))
        })?;
    }
    Ok(())
}

fn flipper3(r: &mut Runner) -> Result<()> {
    let (g, [i3, o3, i6, o6]) = four_edge_node()?;
    let pins = [(i3, vec![Red, Blue]), (i6, vec![Green, Purple])];
    r.run("flipper-3", "3 input red or blue, 6 input green or purple".into(), &g, &pins, |all| {
        all.len() == 4
            && all.iter().all(|s| {
                let (c3, c6) = (colors_of(s, i3), colors_of(s, i6));
                c3.len() == 1 && c6.len() == 1 && only(s, o3, other(c3[0])) && only(s, o6, other(c6[0]))
            })
    })
}

fn duplicator3(r: &mut Runner) -> Result<()> {
    let mut l = Local::default();
    let x = l.node(true);
    let input = l.boundary(x, 3, "3_in");
    let g6 = l.boundary(x, 6, "6_G");
    let p6 = l.boundary(x, 6, "6_P");
    let nines = [l.boundary(x, 9, "9_b"), l.boundary(x, 9, "9_b'"), l.boundary(x, 9, "9_b''")];
    let root = l.finish()?;
    for c in [Red, Blue] {
        let pins = [(input, vec![c]), (g6, vec![Green])];
        r.run("duplicator-3", format!("root, input {}", c.name()), &root, &pins, |all| {
            all.len() == 6 && all.iter().all(|s| only(s, p6, Purple) && nines.iter().all(|&e| only(s, e, other(c))))
        })?;
    }

    let mut l = Local::default();
    let x = l.node(true);
    let nine_in = l.boundary(x, 9, "9_in");
    let g6 = l.boundary(x, 6, "6_G");
    let p6 = l.boundary(x, 6, "6_P");
    let copy = l.boundary(x, 3, "3_a");
    let outs = [l.boundary(x, 9, "9_b'"), l.boundary(x, 9, "9_b''")];
    let child = l.finish()?;
    for c in [Blue, Red] {
        let pins = [(nine_in, vec![c]), (g6, vec![Green])];
        r.run("duplicator-3", format!("layer node, 9 input {}", c.name()), &child, &pins, |all| {
            all.len() == 6
                && all
                    .iter()
                    .all(|s| only(s, copy, other(c)) && only(s, p6, Purple) && outs.iter().all(|&e| only(s, e, c)))
        })?;
    }
    Ok(())
}

fn duplicator6(r: &mut Runner) -> Result<()> {
    for input in [Purple, Green] {
        let mut l = Local::default();
        let a = l.node(true);
        let b3 = l.boundary(a, 3, "3_B");
        let six = l.boundary(a, 6, "6_in");
        let r3 = l.boundary(a, 3, "3_R");
        let twelves = [l.boundary(a, 12, "12_1"), l.boundary(a, 12, "12_2")];
        let g = l.finish()?;
        let pins = [(b3, vec![Blue]), (six, vec![input])];
        r.run("duplicator-6", format!("first node, {} input", input.name()), &g, &pins, |all| {
            all.len() == 2 && all.iter().all(|s| only(s, r3, Red) && twelves.iter().all(|&e| only(s, e, other(input))))
        })?;

        let mut l = Local::default();
        let x = l.node(true);
        let r3 = l.boundary(x, 3, "3_R");
        let t_in = l.boundary(x, 12, "12_in");
        let b3 = l.boundary(x, 3, "3_B");
        let copy = l.boundary(x, 6, "6_copy");
        let t_out = l.boundary(x, 12, "12_out");
        let g = l.finish()?;
        let pins = [(r3, vec![Red]), (t_in, vec![other(input)])];
        r.run("duplicator-6", format!("later node, {} copies", input.name()), &g, &pins, |all| {
            all.len() == 2
                && all.iter().all(|s| only(s, b3, Blue) && only(s, copy, input) && only(s, t_out, other(input)))
        })?;
    }
    Ok(())
}

fn or_gadget(r: &mut Runner) -> Result<()> {
    let mut l = Local::default();
    let or = l.node(true);
    let mut inputs = [0; 3];
    for (k, input) in inputs.iter_mut().enumerate() {
        let inv = l.node(true);
        *input = l.boundary(inv, 3, &format!("3_{}", k + 1));
        l.edge(inv, or, 12, &format!("12_{}", k + 1));
    }
    let red = l.boundary(or, 3, "3_R");
    for k in 1..=2 {
        let fill = l.node(true);
        l.edge(or, fill, 6, &format!("6_{k}"));
    }
    let out = l.boundary(or, 12, "12_O");
    let g = l.finish()?;
    for mask in 0..8u32 {
        let colors: Vec<SlotColor> = (0..3).map(|k| if mask >> k & 1 == 1 { Red } else { Blue }).collect();
        let mut pins: Vec<(EdgeId, Vec<SlotColor>)> = inputs.iter().zip(&colors).map(|(&e, &c)| (e, vec![c])).collect();
        pins.push((red, vec![Red]));
        let any_red = mask != 0;
        let label = colors.iter().map(|c| c.name()).collect::<Vec<_>>().join(",");
        r.run("or", format!("inputs {label}"), &g, &pins, |all| {
            !all.is_empty() && all.iter().any(|s| only(s, out, Blue)) == any_red
        })?;
    }
    Ok(())
}

fn tension(r: &mut Runner) -> Result<()> {
    let mut l = Local::default();
    let x = l.node(true);
    let consts = [l.boundary(x, 3, "3_R"), l.boundary(x, 6, "6_G"), l.boundary(x, 6, "6_P")];
    let twelves = [
        l.boundary(x, 12, "12_O1"),
        l.boundary(x, 12, "12_O2"),
        l.boundary(x, 12, "12_O3"),
        l.boundary(x, 12, "12_O4"),
    ];
    let g = l.finish()?;
    let base: Vec<(EdgeId, Vec<SlotColor>)> =
        consts.iter().zip([Red, Green, Purple]).map(|(&e, c)| (e, vec![c])).collect();
    r.run("tension", "constants pinned, inputs free".into(), &g, &base, |all| {
        all.len() == 24 && all.iter().all(|s| twelves.iter().all(|&e| only(s, e, Blue)))
    })?;
    for c in [Red, Green, Purple] {
        let mut pins = base.clone();
        pins.push((twelves[0], vec![c]));
        r.run("tension", format!("one input pinned {}", c.name()), &g, &pins, |all| all.is_empty())?;
    }
    Ok(())
}

/// Runs every gadget lemma with the given search budget per enumeration.
pub fn verify_gadget_lemmas(budget: u64) -> Result<Vec<LemmaCase>> {
    let mut r = Runner { budget, out: Vec::new() };
    true_clock(&mut r)?;
    variable_like(&mut r, "variable")?;
    variable_like(&mut r, "flipper-6")?;
    flipper3(&mut r)?;
    duplicator3(&mut r)?;
    duplicator6(&mut r)?;
    or_gadget(&mut r)?;
    tension(&mut r)?;
    Ok(r.out)
}
