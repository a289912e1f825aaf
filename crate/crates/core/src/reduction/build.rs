//! Compiles a 3-CNF formula into a bipartite DPS polycule.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Graph, PersonId};
use crate::instance::DpsInstance;
use crate::oracle::SlotColor;
use crate::reduction::cnf::{CnfFormula, Lit};
use crate::{Error, Result};

use SlotColor::{Blue, Green, Purple, Red};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sex {
    Male,
    Female,
}

impl Sex {
    pub fn opposite(self) -> Sex {
        match self {
            Sex::Male => Sex::Female,
            Sex::Female => Sex::Male,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GadgetTag {
    TrueClock,
    Var(usize),
    F3,
    F6,
    D3,
    D6,
    Inverter,
    Or(usize),
    Fill,
    Tension,
    Pendant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedColor {
    Fixed(SlotColor),
    /// Any of these colours, depending on the assignment or the local choice.
    Free(Vec<SlotColor>),
}

impl ExpectedColor {
    pub fn allows(&self, c: SlotColor) -> bool {
        match self {
            ExpectedColor::Fixed(x) => *x == c,
            ExpectedColor::Free(xs) => xs.contains(&c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    /// A constant 3_R, 3_B, 6_G or 6_P edge.
    Constant,
    /// A 3-edge that is red iff the literal is true.
    Literal(Lit),
    /// Internal 9-edges of a 3-duplicator and 12-edges of a 6-duplicator.
    Splitter,
    /// The two 3-edges hanging off an F6 flipper.
    FlipperPendant,
    InverterOutput,
    OrFill,
    OrOutput,
    /// A 12-edge filling an unused tension input.
    TensionPad,
}

/// Position of an edge's occurrences in the witness: days `≡ offset (mod f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Phase {
    Fixed(u64),
    Literal { lit: Lit, when_true: u64, when_false: u64 },
    Or,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrWiring {
    pub literals: [Option<Lit>; 3],
    pub inverter_out: [EdgeId; 3],
    pub fills: [EdgeId; 2],
    pub out: EdgeId,
    pub out_offset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    pub dps: DpsInstance,
    pub sex: Vec<Sex>,
    pub gadget_of: Vec<GadgetTag>,
    pub expected_color: Vec<ExpectedColor>,
    pub role: Vec<EdgeRole>,
    pub formula: CnfFormula,
    pub(crate) phase: Vec<Phase>,
    pub(crate) ors: Vec<OrWiring>,
}

impl GadgetGraph {
    pub fn num_nodes(&self) -> usize {
        self.dps.graph().num_people()
    }

    pub fn num_edges(&self) -> usize {
        self.dps.num_edges()
    }

    pub fn count(&self, tag: GadgetTag) -> usize {
        self.gadget_of.iter().filter(|&&t| t == tag).count()
    }

    pub fn count_where(&self, pred: impl Fn(GadgetTag) -> bool) -> usize {
        self.gadget_of.iter().filter(|&&t| pred(t)).count()
    }
}

/// A pending constant edge of frequency `color.period()` leaving `node`.
#[derive(Clone, Copy, Debug)]
struct End {
    node: PersonId,
    color: SlotColor,
}

#[derive(Clone, Copy, Debug)]
enum Signal {
    Const(SlotColor),
    Lit(Lit),
}

fn other(c: SlotColor) -> SlotColor {
    match c {
        Red => Blue,
        Blue => Red,
        Green => Purple,
        Purple => Green,
    }
}

const TENSION_OFFSETS: [u64; 4] = [1, 4, 7, 10];

struct Builder {
    sex: Vec<Sex>,
    tag: Vec<GadgetTag>,
    pairs: Vec<(PersonId, PersonId)>,
    freq: Vec<u64>,
    expected: Vec<ExpectedColor>,
    role: Vec<EdgeRole>,
    phase: Vec<Phase>,
    adjacent: BTreeSet<(PersonId, PersonId)>,
    main6: End,
    pool3: Vec<End>,
    pool6: Vec<End>,
}

impl Builder {
    fn node(&mut self, sex: Sex, tag: GadgetTag) -> PersonId {
        self.sex.push(sex);
        self.tag.push(tag);
        self.sex.len() - 1
    }

    fn edge(
        &mut self,
        a: PersonId,
        b: PersonId,
        f: u64,
        expected: ExpectedColor,
        role: EdgeRole,
        phase: Phase,
    ) -> EdgeId {
        debug_assert_ne!(self.sex[a], self.sex[b], "edges join opposite sexes");
        let fresh = self.adjacent.insert((a.min(b), a.max(b)));
        debug_assert!(fresh, "no parallel edges");
        self.pairs.push((a, b));
        self.freq.push(f);
        self.expected.push(expected);
        self.role.push(role);
        self.phase.push(phase);
        self.pairs.len() - 1
    }

    fn joined(&self, a: PersonId, b: PersonId) -> bool {
        self.adjacent.contains(&(a.min(b), a.max(b)))
    }

    fn pendant(&mut self, from: PersonId) -> PersonId {
        let s = self.sex[from].opposite();
        self.node(s, GadgetTag::Pendant)
    }

    fn constant(&mut self, end: End, to: PersonId) -> EdgeId {
        let c = end.color;
        self.edge(end.node, to, c.period(), ExpectedColor::Fixed(c), EdgeRole::Constant, Phase::Fixed(c.offset()))
    }

    fn signal(&mut self, from: PersonId, to: PersonId, s: Signal) -> EdgeId {
        match s {
            Signal::Const(c) => self.constant(End { node: from, color: c }, to),
            Signal::Lit(lit) => self.edge(
                from,
                to,
                3,
                ExpectedColor::Free(vec![Red, Blue]),
                EdgeRole::Literal(lit),
                Phase::Literal { lit, when_true: 0, when_false: 1 },
            ),
        }
    }

    /// 9-edge on residue class `r` of the colour opposite to the duplicated 3-signal.
    fn nine(&mut self, from: PersonId, to: PersonId, s: Signal, r: u64) -> EdgeId {
        let (expected, phase) = match s {
            Signal::Const(c) => (ExpectedColor::Fixed(other(c)), Phase::Fixed(other(c).offset() + 3 * r)),
            Signal::Lit(lit) => {
                (ExpectedColor::Free(vec![Red, Blue]), Phase::Literal { lit, when_true: 1 + 3 * r, when_false: 3 * r })
            }
        };
        self.edge(from, to, 9, expected, EdgeRole::Splitter, phase)
    }

    fn flip6(&mut self, end: End) -> End {
        let f6 = self.node(self.sex[end.node].opposite(), GadgetTag::F6);
        self.constant(end, f6);
        for c in [Red, Blue] {
            let p = self.pendant(f6);
            self.edge(
                f6,
                p,
                3,
                ExpectedColor::Free(vec![Red, Blue]),
                EdgeRole::FlipperPendant,
                Phase::Fixed(c.offset()),
            );
        }
        End { node: f6, color: other(end.color) }
    }

    /// Threads the main 6-line through `node`, inserting an F6 when sexes clash.
    fn pass6(&mut self, node: PersonId) {
        let mut end = self.main6;
        if self.joined(end.node, node) {
            end = self.flip6(end);
            end = self.flip6(end);
        } else if self.sex[end.node] == self.sex[node] {
            end = self.flip6(end);
        }
        self.constant(end, node);
        self.main6 = End { node, color: other(end.color) };
    }

    fn flip3(&mut self, end: End) -> End {
        let f3 = self.node(self.sex[end.node].opposite(), GadgetTag::F3);
        self.constant(end, f3);
        self.pass6(f3);
        End { node: f3, color: other(end.color) }
    }

    fn pass3(&mut self, thread: &mut End, node: PersonId) {
        if self.joined(thread.node, node) {
            *thread = self.flip3(*thread);
            *thread = self.flip3(*thread);
        } else if self.sex[thread.node] == self.sex[node] {
            *thread = self.flip3(*thread);
        }
        self.constant(*thread, node);
        *thread = End { node, color: other(thread.color) };
    }

    /// Takes a pending constant edge of `color` whose source has sex `src`, flipping one
    /// of the complementary kind if no exact match is left.
    fn take(&mut self, color: SlotColor, src: Sex) -> Result<End> {
        let six = color.period() == 6;
        let pool = if six { &mut self.pool6 } else { &mut self.pool3 };
        if let Some(i) = pool.iter().position(|e| e.color == color && self.sex[e.node] == src) {
            return Ok(pool.remove(i));
        }
        if let Some(i) = pool.iter().position(|e| e.color == other(color) && self.sex[e.node] != src) {
            let end = pool.remove(i);
            return Ok(if six { self.flip6(end) } else { self.flip3(end) });
        }
        Err(Error::Internal(alloc::format!("no {} edge left for a {:?} source", color.name(), src)))
    }

    /// A 3-duplicator tree on the signal leaving `input`. Returns the nodes carrying
    /// copies on odd levels (source sex equal to the input's) and on even levels.
    fn d3_tree(
        &mut self,
        input: PersonId,
        s: Signal,
        need_odd: usize,
        need_even: usize,
    ) -> (Vec<PersonId>, Vec<PersonId>) {
        let root = self.node(self.sex[input].opposite(), GadgetTag::D3);
        self.signal(input, root, s);
        self.pass6(root);
        let cap = |l: u32| 3usize << (l - 1);
        let (mut odd, mut even, mut levels) = (0, 0, 0u32);
        while odd < need_odd || even < need_even {
            levels += 1;
            if levels % 2 == 1 {
                odd += cap(levels);
            } else {
                even += cap(levels);
            }
        }
        let mut frontier: Vec<(PersonId, Vec<u64>)> = vec![(root, vec![0, 1, 2])];
        let (mut odd_nodes, mut even_nodes) = (Vec::new(), Vec::new());
        for l in 1..=levels {
            let target = if l < levels {
                cap(l)
            } else if l % 2 == 1 {
                need_odd - odd_nodes.len()
            } else {
                need_even - even_nodes.len()
            };
            let mut next = Vec::new();
            for (parent, spare) in core::mem::take(&mut frontier) {
                for r in spare {
                    if next.len() < target {
                        let child = self.node(self.sex[parent].opposite(), GadgetTag::D3);
                        self.nine(parent, child, s, r);
                        self.pass6(child);
                        next.push((child, [0, 1, 2].into_iter().filter(|&x| x != r).collect()));
                    } else {
                        let p = self.pendant(parent);
                        self.nine(parent, p, s, r);
                    }
                }
            }
            let list = if l % 2 == 1 { &mut odd_nodes } else { &mut even_nodes };
            list.extend(next.iter().map(|(n, _)| *n));
            frontier = next;
        }
        for (parent, spare) in frontier {
            for r in spare {
                let p = self.pendant(parent);
                self.nine(parent, p, s, r);
            }
        }
        (odd_nodes, even_nodes)
    }

    /// Routes a constant 3-signal from `end` into the pool, duplicating if needed.
    fn supply3(&mut self, end: End, need_odd: usize, need_even: usize) {
        if need_odd + need_even == 0 {
            let p = self.pendant(end.node);
            self.constant(end, p);
        } else if need_odd == 1 && need_even == 0 {
            self.pool3.push(end);
        } else {
            let (odd, even) = self.d3_tree(end.node, Signal::Const(end.color), need_odd, need_even);
            self.pool3.extend(odd.into_iter().chain(even).map(|node| End { node, color: end.color }));
        }
    }

    /// A 6-duplicator on `input`, threaded by a 3-line taken from the pool. Copies keep
    /// the input's colour; the internal 12-edges sit in the other 6-colour's slots.
    fn d6(&mut self, input: End, need_same: usize, need_opposite: usize) -> Result<()> {
        let mut thread = self.take(Blue, self.sex[input.node])?;
        let root = self.node(self.sex[input.node].opposite(), GadgetTag::D6);
        self.constant(input, root);
        self.pass3(&mut thread, root);
        let mut depth = 0usize;
        while 2 * depth.div_ceil(2) < need_same || 2 * (depth / 2) < need_opposite {
            depth += 1;
        }
        let base = other(input.color).offset();
        let mut copies: Vec<(usize, PersonId)> = Vec::new();
        for start in [base, base + 6] {
            let mut prev = root;
            let mut offset = start;
            for level in 1..=depth {
                let child = self.node(self.sex[prev].opposite(), GadgetTag::D6);
                self.edge(
                    prev,
                    child,
                    12,
                    ExpectedColor::Fixed(other(input.color)),
                    EdgeRole::Splitter,
                    Phase::Fixed(offset),
                );
                self.pass3(&mut thread, child);
                copies.push((level, child));
                offset = (offset + 6) % 12;
                prev = child;
            }
            let p = self.pendant(prev);
            self.edge(prev, p, 12, ExpectedColor::Fixed(other(input.color)), EdgeRole::Splitter, Phase::Fixed(offset));
        }
        copies.sort_by_key(|&(level, _)| level);
        self.pool6.extend(copies.into_iter().map(|(_, node)| End { node, color: input.color }));
        self.pool3.push(thread);
        Ok(())
    }
}

/// Compiles `phi` into a polycule that is schedulable iff `phi` is satisfiable.
///
/// Layout: the True Clock `T` (male) emits 3_R, 3_B, 6_G and 6_P. A main 6-line starts at
/// T's 6_G and threads every variable, 3-duplicator and F3 node, with F6 flippers wherever
/// two consecutive nodes share a sex. Literal edges leave male variable nodes and are
/// duplicated per occurrence; T's 3_R and 3_B are duplicated into the constants needed by
/// OR gadgets (female-sourced 3_R), tensions (male-sourced 3_R) and short clauses
/// (male-sourced 3_B). With two or more tensions T's 6_P feeds a 6-duplicator. Each
/// clause becomes an OR gadget whose 12_O feeds a tension node, four per tension.
/// Leftover outputs end at pendants.
pub fn build_polycule(phi: &CnfFormula) -> Result<GadgetGraph> {
    let phi = CnfFormula::new(phi.num_vars, phi.clauses.clone())?;
    let m = phi.clauses.len();
    let tensions = m.div_ceil(4);
    let pads: usize = phi.clauses.iter().map(|c| 3 - c.len()).sum();
    let use_d6 = tensions >= 2;

    let mut b = Builder {
        sex: Vec::new(),
        tag: Vec::new(),
        pairs: Vec::new(),
        freq: Vec::new(),
        expected: Vec::new(),
        role: Vec::new(),
        phase: Vec::new(),
        adjacent: BTreeSet::new(),
        main6: End { node: 0, color: Green },
        pool3: Vec::new(),
        pool6: Vec::new(),
    };
    let t = b.node(Sex::Male, GadgetTag::TrueClock);
    b.main6 = End { node: t, color: Green };

    let mut var_nodes = Vec::with_capacity(phi.num_vars);
    for i in 0..phi.num_vars {
        let x = b.node(Sex::Male, GadgetTag::Var(i));
        b.pass6(x);
        var_nodes.push(x);
    }

    let mut occurrences: BTreeMap<Lit, usize> = BTreeMap::new();
    for lit in phi.clauses.iter().flatten() {
        *occurrences.entry(*lit).or_default() += 1;
    }
    let mut signals: BTreeMap<Lit, Vec<PersonId>> = BTreeMap::new();
    for (i, &x) in var_nodes.iter().enumerate() {
        for lit in [Lit::pos(i), Lit::neg(i)] {
            let k = occurrences.get(&lit).copied().unwrap_or(0);
            let nodes = match k {
                0 => {
                    let p = b.pendant(x);
                    b.signal(x, p, Signal::Lit(lit));
                    Vec::new()
                }
                1 => vec![x],
                _ => {
                    let (odd, even) = b.d3_tree(x, Signal::Lit(lit), k, 0);
                    for node in even {
                        let p = b.pendant(node);
                        b.signal(node, p, Signal::Lit(lit));
                    }
                    odd
                }
            };
            signals.insert(lit, nodes);
        }
    }

    b.supply3(End { node: t, color: Red }, tensions, m);
    b.supply3(End { node: t, color: Blue }, pads + usize::from(use_d6), 0);
    let t6p = End { node: t, color: Purple };
    if use_d6 {
        b.d6(t6p, tensions, tensions - 1)?;
    } else {
        b.pool6.push(t6p);
    }

    let mut ors = Vec::with_capacity(m);
    let mut or_nodes = Vec::with_capacity(m);
    for (j, clause) in phi.clauses.iter().enumerate() {
        let or = b.node(Sex::Male, GadgetTag::Or(j));
        let mut literals = [None; 3];
        let mut inverter_out = [0; 3];
        for k in 0..3 {
            let inv = b.node(Sex::Female, GadgetTag::Inverter);
            if let Some(&lit) = clause.get(k) {
                let src = signals.get_mut(&lit).expect("every literal has signals").remove(0);
                b.signal(src, inv, Signal::Lit(lit));
                literals[k] = Some(lit);
            } else {
                let end = b.take(Blue, Sex::Male)?;
                b.constant(end, inv);
            }
            inverter_out[k] = b.edge(
                inv,
                or,
                12,
                ExpectedColor::Free(vec![Blue, Green, Purple]),
                EdgeRole::InverterOutput,
                Phase::Or,
            );
        }
        let end = b.take(Red, Sex::Female)?;
        b.constant(end, or);
        let mut fills = [0; 2];
        for fill in fills.iter_mut() {
            let f = b.node(Sex::Female, GadgetTag::Fill);
            *fill = b.edge(or, f, 6, ExpectedColor::Free(vec![Blue, Green]), EdgeRole::OrFill, Phase::Or);
        }
        or_nodes.push(or);
        ors.push(OrWiring { literals, inverter_out, fills, out: 0, out_offset: 0 });
    }

    let mut tension_nodes = Vec::with_capacity(tensions);
    for chunk in 0..tensions {
        let tn = b.node(Sex::Female, GadgetTag::Tension);
        for (slot, &offset) in TENSION_OFFSETS.iter().enumerate() {
            let j = 4 * chunk + slot;
            if j < m {
                let e = b.edge(or_nodes[j], tn, 12, ExpectedColor::Fixed(Blue), EdgeRole::OrOutput, Phase::Or);
                ors[j].out = e;
                ors[j].out_offset = offset;
            } else {
                let p = b.pendant(tn);
                b.edge(tn, p, 12, ExpectedColor::Fixed(Blue), EdgeRole::TensionPad, Phase::Fixed(offset));
            }
        }
        let end = b.take(Red, Sex::Male)?;
        b.constant(end, tn);
        tension_nodes.push(tn);
    }
    let main = b.main6;
    b.pool6.push(main);
    for &tn in &tension_nodes {
        for color in [Green, Purple] {
            let end = b.take(color, Sex::Male)?;
            b.constant(end, tn);
        }
    }

    for end in core::mem::take(&mut b.pool3).into_iter().chain(core::mem::take(&mut b.pool6)) {
        let p = b.pendant(end.node);
        b.constant(end, p);
    }
    for (lit, nodes) in core::mem::take(&mut signals) {
        for src in nodes {
            let p = b.pendant(src);
            b.signal(src, p, Signal::Lit(lit));
        }
    }

    let labels = vec![None; b.sex.len()];
    let dps = DpsInstance::new(Graph::with_labels(labels, &b.pairs)?, b.freq)?;
    Ok(GadgetGraph {
        dps,
        sex: b.sex,
        gadget_of: b.tag,
        expected_color: b.expected,
        role: b.role,
        formula: phi,
        phase: b.phase,
        ors,
    })
}
