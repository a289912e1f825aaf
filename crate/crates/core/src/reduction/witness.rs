//! Period-36 schedules for polycules of satisfiable formulas.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::EdgeId;
use crate::oracle::slot_color;
use crate::reduction::build::{GadgetGraph, Phase};
use crate::reduction::cnf::Assignment;
use crate::schedule::{validate_dps, Schedule};
use crate::{Error, Result};

pub const WITNESS_PERIOD: u64 = 36;

/// Builds the slot-respecting schedule in which each literal edge is red iff its literal
/// is true. Fails with [`Error::UnsatisfiedClause`] if `a` leaves a clause false.
pub fn witness_schedule(g: &GadgetGraph, a: &Assignment) -> Result<Schedule> {
    if a.values.len() != g.formula.num_vars {
        return Err(Error::LengthMismatch { expected: g.formula.num_vars, got: a.values.len() });
    }
    if let Some(clause) = g.formula.first_unsatisfied(a) {
        return Err(Error::UnsatisfiedClause { clause });
    }
    let m = g.num_edges();
    let mut offset: Vec<Option<u64>> = g
        .phase
        .iter()
        .map(|p| match *p {
            Phase::Fixed(o) => Some(o),
            Phase::Literal { lit, when_true, when_false } => Some(if lit.value(a) { when_true } else { when_false }),
            Phase::Or => None,
        })
        .collect();
    for or in &g.ors {
        let t = or.literals.iter().position(|l| l.is_some_and(|l| l.value(a))).expect("clause is satisfied");
        let b = or.out_offset;
        offset[or.out] = Some(b);
        let mut spare = [5u64, 11].into_iter();
        for (k, &e) in or.inverter_out.iter().enumerate() {
            offset[e] = Some(if k == t { (b + 6) % 12 } else { spare.next().expect("two spare purple slots") });
        }
        offset[or.fills[0]] = Some(2);
        offset[or.fills[1]] = Some(if b % 6 == 1 { 4 } else { 1 });
    }
    let freq = g.dps.freq();
    let mut days = vec![Vec::new(); WITNESS_PERIOD as usize];
    for e in 0..m {
        let o = offset[e].ok_or_else(|| Error::Internal(format!("edge {e} has no phase")))?;
        let f = freq[e];
        let mut t = o % f;
        while t < WITNESS_PERIOD {
            days[t as usize].push(e);
            t += f;
        }
    }
    let sched = Schedule::new(days)?;
    if let Some(v) = validate_dps(&sched, &g.dps).first() {
        return Err(Error::Internal(format!("witness is invalid: {v}")));
    }
    if let Some((e, t)) = slot_violations(g, &sched).first() {
        return Err(Error::Internal(format!("witness puts edge {e} in the wrong slot on day {t}")));
    }
    Ok(sched)
}

/// Occurrences `(edge, day)` that fall outside the edge's expected colours.
pub fn slot_violations(g: &GadgetGraph, sched: &Schedule) -> Vec<(EdgeId, usize)> {
    let mut out = Vec::new();
    for (t, day) in sched.days().iter().enumerate() {
        let c = slot_color(t as u64).expect("every day has a colour");
        for &e in day {
            if g.expected_color.get(e).is_some_and(|x| !x.allows(c)) {
                out.push((e, t));
            }
        }
    }
    out
}

pub fn is_slot_respecting(g: &GadgetGraph, sched: &Schedule) -> bool {
    sched.period().is_multiple_of(6) && slot_violations(g, sched).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::build::{build_polycule, EdgeRole};
    use crate::reduction::cnf::{CnfFormula, Lit};

    fn literal_edge_into_or_layer(g: &GadgetGraph, lit: Lit) -> EdgeId {
        (0..g.num_edges()).find(|&e| g.role[e] == EdgeRole::Literal(lit)).expect("literal edge exists")
    }

    #[test]
    fn positive_unit_clause() {
        let phi = CnfFormula::from_dimacs_clauses(1, &[&[1]]).unwrap();
        let g = build_polycule(&phi).unwrap();
        let s = witness_schedule(&g, &Assignment { values: vec![true] }).unwrap();
        assert_eq!(s.period(), 36);
        let e = literal_edge_into_or_layer(&g, Lit::pos(0));
        assert!(s.occurrences(e).iter().all(|t| t % 3 == 0));
        assert!(is_slot_respecting(&g, &s));
        assert!(matches!(
            witness_schedule(&g, &Assignment { values: vec![false] }),
            Err(Error::UnsatisfiedClause { clause: 0 })
        ));
    }

    #[test]
    fn negative_unit_clause() {
        let phi = CnfFormula::from_dimacs_clauses(1, &[&[-1]]).unwrap();
        let g = build_polycule(&phi).unwrap();
        let s = witness_schedule(&g, &Assignment { values: vec![false] }).unwrap();
        let e = literal_edge_into_or_layer(&g, Lit::neg(0));
        assert!(s.occurrences(e).iter().all(|t| t % 3 == 0));
        assert!(validate_dps(&s, &g.dps).is_empty());
    }

    #[test]
    fn two_literal_clause_output_is_blue() {
        let phi = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let g = build_polycule(&phi).unwrap();
        let s = witness_schedule(&g, &Assignment { values: vec![false, true] }).unwrap();
        let out = g.ors[0].out;
        assert!(s.occurrences(out).iter().all(|t| t % 3 == 1));
        assert!(is_slot_respecting(&g, &s));
    }

    #[test]
    fn every_satisfying_assignment_of_small_formulas() {
        let phi = CnfFormula::from_dimacs_clauses(
            3,
            &[&[1, 2, 3], &[-1, 2], &[-2, -3], &[1, 3], &[-1, 2, 3], &[2], &[1, -3]],
        )
        .unwrap();
        let g = build_polycule(&phi).unwrap();
        let mut found = 0;
        for bits in 0..8u32 {
            let a = Assignment { values: (0..3).map(|v| bits >> v & 1 == 1).collect() };
            match witness_schedule(&g, &a) {
                Ok(s) => {
                    assert!(phi.satisfied_by(&a));
                    assert!(validate_dps(&s, &g.dps).is_empty());
                    found += 1;
                }
                Err(Error::UnsatisfiedClause { .. }) => assert!(!phi.satisfied_by(&a)),
                Err(e) => panic!("{e}"),
            }
        }
        assert!(found > 0);
    }
}
