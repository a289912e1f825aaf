//! Poly density: the fractional lower bound on optimal heat, solved exactly.

mod matching;
pub mod simplex;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::convert::dps_to_ops;
use crate::graph::EdgeId;
use crate::instance::{DpsInstance, OpsInstance};
use crate::rational::{ratio, recip, Rational};
use crate::schedule::gstar;
use crate::{Error, Result};

pub use matching::{enumerate_maximal_matchings, MatchingSet, DEFAULT_EDGE_LIMIT};

/// Weights on edges summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    pub z: Vec<Rational>,
}

/// A fractional schedule: weight `y[i]` on maximal matching `matchings[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSchedule {
    pub matchings: Vec<Vec<EdgeId>>,
    pub y: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub value: Rational,
    pub witness_z: Weighting,
    pub witness_y: FractionalSchedule,
    pub gstar: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl DensityReport {
    pub fn within_bounds(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }

    /// The value meets `3/2·G*` exactly.
    pub fn attains_upper(&self) -> bool {
        self.value == self.upper
    }
}

/// `(G*, 3/2·G*)`; works at any size.
pub fn density_bounds(inst: &OpsInstance) -> Result<(Rational, Rational)> {
    let g = gstar(inst)?;
    let upper = &g * ratio(3, 2);
    Ok((g, upper))
}

/// Exact poly density of an OPS instance.
///
/// The weighting side maximises `Σ g_e w_e` subject to `w(M) ≤ 1` for every maximal
/// matching; its optimum is the density and `z_e = g_e w_e / value`. The fractional
/// schedule side maximises `λ` subject to `λ g_e ≤ Σ_{M∋e} y_M` and `Σ y_M ≤ 1`; its
/// optimum is the reciprocal of the density. Both are solved and must agree.
pub fn poly_density_ops(inst: &OpsInstance, edge_limit: usize) -> Result<DensityReport> {
    let (lower, upper) = density_bounds(inst)?;
    let set = enumerate_maximal_matchings(inst.graph(), edge_limit)?;
    let m = inst.num_edges();
    let k = set.len();

    let rows: Vec<Vec<Rational>> = set
        .matchings
        .iter()
        .map(|mm| {
            let mut row = vec![Rational::zero(); m];
            for &e in mm {
                row[e] = Rational::one();
            }
            row
        })
        .collect();
    let weights = simplex::maximize(inst.growth(), &rows, &vec![Rational::one(); k])?;
    let value = weights.value.clone();
    let z: Vec<Rational> = (0..m).map(|e| inst.g(e) * &weights.x[e] / &value).collect();

    // Variables: λ then y_M.
    let mut c = vec![Rational::zero(); k + 1];
    c[0] = Rational::one();
    let mut a = Vec::with_capacity(m + 1);
    for e in 0..m {
        let mut row = vec![Rational::zero(); k + 1];
        row[0] = inst.g(e).clone();
        for (i, mm) in set.matchings.iter().enumerate() {
            if mm.binary_search(&e).is_ok() {
                row[i + 1] = -Rational::one();
            }
        }
        a.push(row);
    }
    let mut total = vec![Rational::one(); k + 1];
    total[0] = Rational::zero();
    a.push(total);
    let mut b = vec![Rational::zero(); m];
    b.push(Rational::one());
    let schedule = simplex::maximize(&c, &a, &b)?;
    let lambda = schedule.value.clone();
    if lambda.is_zero() || lambda.recip() != value {
        return Err(Error::Internal(alloc::format!(
            "duality gap: weighting optimum {value}, fractional schedule optimum 1/{lambda}"
        )));
    }
    Ok(DensityReport {
        value,
        witness_z: Weighting { z },
        witness_y: FractionalSchedule { matchings: set.matchings, y: schedule.x[1..].to_vec() },
        gstar: lower.clone(),
        lower,
        upper,
    })
}

/// DPS density: the OPS density with `g_e = 1/f_e`.
pub fn poly_density_dps(inst: &DpsInstance, edge_limit: usize) -> Result<DensityReport> {
    poly_density_ops(&dps_to_ops(inst), edge_limit)
}

/// `Σ 1/f_e` for a star (all edges share one person).
pub fn star_density(inst: &DpsInstance) -> Result<Rational> {
    let edges = inst.graph().edges();
    let Some(first) = edges.first() else {
        return Err(Error::NoEdges);
    };
    let is_star = [first.u, first.v].iter().any(|&c| edges.iter().all(|e| e.touches(c)));
    if !is_star {
        return Err(Error::NotAStar);
    }
    Ok(inst.freq().iter().map(|&f| recip(f)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn star(g: Vec<Rational>) -> OpsInstance {
        let edges: Vec<_> = (1..=g.len()).map(|l| (0, l)).collect();
        OpsInstance::from_edges(g.len() + 1, &edges, g).unwrap()
    }

    #[test]
    fn ops_examples() {
        let r = poly_density_ops(&star(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]), 20).unwrap();
        assert_eq!(r.value, ratio(1, 1));
        assert_eq!(r.value, r.gstar);
        let single = poly_density_ops(&star(vec![ratio(1, 1)]), 20).unwrap();
        assert_eq!(single.value, ratio(1, 1));
        let tri = OpsInstance::from_edges(3, &[(0, 1), (1, 2), (0, 2)], vec![ratio(1, 1); 3]).unwrap();
        let r = poly_density_ops(&tri, 20).unwrap();
        assert_eq!(r.value, ratio(3, 1));
        assert_eq!(r.witness_z.z, vec![ratio(1, 3); 3]);
        assert!(r.attains_upper());
        assert_eq!(r.witness_y.y.iter().sum::<Rational>(), ratio(1, 1));
    }

    #[test]
    fn dps_examples() {
        for (f, d) in [(vec![2, 4, 4], ratio(1, 1)), (vec![3, 3, 3], ratio(1, 1)), (vec![8, 12], ratio(5, 24))] {
            let inst = DpsInstance::star(&f).unwrap();
            assert_eq!(poly_density_dps(&inst, 20).unwrap().value, d);
            assert_eq!(star_density(&inst).unwrap(), d);
        }
        // two edges f=(2,2) sharing a person: every maximal matching is a single edge
        let path = DpsInstance::from_edges(3, &[(0, 1), (1, 2)], vec![2, 2]).unwrap();
        assert_eq!(poly_density_dps(&path, 20).unwrap().value, ratio(1, 1));
    }

    #[test]
    fn star_density_examples() {
        assert_eq!(star_density(&DpsInstance::star(&[2, 3, 6]).unwrap()), Ok(ratio(1, 1)));
        assert_eq!(star_density(&DpsInstance::star(&[2, 2]).unwrap()), Ok(ratio(1, 1)));
        let path3 = DpsInstance::from_edges(4, &[(0, 1), (1, 2), (2, 3)], vec![2, 2, 2]).unwrap();
        assert_eq!(star_density(&path3), Err(Error::NotAStar));
    }

    #[test]
    fn bounds_examples() {
        let tri = OpsInstance::from_edges(3, &[(0, 1), (1, 2), (0, 2)], vec![ratio(1, 1); 3]).unwrap();
        assert_eq!(density_bounds(&tri), Ok((ratio(2, 1), ratio(3, 1))));
        assert_eq!(density_bounds(&star(vec![ratio(1, 1), ratio(2, 1)])), Ok((ratio(3, 1), ratio(9, 2))));
    }

    #[test]
    fn scale_covariance() {
        let inst = OpsInstance::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)],
            vec![ratio(1, 2), ratio(1, 3), ratio(1, 1), ratio(2, 5), ratio(1, 7), ratio(3, 4)],
        )
        .unwrap();
        let base = poly_density_ops(&inst, 20).unwrap();
        let c = ratio(7, 3);
        let scaled = poly_density_ops(&inst.scaled_down(&c.recip()), 20).unwrap();
        assert_eq!(scaled.value, &base.value * c);
        assert!(base.within_bounds());
    }
}
