//! Conversions between OPS and DPS instances.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::instance::{DpsInstance, OpsInstance};
use crate::rational::{floor_u64, recip, Rational};
use crate::{Error, Result};

/// DPS instance whose feasible schedules have heat at most `h` on `inst`:
/// `f_e = floor(h / g(e))`.
pub fn ops_to_dps(inst: &OpsInstance, h: &Rational) -> Result<DpsInstance> {
    if let Some(max_growth) = inst.max_growth() {
        if h < max_growth {
            return Err(Error::HeatUnreachable { heat: Box::new(h.clone()), max_growth: Box::new(max_growth.clone()) });
        }
    }
    let freq = inst
        .growth()
        .iter()
        .enumerate()
        .map(|(edge, g)| floor_u64(&(h / g)).ok_or(Error::FrequencyOverflow { edge }))
        .collect::<Result<Vec<u64>>>()?;
    DpsInstance::new(inst.graph().clone(), freq)
}

/// OPS instance with `g(e) = 1/f_e`.
pub fn dps_to_ops(inst: &DpsInstance) -> OpsInstance {
    let growth = inst.freq().iter().map(|&f| recip(f)).collect();
    OpsInstance::new(inst.graph().clone(), growth).expect("reciprocals of positive integers are positive")
}
