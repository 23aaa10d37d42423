use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{InvariantProfile, ReductionSpans};
use crate::ring::{lemma_sum_intersect_check, reduction_values, CurveRing, LemmaCheck};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialDivisibilityWitness {
    pub i: u32,
    pub value: u32,
    pub class: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialDivisibilityReport {
    pub holds: bool,
    pub reduction: String,
    /// `v(m^i ∩ xR) = v(m^i) ∩ v(xR)` for all `i ≤ r+1`.
    pub intersection_route: bool,
    /// `v(m^i + xR) = v(m^i) ∪ v(xR)` for all `i ≤ r+1`.
    pub sum_route: bool,
    /// `b_j = c_j` for all `j`.
    pub bc_route: bool,
    pub per_index: Vec<LemmaCheck>,
    pub witness: Option<EssentialDivisibilityWitness>,
}

pub fn check_essential_divisibility(
    ring: &CurveRing,
    spans: &ReductionSpans,
    profile: &InvariantProfile,
) -> Result<EssentialDivisibilityReport> {
    if spans.intersections.len() != spans.sums.len() {
        return Err(Error::Defect("intersection spans were not computed".into()));
    }
    let e = ring.multiplicity();
    let xr = reduction_values(ring);
    let mut per_index = Vec::new();
    let mut witness = None;
    for (sum, inter) in spans.sums.iter().zip(&spans.intersections) {
        let power = ring.power_values(sum.i);
        let check = lemma_sum_intersect_check(sum, inter, &power, &xr);
        if !check.equivalent() {
            return Err(Error::Defect(format!(
                "sum and intersection conditions disagree at i = {}",
                sum.i
            )));
        }
        if witness.is_none() && !check.sum_is_union {
            let union = power.union(&xr);
            let value = sum.values.first_outside(&union).ok_or_else(|| {
                Error::Defect(format!(
                    "v(m^{} + xR) strictly smaller than the union",
                    sum.i
                ))
            })?;
            witness = Some(EssentialDivisibilityWitness {
                i: sum.i,
                value,
                class: value % e,
            });
        }
        per_index.push(check);
    }
    let sum_route = per_index.iter().all(|c| c.sum_is_union);
    let intersection_route = per_index.iter().all(|c| c.intersection_is_intersection);
    let bc_route = profile.b == profile.c;
    if sum_route != bc_route || intersection_route != bc_route {
        return Err(Error::Defect(format!(
            "essential divisibility routes disagree: (2) {intersection_route}, (3) {sum_route}, (4) {bc_route}"
        )));
    }
    Ok(EssentialDivisibilityReport {
        holds: bc_route,
        reduction: spans.x.x.to_string(),
        intersection_route,
        sum_route,
        bc_route,
        per_index,
        witness,
    })
}
