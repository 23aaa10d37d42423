//! Complete-intersection verdicts for `gr(R)` along the sufficient routes:
//! plane branches, monomial curves with three generators, and the three-case
//! families with a monomial-shaped Apéry basis under BF.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{element_order, CurveRing};
use crate::semigroup::{sg_three_gen_ci, CICase, CIClassification, CIRepresentation};
use crate::series::TruncatedSeries;

use super::cm::CMReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CIVerdict {
    Ci,
    NotCi,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CIRoute {
    PlaneBranch,
    MonomialClassification,
    /// `gr(R)` is not Cohen-Macaulay, hence not a complete intersection.
    NotCohenMacaulay,
    Section2Family,
    None,
}

/// The hypotheses verified for a three-generator family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub case: CICase,
    pub tag: String,
    pub representation: CIRepresentation,
    /// Generator playing the reduction `x`.
    pub x: String,
    /// Generator raised to `i < a`.
    pub p: String,
    /// Generator raised to `j < range_q`.
    pub q: String,
    pub range_q: u32,
    pub basis_values: Vec<u32>,
    pub basis_orders: Vec<u32>,
    pub values_match: bool,
    pub orders_match: bool,
    pub bf_certified: bool,
}

impl FamilyCheck {
    pub fn holds(&self) -> bool {
        self.values_match && self.orders_match && self.bf_certified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIReport {
    pub verdict: CIVerdict,
    pub route: CIRoute,
    pub classification: Option<CIClassification>,
    pub family: Option<FamilyCheck>,
    /// Every family representation examined, in preference order.
    pub attempts: Vec<FamilyCheck>,
}

/// `bf_certified` is the outcome of the BF search on `ring`.
pub fn ci_verdict(ring: &CurveRing, cm: &CMReport, bf_certified: bool) -> Result<CIReport> {
    let classification = if ring.semigroup().minimal_generators().len() <= 3 {
        Some(sg_three_gen_ci(ring.semigroup())?)
    } else {
        None
    };
    let report = |verdict, route, family, attempts| CIReport {
        verdict,
        route,
        classification: classification.clone(),
        family,
        attempts,
    };
    let out = if ring.embedding_dimension() <= 2 {
        report(CIVerdict::Ci, CIRoute::PlaneBranch, None, Vec::new())
    } else if ring.is_monomial() && classification.is_some() {
        let gr_ci = classification.as_ref().is_some_and(|c| c.gr_ci);
        let verdict = if gr_ci {
            CIVerdict::Ci
        } else {
            CIVerdict::NotCi
        };
        report(verdict, CIRoute::MonomialClassification, None, Vec::new())
    } else if !cm.cm {
        report(
            CIVerdict::NotCi,
            CIRoute::NotCohenMacaulay,
            None,
            Vec::new(),
        )
    } else if let (Some(class), 3) = (&classification, ring.generators().len()) {
        let mut reps: Vec<CIRepresentation> = class
            .representations
            .iter()
            .filter(|r| r.case != CICase::None)
            .copied()
            .collect();
        reps.sort_by_key(|r| r.case);
        let mut attempts = Vec::new();
        let mut found = None;
        for rep in reps {
            if let Some(check) = family_check(ring, rep, bf_certified)? {
                let ok = check.holds();
                attempts.push(check.clone());
                if ok {
                    found = Some(check);
                    break;
                }
            }
        }
        match found {
            Some(f) => report(CIVerdict::Ci, CIRoute::Section2Family, Some(f), attempts),
            None => report(CIVerdict::Unknown, CIRoute::None, None, attempts),
        }
    } else {
        report(CIVerdict::Unknown, CIRoute::None, None, Vec::new())
    };
    if out.verdict == CIVerdict::Ci && !cm.cm {
        return Err(Error::Defect(
            "complete intersection verdict on a non-CM ring".into(),
        ));
    }
    Ok(out)
}

/// Assigns the roles `(x, P, Q)` by generator values and checks that
/// `{P^i Q^j : i < a, j < range}` is an Apéry basis.
fn family_check(
    ring: &CurveRing,
    rep: CIRepresentation,
    bf_certified: bool,
) -> Result<Option<FamilyCheck>> {
    let CIRepresentation {
        n,
        a,
        b,
        n1,
        n2,
        case,
    } = rep;
    let (x_val, q_val, range_q) = match case {
        CICase::ALargeN1 => (n * a, n1 * a, n),
        CICase::ASmallN1 => (n1 * a, n * a, n1),
        CICase::B | CICase::C => (n * a, n1 * a + n2 * b, n),
        CICase::None => return Ok(None),
    };
    let p_val = n * b;
    let by_value = |v: u32| ring.generators().iter().find(|g| g.order() == Some(v));
    let (Some(x), Some(p), Some(q)) = (by_value(x_val), by_value(p_val), by_value(q_val)) else {
        return Ok(None);
    };
    if x_val != ring.multiplicity() {
        return Ok(None);
    }
    let e = ring.multiplicity();
    let w = ring.apery();
    let mut basis_values = vec![u32::MAX; e as usize];
    let mut basis_orders = vec![u32::MAX; e as usize];
    let mut values_match = a * range_q == e;
    if values_match {
        for i in 0..a {
            for j in 0..range_q {
                let elem: TruncatedSeries = p.pow(i)?.mul(&q.pow(j)?)?;
                let v = i * p_val + j * q_val;
                let class = (v % e) as usize;
                if basis_values[class] != u32::MAX || w[class] != v {
                    values_match = false;
                }
                basis_values[class] = v;
                basis_orders[class] = element_order(ring, &elem)?;
            }
        }
    }
    let b_vec = ring
        .apery()
        .iter()
        .map(|&wj| crate::ring::vord(ring, wj))
        .collect::<Result<Vec<_>>>()?;
    let orders_match = values_match && basis_orders == b_vec;
    Ok(Some(FamilyCheck {
        case,
        tag: case.tag().to_string(),
        representation: rep,
        x: x.to_string(),
        p: p.to_string(),
        q: q.to_string(),
        range_q,
        basis_values,
        basis_orders,
        values_match,
        orders_match,
        bf_certified,
    }))
}
