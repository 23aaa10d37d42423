//! The BF condition: `Ap(v(m^i)) = {v(x^{h_j} f_j)}` with `x^{h_j} f_j ∈ m^i`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::ReductionSpans;
use crate::ring::{
    apery_basis_extract, power_span, reduction_from_series, vord, CurveRing, ReductionElement,
};
use crate::series::TruncatedSeries;

pub const DEFAULT_BUDGET: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFCertificate {
    pub i: u32,
    pub class: u32,
    pub h: u32,
    pub value: u32,
    pub member: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BFVerdict {
    Holds,
    /// The given `(x, basis)` pair fails; says nothing about other pairs.
    FailsForWitness,
    /// Every pair in the budgeted search failed; not a refutation.
    NoWitnessWithinBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BFMethod {
    Given,
    SemigroupAlgebra,
    ReductionNumber,
    EmbeddingDimension,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFReport {
    pub holds: bool,
    pub verdict: BFVerdict,
    pub method: BFMethod,
    pub reduction: String,
    pub basis: Vec<String>,
    pub certificates: Vec<BFCertificate>,
    pub failures: Vec<BFCertificate>,
    pub witness: Option<BFCertificate>,
    pub reductions_tried: usize,
    pub bases_tried: usize,
    pub budget: usize,
}

/// A checked pair together with the elements that were checked.
#[derive(Clone, Debug)]
pub struct BFOutcome {
    pub report: BFReport,
    pub x: ReductionElement,
    pub basis: Vec<TruncatedSeries>,
}

/// Tests condition (2) for `i ≤ r+1`; `basis` is class-indexed with
/// `v(f_j) = w_j`.
pub fn check_bf(
    ring: &CurveRing,
    x: &ReductionElement,
    basis: &[TruncatedSeries],
) -> Result<BFReport> {
    let e = ring.multiplicity();
    let w = ring.apery();
    if basis.len() != e as usize {
        return Err(Error::InvalidBasis(format!("expected {e} elements")));
    }
    for (j, f) in basis.iter().enumerate() {
        if f.order() != Some(w[j]) {
            return Err(Error::InvalidBasis(format!(
                "element {f} of class {j} does not have value {}",
                w[j]
            )));
        }
    }
    let mut certificates = Vec::new();
    for i in 0..=ring.reduction_number() + 1 {
        let ap = ring.power_apery(i);
        for j in 0..e as usize {
            let h = (ap[j] - w[j]) / e;
            let elem = x.x.pow(h)?.mul(&basis[j])?;
            certificates.push(BFCertificate {
                i,
                class: j as u32,
                h,
                value: ap[j],
                member: ring.in_power(&elem, i)?,
            });
        }
    }
    let failures: Vec<BFCertificate> = certificates.iter().filter(|c| !c.member).cloned().collect();
    let holds = failures.is_empty();
    Ok(BFReport {
        holds,
        verdict: if holds {
            BFVerdict::Holds
        } else {
            BFVerdict::FailsForWitness
        },
        method: BFMethod::Given,
        reduction: x.x.to_string(),
        basis: basis.iter().map(|f| f.to_string()).collect(),
        witness: failures.first().cloned(),
        certificates,
        failures,
        reductions_tried: 1,
        bases_tried: 1,
        budget: 1,
    })
}

/// Candidate reductions: the default, other generators of value `e`, and
/// `x + λ·g` for higher generators `g`, `λ ∈ {1, -1, 2, -2}`.
pub fn reduction_candidates(ring: &CurveRing) -> Vec<ReductionElement> {
    let e = ring.multiplicity();
    let default = ring.default_x();
    let mut out = vec![default.clone()];
    let mut seen: HashSet<String> = HashSet::from([default.x.to_string()]);
    let mut push = |s: TruncatedSeries, out: &mut Vec<ReductionElement>| {
        if seen.insert(s.to_string()) {
            if let Ok(x) = reduction_from_series(ring, s) {
                out.push(x);
            }
        }
    };
    for g in ring.generators() {
        if g.order() == Some(e) {
            push(g.clone(), &mut out);
        }
    }
    let field = ring.field();
    for g in ring.generators().iter().filter(|g| g.order() > Some(e)) {
        for lambda in [1, -1, 2, -2] {
            let s = default
                .x
                .add(&g.scale(&field.from_i64(lambda)))
                .expect("same field");
            push(s, &mut out);
        }
    }
    out
}

/// The basis built by descending from `m^{r+1}`: divide by `x`, and while the
/// value is still in `v(xR)` re-select an element of `m^i ∩ xR` of maximal
/// order. Returns a description of the first obstruction otherwise.
pub fn descent_basis(
    ring: &CurveRing,
    spans: &ReductionSpans,
) -> Result<std::result::Result<Vec<TruncatedSeries>, String>> {
    let e = ring.multiplicity();
    let top = ring.reduction_number() + 1;
    let start = power_span(ring, top)?;
    let mut basis = Vec::with_capacity(e as usize);
    for (j, &w) in ring.apery().iter().enumerate() {
        let mut value = start.apery[j];
        let mut elem = start
            .element_of_value(value)
            .ok_or_else(|| Error::Defect(format!("no element of value {value} in m^{top}")))?;
        loop {
            let quotient = ring.quotient(&elem, &spans.x.x)?;
            let v = value - e;
            if v == w {
                basis.push(quotient);
                break;
            }
            let i = vord(ring, v)?;
            let Some(span) = spans.intersections.get(i as usize) else {
                return Ok(Err(format!(
                    "class {j}: value {v} needs m^{i} ∩ xR, beyond r+1"
                )));
            };
            match span.element_of_value(v) {
                Some(b) => {
                    elem = b;
                    value = v;
                }
                None => {
                    return Ok(Err(format!(
                        "class {j}: no element of m^{i} ∩ xR has value {v}"
                    )))
                }
            }
        }
    }
    Ok(Ok(basis))
}

/// Decides BF on the fast paths and otherwise searches `(x, basis)` pairs.
pub fn bf_auto(ring: &CurveRing, budget: usize) -> Result<BFOutcome> {
    let x0 = ring.default_x();
    let extracted = apery_basis_extract(ring)?.elements;
    let first = check_bf(ring, &x0, &extracted)?;
    let fast = if ring.is_monomial() {
        Some(BFMethod::SemigroupAlgebra)
    } else if ring.reduction_number() <= 2 {
        Some(BFMethod::ReductionNumber)
    } else {
        None
    };
    if let Some(method) = fast {
        if !first.holds {
            return Err(Error::Defect(format!(
                "BF fails on the {method:?} fast path at {:?}",
                first.witness
            )));
        }
        return Ok(BFOutcome {
            report: BFReport {
                method,
                budget,
                ..first
            },
            x: x0,
            basis: extracted,
        });
    }
    let method = if ring.embedding_dimension() <= 2 {
        BFMethod::EmbeddingDimension
    } else {
        BFMethod::Search
    };
    search(ring, budget, method, first, x0, extracted)
}

fn search(
    ring: &CurveRing,
    budget: usize,
    method: BFMethod,
    first: BFReport,
    x0: ReductionElement,
    extracted: Vec<TruncatedSeries>,
) -> Result<BFOutcome> {
    let mut tried = 1usize;
    let mut reductions_tried = 1usize;
    let finish = |report: BFReport, tried: usize, reductions: usize| BFReport {
        method,
        budget,
        bases_tried: tried,
        reductions_tried: reductions,
        ..report
    };
    if first.holds {
        return Ok(BFOutcome {
            report: finish(first, tried, reductions_tried),
            x: x0,
            basis: extracted,
        });
    }
    let reductions = reduction_candidates(ring);
    for (k, x) in reductions.iter().enumerate() {
        if tried >= budget {
            break;
        }
        if k > 0 {
            reductions_tried += 1;
        }
        for basis in basis_candidates(ring, x, &extracted, budget - tried)? {
            if k == 0 && basis == extracted {
                continue;
            }
            if tried >= budget {
                break;
            }
            tried += 1;
            let report = check_bf(ring, x, &basis)?;
            if report.holds {
                return Ok(BFOutcome {
                    report: finish(report, tried, reductions_tried),
                    x: x.clone(),
                    basis,
                });
            }
        }
    }
    Ok(BFOutcome {
        report: BFReport {
            holds: false,
            verdict: BFVerdict::NoWitnessWithinBudget,
            ..finish(first, tried, reductions_tried)
        },
        x: x0,
        basis: extracted,
    })
}

/// Bases to try with `x`, at most `limit`: the extracted one, greedy repairs
/// `f_j ← g/x^h` at the first failure, the descent basis, then single-class
/// perturbations `f_j ± ρ` by higher rows `ρ` of `m^{b_j}`.
fn basis_candidates(
    ring: &CurveRing,
    x: &ReductionElement,
    extracted: &[TruncatedSeries],
    limit: usize,
) -> Result<Vec<Vec<TruncatedSeries>>> {
    let mut out: Vec<Vec<TruncatedSeries>> = vec![extracted.to_vec()];
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    seen.insert(extracted.iter().map(|f| f.to_string()).collect());

    let mut current = extracted.to_vec();
    while out.len() < limit {
        let report = check_bf(ring, x, &current)?;
        let Some(fail) = report.witness else { break };
        let j = fail.class as usize;
        let g = power_span(ring, fail.i)?
            .element_of_value(fail.value)
            .ok_or_else(|| Error::Defect(format!("no element of value {}", fail.value)))?;
        let q = ring.quotient(&g, &x.x.pow(fail.h)?)?;
        if !ring.contains(&q)? {
            break;
        }
        current[j] = q;
        if !seen.insert(current.iter().map(|f| f.to_string()).collect()) {
            break;
        }
        out.push(current.clone());
    }

    if out.len() < limit {
        let spans = ReductionSpans::compute(ring, x)?;
        if let Ok(basis) = descent_basis(ring, &spans)? {
            if seen.insert(basis.iter().map(|f| f.to_string()).collect()) {
                out.push(basis);
            }
        }
    }

    let field = ring.field();
    let orders = apery_basis_extract(ring)?.orders;
    'outer: for (j, f) in extracted.iter().enumerate() {
        let span = power_span(ring, orders[j])?;
        for row in span.basis.rows().filter(|r| r.order() > f.order()) {
            for lambda in [1, -1] {
                if out.len() >= limit {
                    break 'outer;
                }
                let mut basis = extracted.to_vec();
                basis[j] = f
                    .add(&row.lift(crate::ring::EXACT).scale(&field.from_i64(lambda)))
                    .expect("same field");
                if seen.insert(basis.iter().map(|g| g.to_string()).collect()) {
                    out.push(basis);
                }
            }
        }
    }
    Ok(out)
}
