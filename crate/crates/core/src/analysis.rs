//! The full pipeline for one ring: invariants, essential divisibility, BF,
//! Cohen-Macaulayness and complete intersections, with the consistency checks
//! that tie them together.

use serde::{Deserialize, Serialize};

use crate::criteria::{
    bf_auto, check_bf, check_essential_divisibility, ci_verdict, cm_verdict, descent_basis,
    BFOutcome, BFReport, CIReport, CIVerdict, CMReport, EssentialDivisibilityReport,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::invariants::{InvariantProfile, ReductionSpans};
use crate::ring::{
    apery_basis_extract, basis_from_elements, make_reduction, CurveRing, ReductionElement,
};

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Expression or `"default"`.
    pub reduction: Option<String>,
    pub basis: Option<Vec<String>>,
    pub budget: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            reduction: None,
            basis: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub field: String,
    pub generators: Vec<String>,
    pub semigroup: Vec<u32>,
    pub e: u32,
    pub nu: u32,
    pub apery: Vec<u32>,
    pub conductor: u32,
    pub frobenius: i64,
    pub symmetric: bool,
    pub r: u32,
    pub precision: u32,
    pub monomial: bool,
}

impl RingSummary {
    pub fn of(ring: &CurveRing) -> Self {
        let s = ring.semigroup();
        RingSummary {
            field: ring.field().label(),
            generators: ring.generators().iter().map(|g| g.to_string()).collect(),
            semigroup: s.minimal_generators().to_vec(),
            e: ring.multiplicity(),
            nu: ring.embedding_dimension(),
            apery: ring.apery().to_vec(),
            conductor: ring.conductor(),
            frobenius: s.frobenius(),
            symmetric: s.is_symmetric(),
            r: ring.reduction_number(),
            precision: ring.precision(),
            monomial: ring.is_monomial(),
        }
    }
}

/// The descent construction of an Apéry basis from `m^{r+1}`, run when
/// `gr(R)` is CM and essential divisibility holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCheck {
    pub basis: Option<Vec<String>>,
    pub certified: bool,
    pub anomaly: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyChecks {
    /// A BF certificate implies essential divisibility for its `x`.
    pub bf_implies_essential: Option<bool>,
    pub descent: Option<DescentCheck>,
    pub ci_implies_cm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub ring: RingSummary,
    pub invariants: InvariantProfile,
    pub essential_divisibility: EssentialDivisibilityReport,
    pub bf: BFReport,
    pub cm: CMReport,
    pub ci: CIReport,
    pub checks: ConsistencyChecks,
}

pub fn analyze(ring: &CurveRing, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let x = match &options.reduction {
        Some(expr) => make_reduction(ring, expr)?,
        None => ring.default_x(),
    };
    let spans = ReductionSpans::compute(ring, &x)?;
    let profile = InvariantProfile::compute(ring, &spans)?;
    let essential = check_essential_divisibility(ring, &spans, &profile)?;
    let bf = run_bf(ring, &x, options)?;

    let bf_implies_essential = if bf.report.holds {
        let holds = if bf.x.x == x.x {
            essential.holds
        } else {
            let other = ReductionSpans::compute(ring, &bf.x)?;
            let p = InvariantProfile::compute(ring, &other)?;
            check_essential_divisibility(ring, &other, &p)?.holds
        };
        if !holds {
            return Err(Error::Defect(format!(
                "BF certified for x = {} but essential divisibility fails",
                bf.x.x
            )));
        }
        Some(true)
    } else {
        None
    };

    let cm = cm_verdict(&profile, bf.report.holds)?;

    let descent = if cm.cm && essential.holds {
        Some(match descent_basis(ring, &spans)? {
            Ok(basis) => {
                let report = check_bf(ring, &x, &basis)?;
                DescentCheck {
                    basis: Some(basis.iter().map(|f| f.to_string()).collect()),
                    certified: report.holds,
                    anomaly: (!report.holds)
                        .then(|| format!("descent basis fails at {:?}", report.witness)),
                }
            }
            Err(anomaly) => DescentCheck {
                basis: None,
                certified: false,
                anomaly: Some(anomaly),
            },
        })
    } else {
        None
    };

    let ci = ci_verdict(ring, &cm, bf.report.holds)?;
    let ci_implies_cm = ci.verdict != CIVerdict::Ci || cm.cm;
    Ok(AnalysisReport {
        ring: RingSummary::of(ring),
        invariants: profile,
        essential_divisibility: essential,
        bf: bf.report,
        ci,
        checks: ConsistencyChecks {
            bf_implies_essential,
            descent,
            ci_implies_cm,
        },
        cm,
    })
}

/// A supplied basis is checked as given; otherwise the supplied `x` with the
/// extracted basis is tried before the general search.
fn run_bf(ring: &CurveRing, x: &ReductionElement, options: &AnalysisOptions) -> Result<BFOutcome> {
    if let Some(texts) = &options.basis {
        let elements = texts
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let basis = basis_from_elements(ring, elements)?;
        let report = check_bf(ring, x, &basis)?;
        return Ok(BFOutcome {
            report,
            x: x.clone(),
            basis,
        });
    }
    if x.x != ring.default_x().x {
        let basis = apery_basis_extract(ring)?.elements;
        let report = check_bf(ring, x, &basis)?;
        if report.holds {
            return Ok(BFOutcome {
                report,
                x: x.clone(),
                basis,
            });
        }
    }
    bf_auto(ring, options.budget)
}
