//! Sweeps over families of rings, flagging candidates for three open
//! questions:
//!
//! - Q1: essentially divisible for some reduction, yet no BF witness found.
//! - Q2: BF unverified, and `a = b` disagrees with the Hilbert verdict.
//! - Q3: the multisets of `ε` and `a` differ.
//!
//! A flag is a candidate for inspection, never a conclusion: the BF search is
//! budgeted and BF is existential.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AnalysisOptions, AnalysisReport};
use crate::error::{Error, Result};
use crate::invariants::{compute_bc, ReductionSpans};
use crate::ring::{ring_build, BuildOptions, CurveRing};
use crate::scalar::Field;
use crate::semigroup::sg_enumerate;

use super::bf::{reduction_candidates, BFVerdict, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Question {
    Q1,
    Q2,
    Q3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// Every `k[[S]]` with `e ≤ max_multiplicity` and `F ≤ max_frobenius`.
    Monomial {
        max_multiplicity: u32,
        max_frobenius: u32,
    },
    Explicit {
        rings: Vec<ExplicitRing>,
    },
    /// `k[[t^{s_0}, t^{s_1} + λ t^{s_1+d}, …]]` for at most one term per
    /// generator after the first, `d ∈ offsets`, `λ ∈ coefficients \ {0}`.
    Perturbed {
        semigroup: Vec<u32>,
        offsets: Vec<u32>,
        coefficients: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitRing {
    #[serde(default)]
    pub label: Option<String>,
    pub generators: Vec<String>,
}

fn default_questions() -> Vec<Question> {
    vec![Question::Q1, Question::Q2, Question::Q3]
}

fn default_budget() -> usize {
    DEFAULT_BUDGET
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub field: Field,
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default = "default_questions")]
    pub questions: Vec<Question>,
    #[serde(default)]
    pub families: Vec<Family>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepInstance {
    pub label: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub label: String,
    pub generators: Vec<String>,
    pub error: Option<String>,
    pub e: Option<u32>,
    pub r: Option<u32>,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub eps: Vec<u32>,
    pub cm: Option<bool>,
    pub bf_verdict: Option<BFVerdict>,
    pub bases_tried: usize,
    pub reductions_tried: usize,
    /// Reductions for which essential divisibility was found to hold.
    pub essential_reductions: Vec<String>,
    pub candidates: Vec<Question>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub errors: usize,
    pub bf_unverified: usize,
    pub q1: usize,
    pub q2: usize,
    pub q3: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub field: String,
    pub budget: usize,
    pub questions: Vec<Question>,
    pub summary: SweepSummary,
    pub instances: Vec<InstanceResult>,
}

fn monomial_gens(gens: &[u32]) -> Vec<String> {
    gens.iter().map(|g| format!("t^{g}")).collect()
}

fn label_of(gens: &[String]) -> String {
    format!("k[[{}]]", gens.join(", "))
}

/// Expands the families into instances, keyed and deduplicated by label.
pub fn expand_families(families: &[Family]) -> Result<Vec<SweepInstance>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut add = |label: Option<String>, gens: Vec<String>| {
        let label = label.unwrap_or_else(|| label_of(&gens));
        out.entry(label).or_insert(gens);
    };
    for family in families {
        match family {
            Family::Monomial {
                max_multiplicity,
                max_frobenius,
            } => {
                for s in sg_enumerate(*max_multiplicity, *max_frobenius) {
                    add(None, monomial_gens(s.minimal_generators()));
                }
            }
            Family::Explicit { rings } => {
                for ring in rings {
                    if ring.label.as_deref() == Some("") {
                        return Err(Error::Input("empty ring label".into()));
                    }
                    add(ring.label.clone(), ring.generators.clone());
                }
            }
            Family::Perturbed {
                semigroup,
                offsets,
                coefficients,
            } => {
                if semigroup.is_empty() {
                    return Err(Error::Input("perturbed family without generators".into()));
                }
                let lambdas: Vec<i64> = coefficients.iter().copied().filter(|&c| c != 0).collect();
                let mut choices: Vec<Vec<String>> = vec![vec![format!("t^{}", semigroup[0])]];
                for &g in &semigroup[1..] {
                    let mut options = vec![format!("t^{g}")];
                    for &d in offsets.iter().filter(|&&d| d > 0) {
                        for &l in &lambdas {
                            let sign = if l < 0 { "-" } else { "+" };
                            options.push(format!("t^{g} {sign} {}*t^{}", l.abs(), g + d));
                        }
                    }
                    choices.push(options);
                }
                let mut combos: Vec<Vec<String>> = vec![Vec::new()];
                for options in &choices {
                    combos = combos
                        .iter()
                        .flat_map(|c| {
                            options.iter().map(move |o| {
                                let mut next = c.clone();
                                next.push(o.clone());
                                next
                            })
                        })
                        .collect();
                }
                for gens in combos {
                    add(None, gens);
                }
            }
        }
    }
    Ok(out
        .into_iter()
        .map(|(label, generators)| SweepInstance { label, generators })
        .collect())
}

fn essential_for(ring: &CurveRing, x: &crate::ring::ReductionElement) -> Result<bool> {
    let spans = ReductionSpans::sums_only(ring, x)?;
    let (b, c) = compute_bc(ring, &spans)?;
    Ok(b == c)
}

fn run_instance(
    field: Field,
    budget: usize,
    questions: &[Question],
    inst: &SweepInstance,
) -> Result<InstanceResult> {
    let gens: Vec<&str> = inst.generators.iter().map(String::as_str).collect();
    let ring = ring_build(field, &gens, BuildOptions::default())?;
    let options = AnalysisOptions {
        budget,
        ..AnalysisOptions::default()
    };
    let report: AnalysisReport = analyze(&ring, &options)?;
    let p = &report.invariants;
    let bf_holds = report.bf.holds;

    let mut essential_reductions = Vec::new();
    let mut reductions_tried = report.bf.reductions_tried;
    if !bf_holds && questions.contains(&Question::Q1) {
        let candidates = reduction_candidates(&ring);
        reductions_tried = reductions_tried.max(candidates.len());
        for x in &candidates {
            if essential_for(&ring, x)? {
                essential_reductions.push(x.x.to_string());
            }
        }
    } else if report.essential_divisibility.holds {
        essential_reductions.push(report.essential_divisibility.reduction.clone());
    }

    let mut candidates = Vec::new();
    if questions.contains(&Question::Q1) && !bf_holds && !essential_reductions.is_empty() {
        candidates.push(Question::Q1);
    }
    let ab = p.a == p.b;
    if questions.contains(&Question::Q2) && !bf_holds && ab != report.cm.cm {
        candidates.push(Question::Q2);
    }
    let mut sorted_a = p.a.clone();
    sorted_a.sort_unstable();
    if questions.contains(&Question::Q3) && sorted_a != p.eps {
        candidates.push(Question::Q3);
    }
    let note = (!bf_holds).then(|| {
        format!(
            "BF witness failed; budget {} bases tried; not concluded",
            report.bf.bases_tried
        )
    });
    Ok(InstanceResult {
        label: inst.label.clone(),
        generators: inst.generators.clone(),
        error: None,
        e: Some(p.e),
        r: Some(p.r),
        a: p.a.clone(),
        b: p.b.clone(),
        eps: p.eps.clone(),
        cm: Some(report.cm.cm),
        bf_verdict: Some(report.bf.verdict),
        bases_tried: report.bf.bases_tried,
        reductions_tried,
        essential_reductions,
        candidates,
        note,
    })
}

/// Runs every instance; per-instance failures are recorded, defects abort.
pub fn question_explorer(spec: &SweepSpec) -> Result<SweepReport> {
    let instances = expand_families(&spec.families)?;
    let mut questions = spec.questions.clone();
    questions.sort_unstable();
    questions.dedup();
    let results = instances
        .par_iter()
        .map(
            |inst| match run_instance(spec.field, spec.budget, &questions, inst) {
                Ok(r) => Ok(r),
                Err(e) if e.is_defect() => Err(Error::Defect(format!("{}: {e}", inst.label))),
                Err(e) => Ok(InstanceResult {
                    label: inst.label.clone(),
                    generators: inst.generators.clone(),
                    error: Some(e.to_string()),
                    e: None,
                    r: None,
                    a: Vec::new(),
                    b: Vec::new(),
                    eps: Vec::new(),
                    cm: None,
                    bf_verdict: None,
                    bases_tried: 0,
                    reductions_tried: 0,
                    essential_reductions: Vec::new(),
                    candidates: Vec::new(),
                    note: None,
                }),
            },
        )
        .collect::<Result<Vec<_>>>()?;
    let count = |q| results.iter().filter(|r| r.candidates.contains(&q)).count();
    let summary = SweepSummary {
        instances: results.len(),
        errors: results.iter().filter(|r| r.error.is_some()).count(),
        bf_unverified: results
            .iter()
            .filter(|r| r.bf_verdict.is_some_and(|v| v != BFVerdict::Holds))
            .count(),
        q1: count(Question::Q1),
        q2: count(Question::Q2),
        q3: count(Question::Q3),
    };
    Ok(SweepReport {
        field: spec.field.label(),
        budget: spec.budget,
        questions,
        summary,
        instances: results,
    })
}
