//! Cohen-Macaulayness of `gr(R)` by three routes. The Hilbert series equality
//! decides; `a = b` and `c = ε` are reported beside it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{coefficient, InvariantProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRoute {
    pub cm: bool,
    /// Coefficients of `(1-z)·Hilb_R`.
    pub difference: Vec<i64>,
    pub hilb_mod: Vec<u32>,
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbRoute {
    pub cm: bool,
    /// Classes `j` with `a_j ≠ b_j`.
    pub failing_classes: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CzComparison {
    PerClass,
    Multiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CzRoute {
    pub cm: bool,
    pub comparison: CzComparison,
    /// Classes with `c_j ≠ ε_j`; empty for a multiset comparison.
    pub failing_classes: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMReport {
    pub cm: bool,
    pub via_hilbert: HilbertRoute,
    /// `None` without BF evidence.
    pub via_ab: Option<AbRoute>,
    pub via_cz: CzRoute,
    pub consistent: bool,
}

/// `bf_evidence` must be true only when a BF certificate exists.
pub fn cm_verdict(profile: &InvariantProfile, bf_evidence: bool) -> Result<CMReport> {
    let range = profile.hilbert_range();
    let difference: Vec<i64> = (0..=range).map(|i| profile.hilbert_difference(i)).collect();
    let hilb_mod: Vec<u32> = (0..=range)
        .map(|i| coefficient(&profile.hilb_mod, i, 0))
        .collect();
    let first_mismatch = profile.hilbert_mismatch();
    let via_hilbert = HilbertRoute {
        cm: first_mismatch.is_none(),
        difference,
        hilb_mod,
        first_mismatch,
    };

    let ab_failing: Vec<u32> = (0..profile.e)
        .filter(|&j| profile.a[j as usize] != profile.b[j as usize])
        .collect();
    let via_ab = bf_evidence.then_some(AbRoute {
        cm: ab_failing.is_empty(),
        failing_classes: ab_failing,
    });
    if let Some(ab) = &via_ab {
        if ab.cm != via_hilbert.cm {
            return Err(Error::Defect(format!(
                "with BF evidence a = b gives {} but the Hilbert series give {}",
                ab.cm, via_hilbert.cm
            )));
        }
    }

    let via_cz = match &profile.eps_by_class {
        Some(eps) => {
            let failing: Vec<u32> = (0..profile.e)
                .filter(|&j| profile.c[j as usize] != eps[j as usize])
                .collect();
            CzRoute {
                cm: failing.is_empty(),
                comparison: CzComparison::PerClass,
                failing_classes: failing,
            }
        }
        None => {
            let mut c = profile.c.clone();
            c.sort_unstable();
            CzRoute {
                cm: c == profile.eps,
                comparison: CzComparison::Multiset,
                failing_classes: Vec::new(),
            }
        }
    };

    let consistent =
        via_ab.as_ref().is_none_or(|ab| ab.cm == via_hilbert.cm) && via_cz.cm == via_hilbert.cm;
    Ok(CMReport {
        cm: via_hilbert.cm,
        via_hilbert,
        via_ab,
        via_cz,
        consistent,
    })
}
