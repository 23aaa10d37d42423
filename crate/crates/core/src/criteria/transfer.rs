//! Hilbert-series transfer between two rings with the same `e, a, b`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{coefficient, InvariantProfile};

use super::cm::CMReport;

/// What the transfer needs from one analysed ring.
#[derive(Clone, Copy, Debug)]
pub struct TransferSide<'a> {
    pub profile: &'a InvariantProfile,
    pub cm: &'a CMReport,
    pub bf_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub applicable: bool,
    pub reason: Option<String>,
    /// Set when applicable and `gr(R)` is CM: `gr(T)` is CM as asserted.
    pub t_cm: Option<bool>,
    /// Set when applicable and `gr(R)` is CM: the Hilbert series agree.
    pub hilbert_equal: Option<bool>,
}

pub fn hilbert_transfer(r: TransferSide<'_>, t: TransferSide<'_>) -> Result<TransferReport> {
    let not = |reason: &str| TransferReport {
        applicable: false,
        reason: Some(reason.to_string()),
        t_cm: None,
        hilbert_equal: None,
    };
    let (pr, pt) = (r.profile, t.profile);
    if pr.e != pt.e {
        return Ok(not("multiplicities differ"));
    }
    if !(r.bf_certified && t.bf_certified) {
        return Ok(not("BF is not certified on both rings"));
    }
    if pr.a != pt.a || pr.b != pt.b {
        return Ok(not("the a or b vectors differ"));
    }
    if !r.cm.cm {
        return Ok(TransferReport {
            applicable: true,
            reason: Some("gr(R) is not CM; nothing transfers".into()),
            t_cm: None,
            hilbert_equal: None,
        });
    }
    let len = pr.hilb_r.len().max(pt.hilb_r.len());
    let hilbert_equal =
        (0..len).all(|i| coefficient(&pr.hilb_r, i, pr.e) == coefficient(&pt.hilb_r, i, pt.e));
    if !t.cm.cm || !hilbert_equal {
        return Err(Error::Defect(format!(
            "transfer asserted but gr(T) CM = {}, Hilbert series equal = {hilbert_equal}",
            t.cm.cm
        )));
    }
    Ok(TransferReport {
        applicable: true,
        reason: None,
        t_cm: Some(true),
        hilbert_equal: Some(true),
    })
}
