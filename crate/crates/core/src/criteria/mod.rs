//! Verdicts with witnesses: essential divisibility, BF, Cohen-Macaulayness of
//! `gr(R)`, Hilbert-series transfer and complete intersections.

pub mod bf;
pub mod ci;
pub mod cm;
pub mod essential;
pub mod explorer;
pub mod transfer;

pub use bf::{
    bf_auto, check_bf, descent_basis, reduction_candidates, BFCertificate, BFMethod, BFOutcome,
    BFReport, BFVerdict, DEFAULT_BUDGET,
};
pub use ci::{ci_verdict, CIReport, CIRoute, CIVerdict, FamilyCheck};
pub use cm::{cm_verdict, AbRoute, CMReport, CzComparison, CzRoute, HilbertRoute};
pub use essential::{
    check_essential_divisibility, EssentialDivisibilityReport, EssentialDivisibilityWitness,
};
pub use explorer::{
    expand_families, question_explorer, ExplicitRing, Family, InstanceResult, Question,
    SweepInstance, SweepReport, SweepSpec, SweepSummary,
};
pub use transfer::{hilbert_transfer, TransferReport, TransferSide};
