//! Value-semigroup filtrations of one-dimensional analytically irreducible
//! rings `R ⊆ k[[t]]` given by polynomial generators, and the invariants and
//! criteria built on them: Apéry sets, `b_j`, `c_j`, blowup data, Elias
//! microinvariants, Hilbert series, essential divisibility, the BF condition,
//! Cohen–Macaulayness of the tangent cone and complete-intersection verdicts.

pub mod analysis;
pub mod criteria;
pub mod echelon;
pub mod error;
pub mod invariants;
pub mod ring;
pub mod scalar;
pub mod semigroup;
pub mod series;
pub mod values;

pub use analysis::{analyze, AnalysisOptions, AnalysisReport};
pub use echelon::EchelonBasis;
pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
pub use semigroup::{
    sg_from_generators, sg_power_values, sg_reduction_number, sg_three_gen_ci, CICase,
    CIClassification, CIRepresentation, NumericalSemigroup, SemigroupIdealPower,
};
pub use series::{parse_series, TruncatedSeries};
pub use values::ValueSet;
