//! Degreewise Cech-complex computation of (iterated) local cohomology of
//! monomial ideals over localization regions.

pub mod complex;
pub mod ideal;
pub mod module;
mod tower;

pub use complex::{cech_complex, differential_sign, CechComplex, CechTerm, StrandCohomology};
pub use ideal::{CechSpec, CechStage, MonomialIdeal};
pub use module::{
    engine_module, iterated_local_cohomology, local_cohomology, EDecomposition, HilbertTable,
    LcModule, SocleReport,
};
pub use tower::CechEngine;
