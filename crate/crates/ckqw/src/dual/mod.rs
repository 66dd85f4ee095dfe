//! The dual quantum algebra: `L^±` functionals, their pairing with the group
//! generators, the fundamental representation, and the Hopf algebra
//! `so_w(3; j)` with its identification with the functionals.

mod checks;
mod functionals;
mod pairing;
pub mod series;
pub mod sow;

pub use checks::{
    l_generators, non_increasing, verify_duality_isomorphism, verify_sow_hopf, IsomorphismReport, SowHopfReport,
    NOISE_FLOOR,
};
pub use functionals::{
    build_functionals, flip, verify_dual_commutators, verify_l_relations, CommutatorReport, DualFunctionals,
    LRelationsReport, Sign,
};
pub use pairing::{
    choose_convention, is_flagged, pairing_report, table, verify_pairing_table, Convention, MinusSign, Partial,
    PairingEntry, PairingReport, Slicing, FUNCTIONALS,
};
pub use series::Series;
pub use sow::{diamond_check, sow_normalize, Letter, Mono, Sow, SowElement, SowExpr, SowTensor};

/// Default truncation order in `w`.
pub const DEFAULT_TRUNCATION: usize = 8;
