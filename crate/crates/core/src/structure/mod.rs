//! Structural tests: abelianness, absorption, cube-term blockers, edge-by-chain structure.

mod abelian;
mod absorption;
mod blockers;
mod ec;

pub use abelian::{affine_representation, is_abelian, is_abelian_bounded, AffineRep, DEFAULT_ABELIAN_BOUND};
pub use absorption::{
    check_absorbing, find_sinks, minimal_absorbing, verify_absorbing_term, AbsorptionBounds,
    AbsorptionCertificate, MassReport, NonAbsorption,
};
pub use blockers::{has_ctb_cib, has_edge_term_cib};
pub use ec::{check_ec, detect_ec, iterate_second, EcStructure};
