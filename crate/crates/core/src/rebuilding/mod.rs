//! Audits of rebuilding data: chain-level identities, cell-count and norm
//! bounds at a given quality `(T, κ)`, and the least `κ` that passes.

mod data;
mod norm;
mod quality;

pub use data::{validate_rebuilding, CwChainData, IdentityCheck, RebuildingData, ValidationReport};
pub use norm::operator_norm;
pub use quality::{minimal_kappa, quality_check, BoundCheck, DegreeQuality, QualityReport};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RebuildingError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("rebuilding data fails validation: {0}")]
    Unvalidated(String),
    #[error("T and kappa must be at least 1")]
    BadParameter,
}
