//! Boundary matrices of finite covers, Smith normal form, first homology and
//! gradient series along subgroup chains.

mod fox;
mod gradient;
mod matrix;
mod modp;
mod snf;
mod summary;

pub use fox::fox_boundary_matrices;
pub use gradient::{
    estimate_trend, gradient_series, GradientPoint, GradientSeries, InvariantKind, Monotonicity, TrendReport,
};
pub use matrix::{bigint_list, ln_bigint, IntegerMatrix};
pub use modp::{is_prime, rank_mod_p};
pub use snf::{smith_normal_form, smith_normal_form_with_transforms, SnfResult, SnfTransforms};
pub use summary::{cover_homology, homology_summary, HomologySummary};

use thiserror::Error;

use crate::coset::CosetError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("d1 has {d1_cols} columns but d2 has {d2_rows} rows")]
    ShapeMismatch { d1_cols: usize, d2_rows: usize },
    #[error("d1 · d2 is not zero")]
    CompositionNonzero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coset table does not belong to this presentation")]
    TableMismatch,
    #[error("unknown invariant {0:?}")]
    UnknownInvariant(String),
    #[error("a trend needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Coset(#[from] CosetError),
}
