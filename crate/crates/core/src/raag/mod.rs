//! Right-angled Artin groups: ℤ-factor splitting, chain-commuting generating
//! sequences, and the q-normal chains they induce.

mod artin;
mod chains;
mod sweep;

pub use artin::{artin_chain_commuting, ArtinGraph};
pub use chains::{
    analyze_raag, chain_commuting_sequence, dfs_walk, emit_qnormal_chain, is_inner_amenable_raag, validate_sequence,
    ChainCommutingSequence, CommutingProof, InnerAmenability, RaagAnalysis,
};
pub use sweep::{connected_graphs, isomorphism_classes};

use thiserror::Error;

use crate::group::GroupError;
use crate::qnormal::QNormalError;

#[derive(Debug, Error)]
pub enum RaagError {
    #[error("invalid chain-commuting sequence: {0}")]
    InvalidSequence(String),
    #[error("label given for non-edge {0}–{1}")]
    LabelOnNonEdge(u32, u32),
    #[error("edge label {0} is below 2")]
    BadLabel(u32),
    #[error("cannot parse label key {0:?}; expected \"[u,v]\"")]
    LabelKey(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    QNormal(#[from] QNormalError),
}
