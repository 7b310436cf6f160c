//! q-normality certificates and the graphs built from them.

mod blowup;
mod chain;
mod graph;
mod trim;
mod witness;

pub use blowup::{blow_up, BlowUpGraph, Connector};
pub use chain::{
    verify_chain, BaseReport, ChainCertificateFile, ChainReport, ComposabilityBreak, QNormalChainCertificate,
};
pub use graph::{
    build_coset_graph, connectedness_path, edge_stabilizer_witnesses, Completeness, ConnectednessPath, CosetEdge,
    CosetGraph, CosetKey, CosetSpace, CosetVertex, EdgeFamily, EdgeWitness, GraphOptions,
};
pub use trim::{trim_cocompact, TrimmedGraph};
pub use witness::{verify_qnormal, CertStatus, Generation, QNormalReport, QNormalWitnessSet, Witness, WitnessReport};

use thiserror::Error;

use crate::coset::CosetError;
use crate::group::{GroupError, Word};

#[derive(Debug, Error)]
pub enum QNormalError {
    #[error("generating set is empty")]
    EmptyGeneratingSet,
    #[error("{generators} generators but {witnesses} witnesses")]
    WitnessCount { generators: usize, witnesses: usize },
    #[error("chain has no steps")]
    EmptyChain,
    #[error("coset budget must be at least 1")]
    ZeroBudget,
    #[error("subgroup has no finite coset table within budget and is not generated by standard generators of a RAAG")]
    NoCosetModel,
    #[error("no factorization of {word} over the labels within length {bound}")]
    NoFactorization { word: Word, bound: usize },
    #[error("coset of {0} lies outside the truncation")]
    TruncationTooSmall(Word),
    #[error("label {0} has no witness in the certificate")]
    UnwitnessedLabel(Word),
    #[error("connector {0} has no intersection witness")]
    MissingWitness(Word),
    #[error("intersection witness for connector {0} is wrong")]
    WitnessRejected(Word),
    #[error("connector {0} is not an edge at the base vertex of the outer graph")]
    NotIncident(Word),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Coset(#[from] CosetError),
}
