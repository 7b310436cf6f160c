//! Coset enumeration, coset tables, subgroup chains and fixed-point ratios.

mod chain;
mod fx;
mod table;
mod todd_coxeter;

pub use chain::{
    build_abelian_chain, build_cyclic_chain, build_explicit_chain, residual_chain_check, ChainSpec, ResidualReport,
    SubgroupChain,
};
pub use fx::{farber_prefix_check, fx, FarberReport, FarberSeries, FxReport};
pub(crate) use fx::{ratio_f64, ratio_string};
pub use table::CosetTable;
pub use todd_coxeter::todd_coxeter;

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("coset enumeration exceeded {0} live cosets (index may be infinite)")]
    BudgetExceeded(usize),
    #[error("malformed coset table: {0}")]
    Malformed(String),
    #[error("generator {0} does not act as a permutation")]
    NotPermutation(usize),
    #[error("the action is not transitive")]
    NotTransitive,
    #[error("relator {0} does not act trivially")]
    RelatorNotTrivial(usize),
    #[error("subgroup generator {0} does not fix the base coset")]
    SubgroupGeneratorMovesBase(usize),
    #[error("moduli must be positive")]
    InvalidModulus,
    #[error("the map to the finite quotient is not surjective")]
    NotSurjective,
    #[error("quotient index does not fit in memory")]
    IndexOverflow,
    #[error("relator {relator} does not vanish modulo {modulus}")]
    RelatorNotInKernel { relator: usize, modulus: u64 },
    #[error("chain levels use different presentations")]
    MixedPresentations,
    #[error("chain has no levels")]
    EmptyChain,
    #[error("chain spec: {0}")]
    ChainSpec(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
