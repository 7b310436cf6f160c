//! Words, presentations, free reduction, RAAG normal forms, word-problem
//! contexts and inner-Følner defects.

mod abelian;
mod context;
mod folner;
mod presentation;
mod raag;
mod word;

pub use abelian::{abelianized_image, AbelianImage, Abelianization};
pub use context::{infinite_order_certificate, ContextKind, Equality, OrderCertificate, WordProblemContext};
pub use folner::{
    commuting_conjugates_folner, folner_sequence_report, inner_folner_defect, FolnerSequenceReport, FolnerSet,
};
pub use presentation::{Presentation, PresentationFile};
pub use raag::{letter_key, raag_normal_form, shortlex_cmp, RaagGraph, RaagGraphFile};
pub use word::{free_reduce, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("words may not contain the letter 0")]
    ZeroLetter,
    #[error("letter {letter} references a generator outside 1..={generators}")]
    LetterOutOfRange { letter: i32, generators: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("vertex {vertex} outside 1..={vertices}")]
    VertexOutOfRange { vertex: u32, vertices: u32 },
    #[error("equality is not decidable in a finite-quotient battery context")]
    InconclusiveContext,
    #[error("enumeration has {available} entries but {needed} are required")]
    InsufficientEnumeration { needed: usize, available: usize },
    #[error("a Følner set must be nonempty")]
    EmptyFolnerSet,
    #[error("coset table over {found} generators does not match the presentation's {expected}")]
    BatteryMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
