use std::fmt;

use serde::Serialize;

use super::abelian::{exponent_sums, Abelianization};
use super::presentation::Presentation;
use super::raag::{raag_normal_form, RaagGraph};
use super::word::{free_reduce, Word};
use super::GroupError;
use crate::coset::CosetTable;

#[derive(Clone, Debug)]
pub enum ContextKind {
    Free,
    FreeAbelian,
    Raag(RaagGraph),
    /// Finite permutation images; can separate elements but never prove equality.
    FiniteQuotientBattery(Vec<CosetTable>),
}

/// How group equality is decided for a given group.
#[derive(Clone, Debug)]
pub struct WordProblemContext {
    kind: ContextKind,
    presentation: Presentation,
    abelianization: Abelianization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Equality {
    ProvenEqual,
    ProvenDistinct,
    /// No finite quotient in the battery separates the elements.
    ConsistentEqual,
}

impl Equality {
    pub fn is_equal(self) -> bool {
        !matches!(self, Equality::ProvenDistinct)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderCertificate {
    ProvenInfinite(String),
    Inconclusive(String),
}

impl OrderCertificate {
    pub fn is_proven(&self) -> bool {
        matches!(self, OrderCertificate::ProvenInfinite(_))
    }
}

impl fmt::Display for OrderCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderCertificate::ProvenInfinite(r) => write!(f, "PROVEN-INFINITE ({r})"),
            OrderCertificate::Inconclusive(r) => write!(f, "INCONCLUSIVE ({r})"),
        }
    }
}

impl WordProblemContext {
    fn build(kind: ContextKind, presentation: Presentation) -> Self {
        let abelianization = Abelianization::new(&presentation);
        WordProblemContext { kind, presentation, abelianization }
    }

    pub fn free(generators: usize) -> Self {
        Self::build(ContextKind::Free, Presentation::free(generators))
    }

    pub fn free_abelian(generators: usize) -> Self {
        Self::build(ContextKind::FreeAbelian, Presentation::free_abelian(generators))
    }

    pub fn raag(graph: RaagGraph) -> Self {
        let p = graph.presentation();
        Self::build(ContextKind::Raag(graph), p)
    }

    /// Arbitrary presentation checked against finite permutation quotients.
    pub fn battery(presentation: Presentation, tables: Vec<CosetTable>) -> Result<Self, GroupError> {
        for t in &tables {
            if t.generator_count() != presentation.generator_count() {
                return Err(GroupError::BatteryMismatch {
                    expected: presentation.generator_count(),
                    found: t.generator_count(),
                });
            }
        }
        Ok(Self::build(ContextKind::FiniteQuotientBattery(tables), presentation))
    }

    pub fn kind(&self) -> &ContextKind {
        &self.kind
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.abelianization
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.generator_count()
    }

    pub fn raag_graph(&self) -> Option<&RaagGraph> {
        match &self.kind {
            ContextKind::Raag(g) => Some(g),
            _ => None,
        }
    }

    /// Equality is exactly decidable (free, free abelian, RAAG).
    pub fn is_decidable(&self) -> bool {
        !matches!(self.kind, ContextKind::FiniteQuotientBattery(_))
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        self.presentation.check_word(w)
    }

    /// Canonical representative, or `None` when equality is undecidable here.
    pub fn normal_form(&self, w: &Word) -> Result<Option<Word>, GroupError> {
        self.check_word(w)?;
        Ok(match &self.kind {
            ContextKind::Free => Some(free_reduce(w)),
            ContextKind::FreeAbelian => {
                let sums = exponent_sums(w, self.generator_count());
                let mut letters = Vec::new();
                for (i, e) in sums.into_iter().enumerate() {
                    let l = (i as i32 + 1) * e.signum() as i32;
                    letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
                }
                Some(Word::new(letters).expect("nonzero letters"))
            }
            ContextKind::Raag(g) => Some(raag_normal_form(w, g)?),
            ContextKind::FiniteQuotientBattery(_) => None,
        })
    }

    /// Normal form, failing for undecidable contexts.
    pub fn require_normal_form(&self, w: &Word) -> Result<Word, GroupError> {
        self.normal_form(w)?.ok_or(GroupError::InconclusiveContext)
    }

    pub fn is_trivial(&self, w: &Word) -> Result<Equality, GroupError> {
        self.check_word(w)?;
        if let Some(nf) = self.normal_form(w)? {
            return Ok(if nf.is_empty() { Equality::ProvenEqual } else { Equality::ProvenDistinct });
        }
        if self.abelianization.image(w)?.nonzero_mod_lattice {
            return Ok(Equality::ProvenDistinct);
        }
        if let ContextKind::FiniteQuotientBattery(tables) = &self.kind {
            if tables.iter().any(|t| !t.acts_trivially(w)) {
                return Ok(Equality::ProvenDistinct);
            }
        }
        Ok(Equality::ConsistentEqual)
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Result<Equality, GroupError> {
        self.check_word(u)?;
        self.check_word(v)?;
        self.is_trivial(&u.concat(&v.inverse()))
    }
}

/// Certify that `w` has infinite order; never a false positive.
///
/// Free, free-abelian and right-angled Artin groups are torsion-free, so a
/// nontrivial normal form suffices there. Otherwise the image in the free part
/// of the abelianization must be nonzero.
pub fn infinite_order_certificate(w: &Word, ctx: &WordProblemContext) -> OrderCertificate {
    if ctx.check_word(w).is_err() {
        return OrderCertificate::Inconclusive("letter out of range".into());
    }
    match ctx.normal_form(w) {
        Ok(Some(nf)) if nf.is_empty() => OrderCertificate::Inconclusive("trivial element".into()),
        Ok(Some(_)) => OrderCertificate::ProvenInfinite("nontrivial element of a torsion-free group".into()),
        _ => match ctx.abelianization().image(w) {
            Ok(img) if img.infinite_order => {
                OrderCertificate::ProvenInfinite("infinite-order image in the abelianization".into())
            }
            _ => OrderCertificate::Inconclusive("abelianized image has finite order".into()),
        },
    }
}
