use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use super::context::WordProblemContext;
use super::word::Word;
use super::GroupError;

/// Finite nonempty set of group elements, stored as distinct normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerSet {
    elements: BTreeSet<Word>,
}

impl FolnerSet {
    pub fn new(elements: &[Word], ctx: &WordProblemContext) -> Result<Self, GroupError> {
        let set = elements.iter().map(|w| ctx.require_normal_form(w)).collect::<Result<BTreeSet<_>, _>>()?;
        if set.is_empty() {
            return Err(GroupError::EmptyFolnerSet);
        }
        Ok(FolnerSet { elements: set })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Word> {
        self.elements.iter()
    }
}

/// `|(γ F γ⁻¹) Δ F| / |F|`, exact.
pub fn inner_folner_defect(f: &FolnerSet, gamma: &Word, ctx: &WordProblemContext) -> Result<Ratio<u64>, GroupError> {
    if !ctx.is_decidable() {
        return Err(GroupError::InconclusiveContext);
    }
    let conjugated =
        f.elements.iter().map(|x| ctx.require_normal_form(&gamma.conjugate(x))).collect::<Result<BTreeSet<_>, _>>()?;
    let sym_diff = conjugated.symmetric_difference(&f.elements).count();
    Ok(Ratio::new(sym_diff as u64, f.len() as u64))
}

/// `F_n = {f_n γ_0 f_n⁻¹, …, f_n γ_n f_n⁻¹}` with `f_n = conjugators[n]` supplied by the caller.
pub fn commuting_conjugates_folner(
    enumeration: &[Word],
    conjugators: &[Word],
    n: usize,
    ctx: &WordProblemContext,
) -> Result<FolnerSet, GroupError> {
    if enumeration.len() < n + 1 {
        return Err(GroupError::InsufficientEnumeration { needed: n + 1, available: enumeration.len() });
    }
    if conjugators.len() < n + 1 {
        return Err(GroupError::InsufficientEnumeration { needed: n + 1, available: conjugators.len() });
    }
    let f = &conjugators[n];
    let elements: Vec<Word> = enumeration[..=n].iter().map(|g| f.conjugate(g)).collect();
    FolnerSet::new(&elements, ctx)
}

#[derive(Clone, Debug, Serialize)]
pub struct FolnerSequenceReport {
    pub cardinalities: Vec<usize>,
    /// `defects[n][k]` is the defect of set `n` against `gammas[k]`, as `p/q`.
    pub defects: Vec<Vec<String>>,
    pub max_defect_per_set: Vec<f64>,
    /// Cardinalities strictly increase (finite stand-in for `|F_n| → ∞`).
    pub cardinalities_strictly_increasing: bool,
    pub non_increasing_at: Vec<usize>,
}

pub fn folner_sequence_report(
    sets: &[FolnerSet],
    gammas: &[Word],
    ctx: &WordProblemContext,
) -> Result<FolnerSequenceReport, GroupError> {
    let mut defects = Vec::with_capacity(sets.len());
    let mut max_defect_per_set = Vec::with_capacity(sets.len());
    for f in sets {
        let row = gammas.iter().map(|g| inner_folner_defect(f, g, ctx)).collect::<Result<Vec<_>, _>>()?;
        let max = row.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).fold(0.0, f64::max);
        max_defect_per_set.push(max);
        defects.push(row.iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect());
    }
    let cardinalities: Vec<usize> = sets.iter().map(FolnerSet::len).collect();
    let non_increasing_at: Vec<usize> =
        cardinalities.windows(2).enumerate().filter(|(_, w)| w[1] <= w[0]).map(|(i, _)| i + 1).collect();
    Ok(FolnerSequenceReport {
        cardinalities_strictly_increasing: non_increasing_at.is_empty(),
        cardinalities,
        defects,
        max_defect_per_set,
        non_increasing_at,
    })
}
