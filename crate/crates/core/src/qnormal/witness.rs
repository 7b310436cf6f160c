use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::QNormalError;
use crate::group::{infinite_order_certificate, Equality, OrderCertificate, Word, WordProblemContext};
use crate::homology::{smith_normal_form, IntegerMatrix};

/// Strength of a verification outcome; ordered weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertStatus {
    Failed,
    Consistent,
    Proven,
}

/// Evidence that `s L s⁻¹ ∩ L` is infinite: an element `w` of both, written
/// in the generators of `L` in two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The common element, as a word in the top group.
    pub w: Word,
    /// Word over `L`'s generators (1-based indices into `subgroup_words`) equal to `w`.
    #[serde(rename = "expr_in_L")]
    pub expr_in_l: Word,
    /// Word `x` over `L`'s generators with `s x s⁻¹ = w`.
    pub expr_in_conjugate: Word,
}

/// Claimed q-normality of `L = ⟨subgroup_words⟩` in `G = ⟨ambient_words⟩`.
///
/// All group elements are words in the top-level group; `generating_set`
/// elements are words over `G`'s generators (1-based indices into
/// `ambient_words`), one witness per element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QNormalWitnessSet {
    pub ambient_words: Vec<Word>,
    pub subgroup_words: Vec<Word>,
    pub generating_set: Vec<Word>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generation {
    /// Every generator of `G` is itself an element of `S`.
    ContainsGenerators,
    /// `S` maps onto the abelianization; necessary but not sufficient.
    AbelianSurjective,
    /// `S` misses part of the abelianization of the top group, so it cannot generate.
    NotGenerating,
    /// Abelian images fail to span, but only a free cover of `G`'s abelianization was available.
    Unverified,
}

impl Generation {
    fn status(self) -> CertStatus {
        match self {
            Generation::ContainsGenerators => CertStatus::Proven,
            Generation::AbelianSurjective | Generation::Unverified => CertStatus::Consistent,
            Generation::NotGenerating => CertStatus::Failed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// `s` as a word in the top group.
    pub s: Word,
    pub w: Word,
    pub in_subgroup: Equality,
    pub in_conjugate: Equality,
    pub order: OrderCertificate,
    pub status: CertStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct QNormalReport {
    pub status: CertStatus,
    pub generation: Generation,
    pub witnesses: Vec<WitnessReport>,
}

impl QNormalWitnessSet {
    /// Top-group word for an element of `S`.
    pub fn generator_in_top(&self, k: usize) -> Result<Word, QNormalError> {
        Ok(self.generating_set[k].substitute(&self.ambient_words)?)
    }

    pub fn generating_set_in_top(&self) -> Result<Vec<Word>, QNormalError> {
        (0..self.generating_set.len()).map(|k| self.generator_in_top(k)).collect()
    }

    fn check_shape(&self, ctx: &WordProblemContext) -> Result<(), QNormalError> {
        if self.generating_set.is_empty() {
            return Err(QNormalError::EmptyGeneratingSet);
        }
        if self.witnesses.len() != self.generating_set.len() {
            return Err(QNormalError::WitnessCount {
                generators: self.generating_set.len(),
                witnesses: self.witnesses.len(),
            });
        }
        for w in self.ambient_words.iter().chain(&self.subgroup_words) {
            ctx.check_word(w)?;
        }
        for s in &self.generating_set {
            s.check_range(self.ambient_words.len())?;
        }
        for wit in &self.witnesses {
            ctx.check_word(&wit.w)?;
            wit.expr_in_l.check_range(self.subgroup_words.len())?;
            wit.expr_in_conjugate.check_range(self.subgroup_words.len())?;
        }
        Ok(())
    }

    fn generation(&self, ctx: &WordProblemContext) -> Generation {
        let m = self.ambient_words.len();
        let direct =
            (1..=m as i32).all(|g| self.generating_set.iter().any(|s| s.letters() == [g] || s.letters() == [-g]));
        if direct {
            return Generation::ContainsGenerators;
        }
        let top_level = self.ambient_words.len() == ctx.generator_count()
            && self.ambient_words.iter().enumerate().all(|(i, w)| w.letters() == [i as i32 + 1]);
        // rows: exponent vectors of S over G's generators, then (top level only) relators
        let mut rows: Vec<Vec<i64>> = self.generating_set.iter().map(|s| exponent_vector(s, m)).collect();
        if top_level {
            rows.extend(ctx.presentation().relators().iter().map(|r| exponent_vector(r, m)));
        }
        let spans = if rows.is_empty() {
            m == 0
        } else {
            let snf = smith_normal_form(&IntegerMatrix::from_rows(m, &rows).expect("rectangular"));
            snf.rank == m && snf.invariant_factors.iter().all(|d| d == &BigInt::one())
        };
        match (spans, top_level) {
            (true, _) => Generation::AbelianSurjective,
            (false, true) => Generation::NotGenerating,
            (false, false) => Generation::Unverified,
        }
    }
}

fn exponent_vector(w: &Word, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &l in w.letters() {
        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    v
}

pub(crate) fn equality_status(e: Equality) -> CertStatus {
    match e {
        Equality::ProvenEqual => CertStatus::Proven,
        Equality::ConsistentEqual => CertStatus::Consistent,
        Equality::ProvenDistinct => CertStatus::Failed,
    }
}

/// Check every witness equation and infinite-order claim.
///
/// The overall status is the weakest of the witness statuses and the
/// generation check; PROVEN requires `S` to contain the generators of `G`.
pub fn verify_qnormal(ws: &QNormalWitnessSet, ctx: &WordProblemContext) -> Result<QNormalReport, QNormalError> {
    ws.check_shape(ctx)?;
    let mut reports = Vec::with_capacity(ws.witnesses.len());
    for (k, wit) in ws.witnesses.iter().enumerate() {
        let s = ws.generator_in_top(k)?;
        let in_l = wit.expr_in_l.substitute(&ws.subgroup_words)?;
        let x = wit.expr_in_conjugate.substitute(&ws.subgroup_words)?;
        let in_subgroup = ctx.compare(&in_l, &wit.w)?;
        let in_conjugate = ctx.compare(&s.conjugate(&x), &wit.w)?;
        let order = infinite_order_certificate(&wit.w, ctx);
        let order_status = if order.is_proven() { CertStatus::Proven } else { CertStatus::Consistent };
        let status = equality_status(in_subgroup).min(equality_status(in_conjugate)).min(order_status);
        reports.push(WitnessReport { s, w: wit.w.clone(), in_subgroup, in_conjugate, order, status });
    }
    let generation = ws.generation(ctx);
    let status = reports.iter().map(|r| r.status).fold(generation.status(), CertStatus::min);
    Ok(QNormalReport { status, generation, witnesses: reports })
}
