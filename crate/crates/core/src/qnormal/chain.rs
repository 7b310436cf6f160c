use serde::{Deserialize, Serialize};

use super::witness::{verify_qnormal, CertStatus, QNormalReport, QNormalWitnessSet};
use super::QNormalError;
use crate::group::{infinite_order_certificate, Equality, OrderCertificate, Word, WordProblemContext};
use crate::io::GroupSpec;

/// `⟨base⟩ = G₀ ≤_q G₁ ≤_q … ≤_q G_n`, listed bottom-up: step `k` shows
/// `G_k ≤_q G_{k+1}`, so its ambient words are the next step's subgroup words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QNormalChainCertificate {
    pub base: Word,
    pub steps: Vec<QNormalWitnessSet>,
}

/// Certificate file: the group and the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificateFile {
    pub group: GroupSpec,
    #[serde(flatten)]
    pub chain: QNormalChainCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseReport {
    pub base: Word,
    pub order: OrderCertificate,
    /// `base` commutes with every generator of the first ambient group.
    pub central_in_first_ambient: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComposabilityBreak {
    /// 1-based index of the step whose subgroup does not match.
    pub step: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub status: CertStatus,
    pub base: BaseReport,
    pub steps: Vec<QNormalReport>,
    pub composability: Vec<ComposabilityBreak>,
    /// The top step's ambient words are the group's own generators, in some order.
    pub reaches_top: bool,
}

/// Verify base, each step, and that consecutive steps fit together textually.
pub fn verify_chain(c: &QNormalChainCertificate, ctx: &WordProblemContext) -> Result<ChainReport, QNormalError> {
    if c.steps.is_empty() {
        return Err(QNormalError::EmptyChain);
    }
    ctx.check_word(&c.base)?;
    let order = infinite_order_certificate(&c.base, ctx);
    let mut status = if order.is_proven() { CertStatus::Proven } else { CertStatus::Consistent };
    let mut composability = Vec::new();
    if c.steps[0].subgroup_words != [c.base.clone()] {
        composability.push(ComposabilityBreak {
            step: 1,
            detail: "bottom subgroup is not generated by the base element alone".into(),
        });
    }
    for k in 1..c.steps.len() {
        if c.steps[k].subgroup_words != c.steps[k - 1].ambient_words {
            composability.push(ComposabilityBreak {
                step: k + 1,
                detail: format!("subgroup words differ from the ambient words of step {k}"),
            });
        }
    }
    let central = if ctx.is_decidable() {
        let mut all = true;
        for g in &c.steps[0].ambient_words {
            all &= ctx.compare(&Word::commutator(&c.base, g), &Word::identity())? == Equality::ProvenEqual;
        }
        Some(all)
    } else {
        None
    };
    let steps = c.steps.iter().map(|s| verify_qnormal(s, ctx)).collect::<Result<Vec<_>, _>>()?;
    let top = &c.steps[c.steps.len() - 1].ambient_words;
    let mut top_letters: Vec<i32> = top.iter().filter(|&w| w.len() == 1).map(|w| w.letters()[0]).collect();
    top_letters.sort_unstable();
    let reaches_top = top.len() == ctx.generator_count() && top_letters.iter().copied().eq(1..=top.len() as i32);
    for s in &steps {
        status = status.min(s.status);
    }
    if !composability.is_empty() || !reaches_top {
        status = CertStatus::Failed;
    }
    Ok(ChainReport {
        status,
        base: BaseReport { base: c.base.clone(), order, central_in_first_ambient: central },
        steps,
        composability,
        reaches_top,
    })
}
