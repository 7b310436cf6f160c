use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chains::{dfs_walk, ChainCommutingSequence, CommutingProof};
use super::RaagError;
use crate::group::{infinite_order_certificate, Presentation, RaagGraph, Word, WordProblemContext};

/// Artin graph: a simplicial graph with a label `m ≥ 2` on each edge,
/// meaning `stst… = tsts…` (both sides of length `m`). All labels 2 is a RAAG.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArtinGraphFile", into = "ArtinGraphFile")]
pub struct ArtinGraph {
    base: RaagGraph,
    labels: BTreeMap<(u32, u32), u32>,
}

/// `{"vertices": 2, "edges": [[1, 2]], "labels": {"[1,2]": 3}}`; unlabeled edges are 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArtinGraphFile {
    #[serde(flatten)]
    pub base: RaagGraph,
    #[serde(default)]
    pub labels: BTreeMap<String, u32>,
}

fn parse_key(k: &str) -> Result<(u32, u32), RaagError> {
    let bad = || RaagError::LabelKey(k.to_string());
    let pair: Vec<u32> = serde_json::from_str(k).map_err(|_| bad())?;
    match pair[..] {
        [u, v] => Ok((u, v)),
        _ => Err(bad()),
    }
}

impl TryFrom<ArtinGraphFile> for ArtinGraph {
    type Error = RaagError;
    fn try_from(f: ArtinGraphFile) -> Result<Self, RaagError> {
        let labels = f.labels.iter().map(|(k, &m)| parse_key(k).map(|e| (e, m))).collect::<Result<Vec<_>, _>>()?;
        ArtinGraph::new(f.base, labels)
    }
}

impl From<ArtinGraph> for ArtinGraphFile {
    fn from(g: ArtinGraph) -> Self {
        let labels = g.labels.iter().filter(|(_, &m)| m != 2).map(|(&(u, v), &m)| (format!("[{u},{v}]"), m)).collect();
        ArtinGraphFile { base: g.base, labels }
    }
}

impl ArtinGraph {
    pub fn new(base: RaagGraph, labels: impl IntoIterator<Item = ((u32, u32), u32)>) -> Result<Self, RaagError> {
        let mut map: BTreeMap<(u32, u32), u32> = base.edges().map(|e| (e, 2)).collect();
        for ((u, v), m) in labels {
            let key = (u.min(v), u.max(v));
            if !map.contains_key(&key) {
                return Err(RaagError::LabelOnNonEdge(u, v));
            }
            if m < 2 {
                return Err(RaagError::BadLabel(m));
            }
            map.insert(key, m);
        }
        Ok(ArtinGraph { base, labels: map })
    }

    pub fn right_angled(base: RaagGraph) -> Self {
        ArtinGraph::new(base, []).expect("no labels")
    }

    pub fn base(&self) -> &RaagGraph {
        &self.base
    }

    pub fn label(&self, u: u32, v: u32) -> Option<u32> {
        self.labels.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_right_angled(&self) -> bool {
        self.labels.values().all(|&m| m == 2)
    }

    pub fn presentation(&self) -> Presentation {
        let alternating = |a: i32, b: i32, m: u32| (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect::<Vec<_>>();
        let relators = self
            .labels
            .iter()
            .map(|(&(u, v), &m)| {
                let (u, v) = (u as i32, v as i32);
                let lhs = Word::new(alternating(u, v, m)).expect("nonzero");
                let rhs = Word::new(alternating(v, u, m)).expect("nonzero");
                lhs.concat(&rhs.inverse())
            })
            .collect();
        Presentation::with_default_names(self.base.vertex_count() as usize, relators).expect("valid relators")
    }
}

/// `(s₁, z₁, s₂, z₂, …, s_k)` along [`dfs_walk`], with `z_i = (s_i s_{i+1})^{m_i}`
/// central in the dihedral Artin group on the edge `s_i s_{i+1}`.
pub fn artin_chain_commuting(g: &ArtinGraph) -> Option<ChainCommutingSequence> {
    let walk = dfs_walk(&g.base)?;
    let mut sequence = vec![Word::generator(walk[0])];
    let mut proofs = Vec::new();
    for p in walk.windows(2) {
        let (s, t) = (p[0], p[1]);
        let m = g.label(s, t).expect("walk follows edges");
        let z = Word::new(vec![s as i32, t as i32]).expect("nonzero").pow(m as i64);
        let proof = if m == 2 {
            if g.is_right_angled() {
                CommutingProof::NormalForm
            } else {
                CommutingProof::DefiningRelation { s, t }
            }
        } else {
            CommutingProof::CitedCentre { s, t, m }
        };
        sequence.push(z);
        sequence.push(Word::generator(t));
        proofs.push(proof.clone());
        proofs.push(proof);
    }
    let ctx = if g.is_right_angled() {
        WordProblemContext::raag(g.base.clone())
    } else {
        WordProblemContext::battery(g.presentation(), Vec::new()).expect("valid presentation")
    };
    let orders = sequence.iter().map(|w| infinite_order_certificate(w, &ctx)).collect();
    Some(ChainCommutingSequence { sequence, proofs, orders })
}
