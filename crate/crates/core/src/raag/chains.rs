use serde::Serialize;

use super::RaagError;
use crate::group::{
    infinite_order_certificate, raag_normal_form, OrderCertificate, RaagGraph, Word, WordProblemContext,
};
use crate::qnormal::{verify_chain, CertStatus, ChainReport, QNormalChainCertificate, QNormalWitnessSet, Witness};

#[derive(Clone, Debug, Serialize)]
pub struct InnerAmenability {
    pub inner_amenable: bool,
    /// Smallest vertex adjacent to every other vertex.
    pub cone_vertex: Option<u32>,
    /// The cone vertex commutes with every generator, checked on normal forms.
    pub centrality_verified: bool,
}

/// A RAAG is inner-amenable exactly when it splits off a ℤ factor, i.e. its
/// graph has a cone vertex.
pub fn is_inner_amenable_raag(g: &RaagGraph) -> InnerAmenability {
    let n = g.vertex_count();
    let cone = (1..=n).find(|&v| (1..=n).all(|u| u == v || g.adjacent(u, v)));
    let centrality_verified = cone.is_some_and(|v| {
        (1..=n).all(|u| {
            let c = Word::commutator(&Word::generator(v), &Word::generator(u));
            raag_normal_form(&c, g).expect("generators in range").is_empty()
        })
    });
    InnerAmenability { inner_amenable: cone.is_some(), cone_vertex: cone, centrality_verified }
}

/// Why two consecutive elements commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommutingProof {
    /// The commutator has empty RAAG normal form.
    NormalForm,
    /// `s` and `t` commute by a defining relation, so any word in them commutes with both.
    DefiningRelation { s: u32, t: u32 },
    /// `(st)^m` is central in the dihedral Artin group with label `m`; cited, not checked.
    CitedCentre { s: u32, t: u32, m: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainCommutingSequence {
    pub sequence: Vec<Word>,
    /// One entry per consecutive pair.
    pub proofs: Vec<CommutingProof>,
    pub orders: Vec<OrderCertificate>,
}

/// Depth-first vertex walk from vertex 1 that visits every vertex, stepping
/// back along tree edges when a branch is exhausted. `None` if disconnected.
pub fn dfs_walk(g: &RaagGraph) -> Option<Vec<u32>> {
    if !g.is_connected() {
        return None;
    }
    // Returns the tree path back from the end of the walk to `v`, pushed only
    // if another branch follows.
    fn visit(g: &RaagGraph, v: u32, seen: &mut [bool], walk: &mut Vec<u32>) -> Vec<u32> {
        seen[v as usize] = true;
        walk.push(v);
        let mut back = Vec::new();
        for u in g.neighbours(v).collect::<Vec<_>>() {
            if !seen[u as usize] {
                walk.append(&mut back);
                back = visit(g, u, seen, walk);
                back.push(v);
            }
        }
        back
    }
    let mut seen = vec![false; g.vertex_count() as usize + 1];
    let mut walk = Vec::new();
    let _ = visit(g, 1, &mut seen, &mut walk);
    Some(walk)
}

/// Generators along [`dfs_walk`]; consecutive ones are adjacent, hence commute.
pub fn chain_commuting_sequence(g: &RaagGraph) -> Option<ChainCommutingSequence> {
    let walk = dfs_walk(g)?;
    let ctx = WordProblemContext::raag(g.clone());
    let sequence: Vec<Word> = walk.iter().map(|&v| Word::generator(v)).collect();
    let proofs = sequence
        .windows(2)
        .map(|p| {
            let c = Word::commutator(&p[0], &p[1]);
            assert!(raag_normal_form(&c, g).expect("in range").is_empty(), "walk steps along edges");
            CommutingProof::NormalForm
        })
        .collect();
    let orders = sequence.iter().map(|w| infinite_order_certificate(w, &ctx)).collect();
    Some(ChainCommutingSequence { sequence, proofs, orders })
}

/// Consecutive elements commute, every element is nontrivial, and every
/// standard generator occurs as a one-letter element.
pub fn validate_sequence(seq: &[Word], g: &RaagGraph) -> Result<(), RaagError> {
    if seq.is_empty() {
        return Err(RaagError::InvalidSequence("empty".into()));
    }
    for w in seq {
        if raag_normal_form(w, g)?.is_empty() {
            return Err(RaagError::InvalidSequence(format!("{w} is trivial")));
        }
    }
    for (i, p) in seq.windows(2).enumerate() {
        if !raag_normal_form(&Word::commutator(&p[0], &p[1]), g)?.is_empty() {
            return Err(RaagError::InvalidSequence(format!("elements {} and {} do not commute", i + 1, i + 2)));
        }
    }
    for v in 1..=g.vertex_count() as i32 {
        if !seq.iter().any(|w| w.letters() == [v]) {
            return Err(RaagError::InvalidSequence(format!("generator {v} does not occur")));
        }
    }
    Ok(())
}

fn idx(k: usize) -> Word {
    Word::generator(k as u32 + 1)
}

fn same(k: usize, w: &Word) -> Witness {
    Witness { w: w.clone(), expr_in_l: idx(k), expr_in_conjugate: idx(k) }
}

/// `⟨γ₁⟩ ≤_q ⟨γ₁, γ₂⟩ ≤_q ⋯ ≤_q Γ` with witness `γ_prev` for each new element.
///
/// Repeated elements add no step. If the distinct elements are not exactly
/// the standard generators, a last step `⟨γ's⟩ ≤_q Γ` is appended; it is
/// an equality of groups, witnessed by the generators themselves.
pub fn emit_qnormal_chain(seq: &[Word], g: &RaagGraph) -> Result<QNormalChainCertificate, RaagError> {
    validate_sequence(seq, g)?;
    let mut distinct: Vec<Word> = Vec::new();
    let mut steps = Vec::new();
    for (p, w) in seq.iter().enumerate() {
        if distinct.contains(w) {
            continue;
        }
        if p > 0 {
            let prev = distinct.iter().position(|d| d == &seq[p - 1]).expect("seen earlier");
            let mut witnesses: Vec<Witness> = distinct.iter().enumerate().map(|(k, d)| same(k, d)).collect();
            witnesses.push(same(prev, &seq[p - 1]));
            let mut ambient = distinct.clone();
            ambient.push(w.clone());
            steps.push(QNormalWitnessSet {
                subgroup_words: distinct.clone(),
                generating_set: (0..ambient.len()).map(idx).collect(),
                ambient_words: ambient,
                witnesses,
            });
        }
        distinct.push(w.clone());
    }
    let n = g.vertex_count() as usize;
    let is_permutation = distinct.len() == n && distinct.iter().all(|w| w.len() == 1 && w.letters()[0] > 0);
    if !is_permutation {
        let top: Vec<Word> = (1..=n as u32).map(Word::generator).collect();
        let witnesses = top.iter().map(|t| same(distinct.iter().position(|d| d == t).expect("validated"), t)).collect();
        steps.push(QNormalWitnessSet {
            subgroup_words: distinct.clone(),
            generating_set: (0..n).map(idx).collect(),
            ambient_words: top,
            witnesses,
        });
    }
    Ok(QNormalChainCertificate { base: distinct[0].clone(), steps })
}

#[derive(Clone, Debug, Serialize)]
pub struct RaagAnalysis {
    pub inner_amenability: InnerAmenability,
    pub chain_commuting: Option<ChainCommutingSequence>,
    #[serde(skip)]
    pub certificate: Option<QNormalChainCertificate>,
    #[serde(skip)]
    pub chain_report: Option<ChainReport>,
    /// Status of the emitted chain; a chain with no steps is `ℤ` itself.
    pub chain_status: Option<CertStatus>,
}

pub fn analyze_raag(g: &RaagGraph) -> Result<RaagAnalysis, RaagError> {
    let inner_amenability = is_inner_amenable_raag(g);
    let chain_commuting = chain_commuting_sequence(g);
    let (mut certificate, mut chain_report, mut chain_status) = (None, None, None);
    if let Some(seq) = &chain_commuting {
        let cert = emit_qnormal_chain(&seq.sequence, g)?;
        let ctx = WordProblemContext::raag(g.clone());
        if cert.steps.is_empty() {
            chain_status = Some(if infinite_order_certificate(&cert.base, &ctx).is_proven() {
                CertStatus::Proven
            } else {
                CertStatus::Consistent
            });
        } else {
            let r = verify_chain(&cert, &ctx)?;
            chain_status = Some(r.status);
            chain_report = Some(r);
        }
        certificate = Some(cert);
    }
    Ok(RaagAnalysis { inner_amenability, chain_commuting, certificate, chain_report, chain_status })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> RaagGraph {
        RaagGraph::new(4, [(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap()
    }

    fn gens(v: &[u32]) -> Vec<Word> {
        v.iter().map(|&g| Word::generator(g)).collect()
    }

    #[test]
    fn cone_vertices() {
        assert!(!is_inner_amenable_raag(&c4()).inner_amenable);
        let p3 = RaagGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let r = is_inner_amenable_raag(&p3);
        assert_eq!(r.cone_vertex, Some(2));
        assert!(r.centrality_verified);
        let one = is_inner_amenable_raag(&RaagGraph::edgeless(1).unwrap());
        assert_eq!(one.cone_vertex, Some(1));
        assert!(!is_inner_amenable_raag(&RaagGraph::edgeless(2).unwrap()).inner_amenable);
    }

    #[test]
    fn walks() {
        assert_eq!(dfs_walk(&c4()), Some(vec![1, 3, 2, 4]));
        assert_eq!(dfs_walk(&RaagGraph::complete(3).unwrap()), Some(vec![1, 2, 3]));
        assert_eq!(dfs_walk(&RaagGraph::edgeless(2).unwrap()), None);
        assert_eq!(dfs_walk(&RaagGraph::edgeless(1).unwrap()), Some(vec![1]));
        // star with centre 1 forces returns to the centre
        let star = RaagGraph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(dfs_walk(&star), Some(vec![1, 2, 1, 3, 1, 4]));
        let deep = RaagGraph::new(4, [(1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(dfs_walk(&deep), Some(vec![1, 2, 3, 2, 1, 4]));
    }

    #[test]
    fn c4_is_chain_commuting_but_not_inner_amenable() {
        let a = analyze_raag(&c4()).unwrap();
        assert!(!a.inner_amenability.inner_amenable);
        assert_eq!(a.chain_commuting.as_ref().unwrap().sequence, gens(&[1, 3, 2, 4]));
        assert_eq!(a.certificate.as_ref().unwrap().steps.len(), 3);
        assert_eq!(a.chain_status, Some(CertStatus::Proven));
    }

    #[test]
    fn p3_agrees_with_cone_vertex() {
        let p3 = RaagGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let a = analyze_raag(&p3).unwrap();
        assert!(a.inner_amenability.inner_amenable);
        assert_eq!(a.certificate.as_ref().unwrap().steps.len(), 2);
        assert_eq!(a.chain_status, Some(CertStatus::Proven));
    }

    #[test]
    fn single_vertex_has_base_only() {
        let a = analyze_raag(&RaagGraph::edgeless(1).unwrap()).unwrap();
        assert!(a.certificate.as_ref().unwrap().steps.is_empty());
        assert_eq!(a.chain_status, Some(CertStatus::Proven));
    }

    #[test]
    fn star_repeats_collapse() {
        let star = RaagGraph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let a = analyze_raag(&star).unwrap();
        assert_eq!(a.certificate.as_ref().unwrap().steps.len(), 3);
        assert_eq!(a.chain_status, Some(CertStatus::Proven));
    }

    #[test]
    fn invalid_sequences() {
        let g = c4();
        assert!(emit_qnormal_chain(&gens(&[1, 2, 3, 4]), &g).is_err());
        assert!(emit_qnormal_chain(&gens(&[1, 3, 2]), &g).is_err());
        assert!(emit_qnormal_chain(&[], &g).is_err());
    }

    #[test]
    fn non_generator_elements_get_a_closing_step() {
        // (a, (ac)², c) in ℤ²
        let g = RaagGraph::complete(2).unwrap();
        let seq = vec![Word::generator(1), Word::new(vec![1, 2, 1, 2]).unwrap(), Word::generator(2)];
        let c = emit_qnormal_chain(&seq, &g).unwrap();
        assert_eq!(c.steps.len(), 3);
        let r = verify_chain(&c, &WordProblemContext::raag(g)).unwrap();
        assert_eq!(r.status, CertStatus::Proven);
    }
}
