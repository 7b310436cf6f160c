use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graph::{connected, Completeness, CosetEdge, CosetGraph, CosetSpace, CosetVertex, EdgeFamily};
use super::witness::{equality_status, CertStatus, Witness, WitnessReport};
use super::QNormalError;
use crate::group::{free_reduce, infinite_order_certificate, Word, WordProblemContext};

/// Representative `f = {eH, g(f)H}` of an outer edge orbit, with a witness that
/// `L ∩ g(f) L g(f)⁻¹` is infinite (expressions over the inner subgroup words).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub g_f: Word,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowUpGraph {
    /// Vertices are `g_i h_j L`, edges tagged inner or connector.
    pub graph: CosetGraph,
    /// `(outer vertex, inner vertex)` for each vertex of `graph`.
    pub pairs: Vec<(usize, usize)>,
    pub connectors: Vec<WitnessReport>,
    /// Distinct pairs give distinct cosets of `L`.
    pub injective: bool,
    /// `Some(true)` when everything is finite and the vertex count equals `[G:L]`.
    pub matches_index: Option<bool>,
    pub connected: bool,
}

fn check_connector(c: &Connector, subgroup: &[Word], ctx: &WordProblemContext) -> Result<WitnessReport, QNormalError> {
    let wit = c.witness.as_ref().ok_or_else(|| QNormalError::MissingWitness(c.g_f.clone()))?;
    ctx.check_word(&wit.w)?;
    let in_l = wit.expr_in_l.substitute(subgroup)?;
    let x = wit.expr_in_conjugate.substitute(subgroup)?;
    let in_subgroup = ctx.compare(&in_l, &wit.w)?;
    let in_conjugate = ctx.compare(&c.g_f.conjugate(&x), &wit.w)?;
    let order = infinite_order_certificate(&wit.w, ctx);
    let order_status = if order.is_proven() { CertStatus::Proven } else { CertStatus::Consistent };
    let status = equality_status(in_subgroup).min(equality_status(in_conjugate)).min(order_status);
    Ok(WitnessReport { s: c.g_f.clone(), w: wit.w.clone(), in_subgroup, in_conjugate, order, status })
}

/// Replace each vertex `gH` of `outer` by a translated copy of `inner` (a graph on
/// `H/L`) and join the copies along the connector edges `{gL, g·g(f)L}`.
///
/// Both graphs must come from the same group; `outer` must be complete.
pub fn blow_up(
    outer: &CosetGraph,
    inner: &CosetGraph,
    connectors: &[Connector],
    ctx: &WordProblemContext,
) -> Result<BlowUpGraph, QNormalError> {
    if outer.completeness != Completeness::Complete {
        return Err(QNormalError::Unsupported("outer graph must be complete".into()));
    }
    let mut reports = Vec::with_capacity(connectors.len());
    for c in connectors {
        let report = check_connector(c, &inner.subgroup, ctx)?;
        if report.status == CertStatus::Failed {
            return Err(QNormalError::WitnessRejected(c.g_f.clone()));
        }
        let base = outer.space().base();
        let target = outer.space().coset_of(&c.g_f);
        let incident = outer.edges.iter().any(|e| {
            let (a, b) = (&outer.vertices[e.u].key, &outer.vertices[e.v].key);
            (a == &base && b == &target) || (a == &target && b == &base)
        });
        if !incident {
            return Err(QNormalError::NotIncident(c.g_f.clone()));
        }
        reports.push(report);
    }

    let space: &CosetSpace = inner.space();
    let mut vertices = Vec::new();
    let mut pairs = Vec::new();
    let mut index = BTreeMap::new();
    let mut injective = true;
    for (i, ov) in outer.vertices.iter().enumerate() {
        for (j, iv) in inner.vertices.iter().enumerate() {
            let key = space.left_multiply(&ov.rep, &iv.key);
            if index.insert(key.clone(), vertices.len()).is_some() {
                injective = false;
            }
            pairs.push((i, j));
            vertices.push(CosetVertex {
                key,
                rep: free_reduce(&ov.rep.concat(&iv.rep)),
                depth: iv.depth,
                frontier: iv.frontier,
            });
        }
    }
    if !injective {
        return Err(QNormalError::Unsupported(
            "outer representatives do not give distinct cosets of the inner subgroup".into(),
        ));
    }

    let inner_labels = inner.labels.len();
    let mut labels = inner.labels.clone();
    labels.extend(connectors.iter().map(|c| c.g_f.clone()));
    let mut edges = Vec::new();
    for (i, ov) in outer.vertices.iter().enumerate() {
        let offset = i * inner.vertices.len();
        for e in &inner.edges {
            edges.push(CosetEdge {
                u: offset + e.u,
                v: offset + e.v,
                label: e.label,
                orbit: e.orbit,
                via: free_reduce(&ov.rep.concat(&e.via)),
                family: EdgeFamily::Inner,
            });
        }
    }
    for (f, c) in connectors.iter().enumerate() {
        for (u, v) in vertices.iter().enumerate() {
            let target = space.coset_of(&v.rep.concat(&c.g_f));
            if let Some(&w) = index.get(&target) {
                edges.push(CosetEdge {
                    u,
                    v: w,
                    label: inner_labels + f,
                    orbit: inner_labels + f,
                    via: v.rep.clone(),
                    family: EdgeFamily::Connector,
                });
            }
        }
    }
    let matches_index = match space {
        CosetSpace::Table { table, .. } if inner.completeness == Completeness::Complete => {
            Some(vertices.len() == table.index())
        }
        _ => None,
    };
    let is_connected = connected(vertices.len(), edges.iter().map(|e| (e.u, e.v)));
    let graph = CosetGraph::from_parts(
        space.clone(),
        outer.ambient.clone(),
        inner.subgroup.clone(),
        labels,
        vertices,
        edges,
        inner.completeness,
    );
    Ok(BlowUpGraph { graph, pairs, connectors: reports, injective, matches_index, connected: is_connected })
}

#[cfg(test)]
#[allow(clippy::cloned_ref_to_slice_refs)]
mod tests {
    use super::*;
    use crate::qnormal::{build_coset_graph, GraphOptions};

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    fn opts(ambient: Option<Vec<Word>>, radius: usize) -> GraphOptions {
        GraphOptions { ambient, budget: 200, radius }
    }

    fn x_witness(g_f: &[i32]) -> Connector {
        Connector { g_f: w(g_f), witness: Some(Witness { w: w(&[1]), expr_in_l: w(&[1]), expr_in_conjugate: w(&[1]) }) }
    }

    #[test]
    fn through_index_two_subgroup_matches_direct_ball() {
        let ctx = WordProblemContext::free_abelian(2);
        let (x, y, y2) = (w(&[1]), w(&[2]), w(&[2, 2]));
        let outer = build_coset_graph(&ctx, &[x.clone(), y2.clone()], &[y.clone()], &opts(None, 2)).unwrap();
        assert_eq!(outer.vertices.len(), 2);
        let inner =
            build_coset_graph(&ctx, &[x.clone()], &[x.clone(), y2.clone()], &opts(Some(vec![x.clone(), y2]), 1))
                .unwrap();
        let b = blow_up(&outer, &inner, &[x_witness(&[2])], &ctx).unwrap();
        assert!(b.injective && b.connected);
        assert_eq!(b.graph.vertices.len(), 6);
        assert_eq!(b.connectors[0].status, CertStatus::Proven);

        let direct = build_coset_graph(&ctx, &[x.clone()], &[x, y], &opts(None, 2)).unwrap();
        let keys = direct.vertex_keys();
        assert!(keys.is_subset(&b.graph.vertex_keys()));
        let restricted: std::collections::BTreeSet<_> =
            b.graph.labeled_edges(Some(&keys)).into_iter().filter(|(_, _, s)| direct.labels.contains(s)).collect();
        assert_eq!(restricted, direct.labeled_edges(None));
    }

    #[test]
    fn trivial_outer_reproduces_inner() {
        let ctx = WordProblemContext::free_abelian(2);
        let outer = build_coset_graph(&ctx, &[w(&[1]), w(&[2])], &[], &opts(None, 2)).unwrap();
        assert_eq!(outer.vertices.len(), 1);
        let inner = build_coset_graph(&ctx, &[w(&[1])], &[w(&[1]), w(&[2])], &opts(None, 2)).unwrap();
        let b = blow_up(&outer, &inner, &[], &ctx).unwrap();
        assert_eq!(b.graph.labeled_edges(None), inner.labeled_edges(None));
        assert_eq!(b.graph.vertex_keys(), inner.vertex_keys());
    }

    #[test]
    fn finite_instance_has_index_many_vertices() {
        // ℤ/4 ⊃ 2ℤ/4 ⊃ 0 inside ℤ² / ⟨a⁴, b⟩
        let ctx = WordProblemContext::free_abelian(2);
        let (a, b) = (w(&[1]), w(&[2]));
        let a2 = w(&[1, 1]);
        let l = [w(&[1, 1, 1, 1]), b.clone()];
        let outer = build_coset_graph(&ctx, &[a2.clone(), b.clone()], &[a.clone()], &opts(None, 2)).unwrap();
        let inner = build_coset_graph(&ctx, &l, &[a2.clone()], &opts(Some(vec![a2, b.clone()]), 2)).unwrap();
        assert_eq!(inner.vertices.len(), 2);
        let conn =
            Connector { g_f: a, witness: Some(Witness { w: b, expr_in_l: w(&[2]), expr_in_conjugate: w(&[2]) }) };
        let r = blow_up(&outer, &inner, &[conn], &ctx).unwrap();
        assert_eq!(r.matches_index, Some(true));
        assert_eq!(r.graph.vertices.len(), 4);
        assert!(r.connected);
    }

    #[test]
    fn refusals() {
        let ctx = WordProblemContext::free_abelian(2);
        let (x, y, y2) = (w(&[1]), w(&[2]), w(&[2, 2]));
        let outer = build_coset_graph(&ctx, &[x.clone(), y2.clone()], &[y.clone()], &opts(None, 2)).unwrap();
        let inner = build_coset_graph(&ctx, &[x.clone()], &[x.clone()], &opts(Some(vec![x, y2]), 1)).unwrap();
        let missing = Connector { g_f: y, witness: None };
        assert!(matches!(blow_up(&outer, &inner, &[missing], &ctx), Err(QNormalError::MissingWitness(_))));
        // y² fixes eH, so {eH, y²H} is not an edge of the outer graph
        assert!(matches!(blow_up(&outer, &inner, &[x_witness(&[2, 2])], &ctx), Err(QNormalError::NotIncident(_))));
        let mut bad = x_witness(&[2]);
        bad.witness.as_mut().unwrap().w = w(&[2]);
        assert!(matches!(blow_up(&outer, &inner, &[bad], &ctx), Err(QNormalError::WitnessRejected(_))));
        // no connectors: two disconnected copies
        let r = blow_up(&outer, &inner, &[], &ctx).unwrap();
        assert!(!r.connected);
    }
}
