use std::collections::BTreeSet;

use serde::Serialize;

use super::graph::{connected, connectedness_path, ConnectednessPath, CosetGraph};
use super::QNormalError;
use crate::group::{Word, WordProblemContext};

/// Edge orbits met by one path `eL → g_i L` per generator, restricted to the truncation.
#[derive(Clone, Debug, Serialize)]
pub struct TrimmedGraph {
    pub kept_orbits: BTreeSet<usize>,
    /// Indices into the input graph's edge list.
    pub edges: Vec<usize>,
    pub paths: Vec<ConnectednessPath>,
    pub connected: bool,
}

impl TrimmedGraph {
    pub fn orbit_count(&self) -> usize {
        self.kept_orbits.len()
    }
}

pub fn trim_cocompact(
    graph: &CosetGraph,
    generators: &[Word],
    ctx: &WordProblemContext,
    max_len: usize,
) -> Result<TrimmedGraph, QNormalError> {
    let mut kept_orbits = BTreeSet::new();
    let mut paths = Vec::with_capacity(generators.len());
    for g in generators {
        ctx.check_word(g)?;
        if graph.vertex_of(&graph.space().coset_of(g)).is_none() {
            return Err(QNormalError::TruncationTooSmall(g.clone()));
        }
        let path = connectedness_path(graph, g, ctx, max_len)?;
        if !path.within_graph || !path.edges_recorded {
            return Err(QNormalError::TruncationTooSmall(g.clone()));
        }
        for (step, pair) in path.factorization.iter().zip(path.vertices.windows(2)) {
            let label = step.unsigned_abs() as usize - 1;
            let (a, b) =
                (graph.vertex_of(&pair[0]).expect("within graph"), graph.vertex_of(&pair[1]).expect("within graph"));
            let edge = graph
                .edges
                .iter()
                .find(|e| e.label == label && ((e.u == a && e.v == b) || (e.u == b && e.v == a)))
                .expect("edges recorded");
            kept_orbits.insert(edge.orbit);
        }
        paths.push(path);
    }
    let edges: Vec<usize> = (0..graph.edges.len()).filter(|&i| kept_orbits.contains(&graph.edges[i].orbit)).collect();
    let is_connected = connected(graph.vertices.len(), edges.iter().map(|&i| (graph.edges[i].u, graph.edges[i].v)));
    Ok(TrimmedGraph { kept_orbits, edges, paths, connected: is_connected })
}
