use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::witness::QNormalWitnessSet;
use super::QNormalError;
use crate::coset::{todd_coxeter, CosetError, CosetTable};
use crate::group::{
    infinite_order_certificate, raag_normal_form, ContextKind, Equality, OrderCertificate, RaagGraph, Word,
    WordProblemContext,
};

/// Canonical name of a left coset `gL`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum CosetKey {
    /// Row of a finite coset table.
    Coset(usize),
    /// Shortest representative in normal form.
    Rep(Word),
}

/// How left cosets of `L` are named and multiplied.
#[derive(Clone, Debug)]
pub enum CosetSpace {
    /// `L` has finite index; `gL` is the right coset `L g⁻¹` of the table.
    Table { table: CosetTable, left_reps: Vec<Word> },
    /// `L` is generated by a set of standard generators of a RAAG (free and free
    /// abelian groups included): `gL` is named by its unique shortest element.
    Parabolic { graph: RaagGraph, subgroup: BTreeSet<u32> },
}

fn context_graph(ctx: &WordProblemContext) -> Option<RaagGraph> {
    let n = ctx.generator_count() as u32;
    match ctx.kind() {
        ContextKind::Raag(g) => Some(g.clone()),
        ContextKind::Free => RaagGraph::edgeless(n).ok(),
        ContextKind::FreeAbelian => RaagGraph::complete(n).ok(),
        ContextKind::FiniteQuotientBattery(_) => None,
    }
}

impl CosetSpace {
    /// Finite coset table when enumeration succeeds within `budget`, otherwise
    /// canonical representatives when `L` is parabolic in a decidable context.
    pub fn new(ctx: &WordProblemContext, subgroup: &[Word], budget: usize) -> Result<Self, QNormalError> {
        for w in subgroup {
            ctx.check_word(w)?;
        }
        match todd_coxeter(ctx.presentation(), subgroup, budget) {
            Ok(table) => {
                let left_reps = table.transversal().iter().map(Word::inverse).collect();
                Ok(CosetSpace::Table { table, left_reps })
            }
            Err(CosetError::BudgetExceeded(_)) => {
                let graph = context_graph(ctx).ok_or(QNormalError::NoCosetModel)?;
                let mut vertices = BTreeSet::new();
                for w in subgroup {
                    match w.letters() {
                        [] => {}
                        [l] => {
                            vertices.insert(l.unsigned_abs());
                        }
                        _ => return Err(QNormalError::NoCosetModel),
                    }
                }
                Ok(CosetSpace::Parabolic { graph, subgroup: vertices })
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CosetSpace::Table { .. })
    }

    pub fn base(&self) -> CosetKey {
        match self {
            CosetSpace::Table { .. } => CosetKey::Coset(0),
            CosetSpace::Parabolic { .. } => CosetKey::Rep(Word::identity()),
        }
    }

    /// The coset `gL`.
    pub fn coset_of(&self, g: &Word) -> CosetKey {
        match self {
            CosetSpace::Table { table, .. } => CosetKey::Coset(table.apply_word(0, &g.inverse())),
            CosetSpace::Parabolic { graph, subgroup } => {
                let nf = raag_normal_form(g, graph).expect("word checked against the group");
                CosetKey::Rep(shortest_in_coset(nf, graph, subgroup))
            }
        }
    }

    /// `γ · (key)`.
    pub fn left_multiply(&self, gamma: &Word, key: &CosetKey) -> CosetKey {
        match (self, key) {
            (CosetSpace::Table { table, .. }, CosetKey::Coset(c)) => {
                CosetKey::Coset(table.apply_word(*c, &gamma.inverse()))
            }
            (CosetSpace::Parabolic { .. }, CosetKey::Rep(u)) => self.coset_of(&gamma.concat(u)),
            _ => panic!("coset key from a different space"),
        }
    }

    /// Some `g` with `gL = key`.
    pub fn representative(&self, key: &CosetKey) -> Word {
        match (self, key) {
            (CosetSpace::Table { left_reps, .. }, CosetKey::Coset(c)) => left_reps[*c].clone(),
            (_, CosetKey::Rep(u)) => u.clone(),
            _ => panic!("coset key from a different space"),
        }
    }

    /// `γ` fixes the coset `key` under left translation.
    pub fn fixes(&self, gamma: &Word, key: &CosetKey) -> bool {
        &self.left_multiply(gamma, key) == key
    }
}

/// Remove letters of `L` that can be shuffled to the right end until none remain.
fn shortest_in_coset(nf: Word, graph: &RaagGraph, subgroup: &BTreeSet<u32>) -> Word {
    let mut letters = nf.letters().to_vec();
    'outer: loop {
        for i in (0..letters.len()).rev() {
            let x = letters[i];
            if !subgroup.contains(&x.unsigned_abs()) {
                continue;
            }
            let movable =
                letters[i + 1..].iter().all(|&y| y.unsigned_abs() == x.unsigned_abs() || graph.letters_commute(x, y));
            if movable {
                letters.remove(i);
                continue 'outer;
            }
        }
        break;
    }
    raag_normal_form(&Word::new(letters).expect("nonzero letters"), graph).expect("letters in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "radius", rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    Ball(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeFamily {
    Coset,
    Inner,
    Connector,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetVertex {
    pub key: CosetKey,
    pub rep: Word,
    /// Word length over the ambient generators of the shortest `g` with `gL` here.
    pub depth: usize,
    /// Some neighbour under an ambient generator lies outside the truncation.
    pub frontier: bool,
}

/// The edge `{via·L, via·s·L}` for label `s`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetEdge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
    pub orbit: usize,
    pub via: Word,
    pub family: EdgeFamily,
}

/// `G/L` (or a ball in it) with edges `{gL, gsL}` for `s` in a label set.
#[derive(Clone, Debug, Serialize)]
pub struct CosetGraph {
    #[serde(skip)]
    space: CosetSpace,
    #[serde(skip)]
    index: BTreeMap<CosetKey, usize>,
    pub ambient: Vec<Word>,
    pub subgroup: Vec<Word>,
    pub labels: Vec<Word>,
    pub vertices: Vec<CosetVertex>,
    pub edges: Vec<CosetEdge>,
    pub completeness: Completeness,
}

fn signed(gens: &[Word]) -> Vec<Word> {
    gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect()
}

impl CosetGraph {
    pub(crate) fn from_parts(
        space: CosetSpace,
        ambient: Vec<Word>,
        subgroup: Vec<Word>,
        labels: Vec<Word>,
        vertices: Vec<CosetVertex>,
        edges: Vec<CosetEdge>,
        completeness: Completeness,
    ) -> Self {
        let index = vertices.iter().enumerate().map(|(i, v)| (v.key.clone(), i)).collect();
        CosetGraph { space, index, ambient, subgroup, labels, vertices, edges, completeness }
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn vertex_of(&self, key: &CosetKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn base(&self) -> usize {
        self.vertex_of(&self.space.base()).expect("base coset is always present")
    }

    pub fn orbit_count(&self) -> usize {
        self.edges.iter().map(|e| e.orbit).collect::<BTreeSet<_>>().len()
    }

    pub fn vertex_keys(&self) -> BTreeSet<CosetKey> {
        self.index.keys().cloned().collect()
    }

    /// Edges as unordered key pairs with label words, optionally restricted to
    /// edges whose endpoints both lie in `within`.
    pub fn labeled_edges(&self, within: Option<&BTreeSet<CosetKey>>) -> BTreeSet<(CosetKey, CosetKey, Word)> {
        self.edges
            .iter()
            .filter_map(|e| {
                let (a, b) = (&self.vertices[e.u].key, &self.vertices[e.v].key);
                if let Some(set) = within {
                    if !set.contains(a) || !set.contains(b) {
                        return None;
                    }
                }
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                Some((a.clone(), b.clone(), self.labels[e.label].clone()))
            })
            .collect()
    }

    pub fn has_edge(&self, a: &CosetKey, b: &CosetKey, label: usize) -> bool {
        let (Some(x), Some(y)) = (self.vertex_of(a), self.vertex_of(b)) else {
            return false;
        };
        self.edges.iter().any(|e| e.label == label && ((e.u == x && e.v == y) || (e.u == y && e.v == x)))
    }

    pub fn is_connected(&self) -> bool {
        connected(self.vertices.len(), self.edges.iter().map(|e| (e.u, e.v)))
    }
}

pub(crate) fn connected(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// Options for [`build_coset_graph`].
#[derive(Clone, Debug)]
pub struct GraphOptions {
    /// Generators of the acting group; defaults to the group's own generators.
    pub ambient: Option<Vec<Word>>,
    /// Cap on live cosets when probing for finite index.
    pub budget: usize,
    /// Ball radius (word length over the ambient generators) for infinite index.
    pub radius: usize,
}

impl Default for GraphOptions {
    fn default() -> Self {
        GraphOptions { ambient: None, budget: 10_000, radius: 3 }
    }
}

/// Graph with vertices `H/L` (`H` the ambient group) and edges `{gL, gsL}`, `g ∈ H`, `s ∈ labels`.
pub fn build_coset_graph(
    ctx: &WordProblemContext,
    subgroup: &[Word],
    labels: &[Word],
    opts: &GraphOptions,
) -> Result<CosetGraph, QNormalError> {
    if opts.budget == 0 {
        return Err(QNormalError::ZeroBudget);
    }
    let ambient: Vec<Word> = match &opts.ambient {
        Some(a) => a.clone(),
        None => (1..=ctx.generator_count() as u32).map(Word::generator).collect(),
    };
    for w in ambient.iter().chain(labels) {
        ctx.check_word(w)?;
    }
    let space = CosetSpace::new(ctx, subgroup, opts.budget)?;
    let moves = signed(&ambient);
    let limit = if space.is_finite() { usize::MAX } else { opts.radius };

    // vertices: orbit of the base coset, breadth-first
    let mut vertices: Vec<CosetVertex> = Vec::new();
    let mut index: BTreeMap<CosetKey, usize> = BTreeMap::new();
    let base = space.base();
    index.insert(base.clone(), 0);
    vertices.push(CosetVertex { key: base, rep: Word::identity(), depth: 0, frontier: false });
    let mut head = 0;
    while head < vertices.len() {
        let (key, rep, depth) = {
            let v = &vertices[head];
            (v.key.clone(), v.rep.clone(), v.depth)
        };
        head += 1;
        if depth >= limit {
            continue;
        }
        for m in &moves {
            let next = space.left_multiply(m, &key);
            if !index.contains_key(&next) {
                index.insert(next.clone(), vertices.len());
                vertices.push(CosetVertex {
                    key: next,
                    rep: crate::group::free_reduce(&m.concat(&rep)),
                    depth: depth + 1,
                    frontier: false,
                });
            }
        }
    }
    let mut any_frontier = false;
    for v in vertices.iter_mut() {
        v.frontier = moves.iter().any(|m| !index.contains_key(&space.left_multiply(m, &v.key)));
        any_frontier |= v.frontier;
    }
    let completeness = if any_frontier { Completeness::Ball(opts.radius) } else { Completeness::Complete };

    // edges: orbit of {L, sL} under words of length ≤ limit
    let mut edges = Vec::new();
    for (label, s) in labels.iter().enumerate() {
        let mut seen: BTreeSet<(CosetKey, CosetKey)> = BTreeSet::new();
        let mut recorded: BTreeSet<(usize, usize)> = BTreeSet::new();
        let start = (space.base(), space.coset_of(s));
        seen.insert(start.clone());
        let mut queue = VecDeque::from([(start, Word::identity(), 0usize)]);
        while let Some(((a, b), via, depth)) = queue.pop_front() {
            if let (Some(&u), Some(&v)) = (index.get(&a), index.get(&b)) {
                if recorded.insert((u.min(v), u.max(v))) {
                    edges.push(CosetEdge { u, v, label, orbit: label, via: via.clone(), family: EdgeFamily::Coset });
                }
            }
            if depth >= limit {
                continue;
            }
            for m in &moves {
                let pair = (space.left_multiply(m, &a), space.left_multiply(m, &b));
                if seen.insert(pair.clone()) {
                    queue.push_back((pair, crate::group::free_reduce(&m.concat(&via)), depth + 1));
                }
            }
        }
    }
    Ok(CosetGraph::from_parts(space, ambient, subgroup.to_vec(), labels.to_vec(), vertices, edges, completeness))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectednessPath {
    pub target: Word,
    /// Signed 1-based label indices whose product is the target.
    pub factorization: Vec<i32>,
    pub vertices: Vec<CosetKey>,
    pub reps: Vec<Word>,
    /// Every vertex of the path lies in the graph's truncation.
    pub within_graph: bool,
    /// Every consecutive pair is a recorded edge with the right label.
    pub edges_recorded: bool,
}

fn direct_factorization(g: &Word, labels: &[Word]) -> Option<Vec<i32>> {
    g.letters()
        .iter()
        .map(|&l| {
            labels.iter().enumerate().find_map(|(k, s)| {
                if s.letters() == [l] {
                    Some(k as i32 + 1)
                } else if s.letters() == [-l] {
                    Some(-(k as i32 + 1))
                } else {
                    None
                }
            })
        })
        .collect()
}

fn searched_factorization(
    g: &Word,
    labels: &[Word],
    ctx: &WordProblemContext,
    max_len: usize,
) -> Result<Option<Vec<i32>>, QNormalError> {
    if !ctx.is_decidable() {
        return Ok(None);
    }
    let target = ctx.require_normal_form(g)?;
    let mut seen = BTreeSet::from([Word::identity()]);
    let mut queue = VecDeque::from([(Word::identity(), Vec::<i32>::new())]);
    while let Some((nf, fact)) = queue.pop_front() {
        if nf == target {
            return Ok(Some(fact));
        }
        if fact.len() >= max_len {
            continue;
        }
        for (k, s) in labels.iter().enumerate() {
            for (sign, step) in [(1, s.clone()), (-1, s.inverse())] {
                let next = ctx.require_normal_form(&nf.concat(&step))?;
                if seen.insert(next.clone()) {
                    let mut f = fact.clone();
                    f.push(sign * (k as i32 + 1));
                    queue.push_back((next, f));
                }
            }
        }
    }
    Ok(None)
}

/// Path `L, s₁L, s₁s₂L, …, gL` from a factorization of `g` over the labels.
///
/// Letters of `g` that are labels are used directly; otherwise a factorization
/// of length at most `max_len` is searched for (decidable contexts only).
pub fn connectedness_path(
    graph: &CosetGraph,
    g: &Word,
    ctx: &WordProblemContext,
    max_len: usize,
) -> Result<ConnectednessPath, QNormalError> {
    ctx.check_word(g)?;
    let factorization = match direct_factorization(g, &graph.labels) {
        Some(f) => f,
        None => searched_factorization(g, &graph.labels, ctx, max_len)?
            .ok_or(QNormalError::NoFactorization { word: g.clone(), bound: max_len })?,
    };
    let space = &graph.space;
    let mut prefix = Word::identity();
    let mut reps = vec![prefix.clone()];
    let mut vertices = vec![space.base()];
    let mut edges_recorded = true;
    for &f in &factorization {
        let label = f.unsigned_abs() as usize - 1;
        let s = &graph.labels[label];
        let step = if f > 0 { s.clone() } else { s.inverse() };
        prefix = crate::group::free_reduce(&prefix.concat(&step));
        let key = space.coset_of(&prefix);
        edges_recorded &= graph.has_edge(vertices.last().expect("nonempty"), &key, label);
        vertices.push(key);
        reps.push(prefix.clone());
    }
    let within_graph = vertices.iter().all(|k| graph.vertex_of(k).is_some());
    Ok(ConnectednessPath { target: g.clone(), factorization, vertices, reps, within_graph, edges_recorded })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeWitness {
    pub edge: usize,
    pub orbit: usize,
    /// `via · w_s · via⁻¹`.
    pub element: Word,
    pub fixes_both_endpoints: bool,
    pub order: OrderCertificate,
}

/// Stabilizer witnesses `g w_s g⁻¹` for every edge `{gL, gsL}`, using the
/// witness attached to `s` in `ws`.
pub fn edge_stabilizer_witnesses(
    graph: &CosetGraph,
    ws: &QNormalWitnessSet,
    ctx: &WordProblemContext,
) -> Result<Vec<EdgeWitness>, QNormalError> {
    let s_top = ws.generating_set_in_top()?;
    let mut by_label = Vec::with_capacity(graph.labels.len());
    for s in &graph.labels {
        let mut found = None;
        for (k, t) in s_top.iter().enumerate() {
            if t == s || ctx.compare(t, s)? == Equality::ProvenEqual {
                found = Some(k);
                break;
            }
        }
        by_label.push(found.ok_or_else(|| QNormalError::UnwitnessedLabel(s.clone()))?);
    }
    let mut out = Vec::with_capacity(graph.edges.len());
    for (i, e) in graph.edges.iter().enumerate() {
        let w = &ws.witnesses[by_label[e.label]].w;
        let element = crate::group::free_reduce(&e.via.conjugate(w));
        let fixes_both_endpoints = graph.space.fixes(&element, &graph.vertices[e.u].key)
            && graph.space.fixes(&element, &graph.vertices[e.v].key);
        out.push(EdgeWitness {
            edge: i,
            orbit: e.orbit,
            order: infinite_order_certificate(&element, ctx),
            element,
            fixes_both_endpoints,
        });
    }
    Ok(out)
}
