use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::Word;
use super::GroupError;

/// Defining graph of a right-angled Artin group. Vertices are `1..=vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RaagGraphFile", into = "RaagGraphFile")]
pub struct RaagGraph {
    vertex_count: u32,
    edges: BTreeSet<(u32, u32)>,
    adjacency: Vec<Vec<bool>>,
}

/// On-disk form: `{"vertices": 4, "edges": [[1,3],[1,4]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RaagGraphFile {
    pub vertices: u32,
    #[serde(default)]
    pub edges: Vec<(u32, u32)>,
}

impl RaagGraph {
    pub fn new(vertex_count: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GroupError> {
        if vertex_count == 0 {
            return Err(GroupError::EmptyGraph);
        }
        let n = vertex_count as usize;
        let mut set = BTreeSet::new();
        let mut adjacency = vec![vec![false; n + 1]; n + 1];
        for (u, v) in edges {
            if u == v {
                return Err(GroupError::SelfLoop(u));
            }
            if u == 0 || v == 0 || u > vertex_count || v > vertex_count {
                return Err(GroupError::VertexOutOfRange { vertex: u.max(v), vertices: vertex_count });
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GroupError::DuplicateEdge(e.0, e.1));
            }
            adjacency[u as usize][v as usize] = true;
            adjacency[v as usize][u as usize] = true;
        }
        Ok(RaagGraph { vertex_count, edges: set, adjacency })
    }

    pub fn edgeless(vertex_count: u32) -> Result<Self, GroupError> {
        Self::new(vertex_count, [])
    }

    pub fn complete(vertex_count: u32) -> Result<Self, GroupError> {
        let mut edges = Vec::new();
        for u in 1..=vertex_count {
            for v in (u + 1)..=vertex_count {
                edges.push((u, v));
            }
        }
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adjacency.get(u as usize).and_then(|row| row.get(v as usize)).copied().unwrap_or(false)
    }

    pub fn neighbours(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        (1..=self.vertex_count).filter(move |&u| self.adjacent(v, u))
    }

    /// Letters commute when their vertices are joined by an edge.
    pub fn letters_commute(&self, a: i32, b: i32) -> bool {
        self.adjacent(a.unsigned_abs(), b.unsigned_abs())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count as usize;
        let mut seen = vec![false; n + 1];
        let mut stack = vec![1u32];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// `⟨v_1..v_n | [v_i, v_j] for each edge⟩`.
    pub fn presentation(&self) -> Presentation {
        let rels =
            self.edges.iter().map(|&(u, v)| Word::commutator(&Word::generator(u), &Word::generator(v))).collect();
        Presentation::with_default_names(self.vertex_count as usize, rels).expect("edges are in range")
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        w.check_range(self.vertex_count as usize)
    }
}

impl TryFrom<RaagGraphFile> for RaagGraph {
    type Error = GroupError;

    fn try_from(f: RaagGraphFile) -> Result<Self, Self::Error> {
        RaagGraph::new(f.vertices, f.edges)
    }
}

impl From<RaagGraph> for RaagGraphFile {
    fn from(g: RaagGraph) -> Self {
        RaagGraphFile { vertices: g.vertex_count, edges: g.edges.into_iter().collect() }
    }
}

/// Total order on letters used for shortlex: `1 < -1 < 2 < -2 < …`.
pub fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

/// Shortlex comparison under [`letter_key`].
pub fn shortlex_cmp(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().map(|&l| letter_key(l)).cmp(b.iter().map(|&l| letter_key(l))))
}

/// Canonical form of `w` in the RAAG on `graph`.
///
/// Two stages: a left-greedy pile reduction that cancels a new letter against
/// the nearest inverse it can be shuffled next to, then the lexicographically
/// least arrangement of the reduced word under commuting swaps (greedy choice
/// of the smallest letter that can be moved to the front).
pub fn raag_normal_form(w: &Word, graph: &RaagGraph) -> Result<Word, GroupError> {
    graph.check_word(w)?;
    let reduced = pile_reduce(w.letters(), graph);
    Ok(Word::new(least_arrangement(&reduced, graph)).expect("letters are nonzero"))
}

fn pile_reduce(letters: &[i32], graph: &RaagGraph) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &x in letters {
        let mut cancel_at = None;
        for k in (0..out.len()).rev() {
            let y = out[k];
            if y == -x {
                cancel_at = Some(k);
                break;
            }
            if y.unsigned_abs() == x.unsigned_abs() || !graph.letters_commute(x, y) {
                break;
            }
        }
        match cancel_at {
            Some(k) => {
                out.remove(k);
            }
            None => out.push(x),
        }
    }
    out
}

fn least_arrangement(letters: &[i32], graph: &RaagGraph) -> Vec<i32> {
    let mut remaining: Vec<i32> = letters.to_vec();
    let mut out = Vec::with_capacity(letters.len());
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..remaining.len() {
            let x = remaining[p];
            let movable =
                remaining[..p].iter().all(|&y| y.unsigned_abs() != x.unsigned_abs() && graph.letters_commute(x, y));
            if movable && best.is_none_or(|b| letter_key(x) < letter_key(remaining[b])) {
                best = Some(p);
            }
        }
        let p = best.expect("the first remaining letter is always movable");
        out.push(remaining.remove(p));
    }
    out
}
