use std::collections::{BTreeMap, BTreeSet};

use crate::group::RaagGraph;

fn pairs(n: u32) -> Vec<(u32, u32)> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect()
}

/// Every connected labeled simple graph on `n` vertices, in edge-bitmask order.
pub fn connected_graphs(n: u32) -> Vec<RaagGraph> {
    let all = pairs(n);
    (0u64..1 << all.len())
        .filter_map(|mask| {
            let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let g = RaagGraph::new(n, edges).expect("valid edges");
            g.is_connected().then_some(g)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (1..=n as u32).collect();
    fn rec(k: usize, p: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// One representative per isomorphism class, the first of its class in `graphs`.
///
/// Graphs are edge bitmasks (bit `i` for the `i`-th pair in lexicographic
/// order); a new class marks all of its relabellings as seen.
pub fn isomorphism_classes(graphs: &[RaagGraph]) -> Vec<RaagGraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut tables = BTreeMap::new();
    for g in graphs {
        let n = g.vertex_count();
        // images[p][i]: bit of the i-th pair after relabelling by p
        let (index, images) = tables.entry(n).or_insert_with(|| {
            let all = pairs(n);
            let index: BTreeMap<(u32, u32), usize> = all.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let images: Vec<Vec<usize>> = permutations(n as usize)
                .iter()
                .map(|p| {
                    all.iter()
                        .map(|&(u, v)| {
                            let (a, b) = (p[u as usize - 1], p[v as usize - 1]);
                            index[&(a.min(b), a.max(b))]
                        })
                        .collect()
                })
                .collect();
            (index, images)
        });
        let mask = g.edges().fold(0u64, |m, e| m | 1 << index[&e]);
        if seen.contains(&(n, mask)) {
            continue;
        }
        for img in images.iter() {
            let relabelled = (0..img.len()).filter(|i| mask >> i & 1 == 1).fold(0u64, |m, i| m | 1 << img[i]);
            seen.insert((n, relabelled));
        }
        out.push(g.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // OEIS A001187 (labeled) and A001349 (unlabeled) connected graphs
        let labeled: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(labeled, vec![1, 1, 4, 38, 728]);
        let classes: Vec<usize> = (1..=5).map(|n| isomorphism_classes(&connected_graphs(n)).len()).collect();
        assert_eq!(classes, vec![1, 1, 2, 6, 21]);
    }
}
