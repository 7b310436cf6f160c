use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::CosetError;
use crate::group::{Presentation, Word};

/// Complete coset table: the right action of each generator on the cosets
/// `H g` of a finite-index subgroup `H`. Coset 0 is `H` itself.
///
/// Indices are 0-based in memory and 1-based in the JSON form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
    origin: Presentation,
    subgroup_generators: Vec<Word>,
}

impl CosetTable {
    /// Validate permutations and all table invariants.
    pub fn from_permutations(
        origin: Presentation,
        subgroup_generators: Vec<Word>,
        forward: Vec<Vec<u32>>,
    ) -> Result<Self, CosetError> {
        if forward.len() != origin.generator_count() {
            return Err(CosetError::Malformed(format!(
                "{} permutations for {} generators",
                forward.len(),
                origin.generator_count()
            )));
        }
        let index = forward.first().map_or(1, Vec::len);
        if index == 0 {
            return Err(CosetError::Malformed("index must be positive".into()));
        }
        let mut backward = Vec::with_capacity(forward.len());
        for (g, perm) in forward.iter().enumerate() {
            if perm.len() != index {
                return Err(CosetError::Malformed(format!("generator {} acts on {} points", g + 1, perm.len())));
            }
            let mut inv = vec![u32::MAX; index];
            for (c, &d) in perm.iter().enumerate() {
                if d as usize >= index || inv[d as usize] != u32::MAX {
                    return Err(CosetError::NotPermutation(g + 1));
                }
                inv[d as usize] = c as u32;
            }
            backward.push(inv);
        }
        let table = CosetTable { forward, backward, origin, subgroup_generators };
        if !table.is_transitive() {
            return Err(CosetError::NotTransitive);
        }
        table.check_invariants()?;
        Ok(table)
    }

    fn is_transitive(&self) -> bool {
        let n = self.index();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for g in 1..=self.generator_count() as i32 {
                for l in [g, -g] {
                    let d = self.apply_letter(c, l);
                    if !seen[d] {
                        seen[d] = true;
                        count += 1;
                        stack.push(d);
                    }
                }
            }
        }
        count == n
    }

    pub fn index(&self) -> usize {
        self.forward.first().map_or(1, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.forward.len()
    }

    pub fn origin(&self) -> &Presentation {
        &self.origin
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    /// Permutation of generator `g` (1-based), 0-based images.
    pub fn generator_action(&self, g: usize) -> &[u32] {
        &self.forward[g - 1]
    }

    pub fn apply_letter(&self, coset: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.forward[g][coset] as usize
        } else {
            self.backward[g][coset] as usize
        }
    }

    pub fn apply_word(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.apply_letter(c, l))
    }

    /// Image of every coset under `w`.
    pub fn permutation(&self, w: &Word) -> Vec<u32> {
        (0..self.index()).map(|c| self.apply_word(c, w) as u32).collect()
    }

    pub fn acts_trivially(&self, w: &Word) -> bool {
        (0..self.index()).all(|c| self.apply_word(c, w) == c)
    }

    /// `w` lies in the subgroup.
    pub fn fixes_base(&self, w: &Word) -> bool {
        self.apply_word(0, w) == 0
    }

    pub fn check_invariants(&self) -> Result<(), CosetError> {
        for (i, r) in self.origin.relators().iter().enumerate() {
            if !self.acts_trivially(r) {
                return Err(CosetError::RelatorNotTrivial(i + 1));
            }
        }
        for (i, h) in self.subgroup_generators.iter().enumerate() {
            if h.check_range(self.generator_count()).is_err() || !self.fixes_base(h) {
                return Err(CosetError::SubgroupGeneratorMovesBase(i + 1));
            }
        }
        Ok(())
    }

    /// Shortest words `t_c` with `H · t_c = coset c`, found breadth-first in
    /// letter order `1, -1, 2, -2, …`.
    pub fn transversal(&self) -> Vec<Word> {
        let n = self.index();
        let mut reps: Vec<Option<Vec<i32>>> = vec![None; n];
        reps[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for g in 1..=self.generator_count() as i32 {
                for l in [g, -g] {
                    let d = self.apply_letter(c, l);
                    if reps[d].is_none() {
                        let mut w = reps[c].clone().expect("visited");
                        w.push(l);
                        reps[d] = Some(w);
                        queue.push_back(d);
                    }
                }
            }
        }
        reps.into_iter().map(|r| Word::new(r.expect("table is transitive")).expect("nonzero letters")).collect()
    }

    /// Schreier generators of the subgroup from the BFS transversal.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let reps = self.transversal();
        let mut out = Vec::new();
        for (c, t) in reps.iter().enumerate() {
            for g in 1..=self.generator_count() as i32 {
                let d = self.apply_letter(c, g);
                let w = crate::group::free_reduce(&t.concat(&Word::generator(g as u32)).concat(&reps[d].inverse()));
                if !w.is_empty() && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Renumber cosets in breadth-first order from coset 0.
    pub(crate) fn standardized(self) -> Self {
        let n = self.index();
        let mut order = vec![usize::MAX; n];
        let mut seen = Vec::with_capacity(n);
        order[0] = 0;
        seen.push(0);
        let mut head = 0;
        while head < seen.len() {
            let c = seen[head];
            head += 1;
            for g in 1..=self.generator_count() as i32 {
                for l in [g, -g] {
                    let d = self.apply_letter(c, l);
                    if order[d] == usize::MAX {
                        order[d] = seen.len();
                        seen.push(d);
                    }
                }
            }
        }
        let forward = self
            .forward
            .iter()
            .map(|perm| {
                let mut p = vec![0u32; n];
                for (c, &d) in perm.iter().enumerate() {
                    p[order[c]] = order[d as usize] as u32;
                }
                p
            })
            .collect();
        CosetTable::from_permutations(self.origin, self.subgroup_generators, forward)
            .expect("renumbering preserves invariants")
    }
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    presentation: Presentation,
    subgroup_words: Vec<Word>,
    index: usize,
    /// One-based images, one list per generator.
    action: Vec<Vec<u32>>,
}

impl Serialize for CosetTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableFile {
            presentation: self.origin.clone(),
            subgroup_words: self.subgroup_generators.clone(),
            index: self.index(),
            action: self.forward.iter().map(|p| p.iter().map(|c| c + 1).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosetTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = TableFile::deserialize(d)?;
        let forward = f
            .action
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|c| c.checked_sub(1).ok_or_else(|| serde::de::Error::custom("coset numbers are 1-based")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let t = CosetTable::from_permutations(f.presentation, f.subgroup_words, forward)
            .map_err(serde::de::Error::custom)?;
        if t.index() != f.index {
            return Err(serde::de::Error::custom("index does not match the action"));
        }
        Ok(t)
    }
}
