//! HLT coset enumeration with immediate coincidence processing.

use super::table::CosetTable;
use super::CosetError;
use crate::group::{free_reduce, Presentation, Word};

const UNDEF: usize = usize::MAX;

fn column(letter: i32) -> usize {
    2 * (letter.unsigned_abs() as usize - 1) + usize::from(letter < 0)
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: Vec<bool>,
    live_count: usize,
    max_cosets: usize,
}

impl Enumerator {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * generators;
        Enumerator {
            cols,
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            live: vec![true],
            live_count: 1,
            max_cosets,
        }
    }

    fn define(&mut self, coset: usize, col: usize) -> Result<(), CosetError> {
        if self.live_count >= self.max_cosets {
            return Err(CosetError::BudgetExceeded(self.max_cosets));
        }
        let fresh = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(fresh);
        self.live.push(true);
        self.live_count += 1;
        self.table[coset][col] = fresh;
        self.table[fresh][col ^ 1] = coset;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, kill) = (ra.min(rb), ra.max(rb));
            self.parent[kill] = keep;
            self.live[kill] = false;
            self.live_count -= 1;
            queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for col in 0..self.cols {
                let target = self.table[dead][col];
                if target == UNDEF {
                    continue;
                }
                if self.table[target][col ^ 1] == dead {
                    self.table[target][col ^ 1] = UNDEF;
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                if self.table[mu][col] != UNDEF {
                    let x = self.table[mu][col];
                    self.merge(nu, x, &mut queue);
                } else if self.table[nu][col ^ 1] != UNDEF {
                    let x = self.table[nu][col ^ 1];
                    self.merge(mu, x, &mut queue);
                } else {
                    self.table[mu][col] = nu;
                    self.table[nu][col ^ 1] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: usize, word: &[usize]) -> Result<(), CosetError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.table[f][word[i as usize]] != UNDEF {
                f = self.table[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j >= i && self.table[b][word[j as usize] ^ 1] != UNDEF {
                b = self.table[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i {
                // one missing entry: a deduction closes the cycle
                let x = word[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

/// Enumerate the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// The result is standardized (cosets numbered breadth-first from the
/// subgroup), so identical inputs give identical tables.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, CosetError> {
    if max_cosets == 0 {
        return Err(CosetError::Malformed("max_cosets must be at least 1".into()));
    }
    for w in subgroup {
        p.check_word(w)?;
    }
    let to_cols = |w: &Word| -> Vec<usize> { free_reduce(w).letters().iter().map(|&l| column(l)).collect() };
    let relators: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
    let subgroup_cols: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();

    let mut e = Enumerator::new(p.generator_count(), max_cosets);
    for w in &subgroup_cols {
        e.scan_and_fill(0, w)?;
    }
    let mut alpha = 0;
    while alpha < e.table.len() {
        if e.live[alpha] {
            for r in &relators {
                e.scan_and_fill(alpha, r)?;
                if !e.live[alpha] {
                    break;
                }
            }
            if e.live[alpha] {
                for col in 0..e.cols {
                    if e.table[alpha][col] == UNDEF {
                        e.define(alpha, col)?;
                    }
                }
            }
        }
        alpha += 1;
    }

    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.live[c]).collect();
    let mut number = vec![usize::MAX; e.table.len()];
    for (k, &c) in live.iter().enumerate() {
        number[c] = k;
    }
    let forward: Vec<Vec<u32>> = (0..p.generator_count())
        .map(|g| {
            live.iter()
                .map(|&c| {
                    let d = e.rep(e.table[c][2 * g]);
                    number[d] as u32
                })
                .collect()
        })
        .collect();
    let table = CosetTable::from_permutations(p.clone(), subgroup.to_vec(), forward)?;
    Ok(table.standardized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_three() {
        let t = todd_coxeter(&Presentation::free(1), &[w(&[1, 1, 1])], 100).unwrap();
        assert_eq!(t.index(), 3);
        // a 3-cycle: no fixed points, cube is the identity
        assert!(t.generator_action(1).iter().enumerate().all(|(c, &d)| d as usize != c));
        assert_eq!(t.permutation(&w(&[1, 1, 1])), vec![0, 1, 2]);
        assert!(!t.acts_trivially(&w(&[1])));
    }

    #[test]
    fn whole_group() {
        let t = todd_coxeter(&Presentation::free_abelian(2), &[w(&[1]), w(&[2])], 10).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn free_group_sign_kernel() {
        let t = todd_coxeter(&Presentation::free(2), &[w(&[1]), w(&[2, 1, -2]), w(&[2, 2])], 100).unwrap();
        assert_eq!(t.index(), 2);
        assert!(t.acts_trivially(&w(&[1])));
        assert!(!t.fixes_base(&w(&[2])));
    }

    #[test]
    fn finite_groups() {
        // S3 = ⟨a, b | a^2, b^3, (ab)^2⟩
        let s3 = Presentation::with_default_names(2, vec![w(&[1, 1]), w(&[2, 2, 2]), w(&[1, 2, 1, 2])]).unwrap();
        assert_eq!(todd_coxeter(&s3, &[], 100).unwrap().index(), 6);
        assert_eq!(todd_coxeter(&s3, &[w(&[1])], 100).unwrap().index(), 3);
        // A5 = ⟨a, b | a^2, b^3, (ab)^5⟩
        let a5 =
            Presentation::with_default_names(2, vec![w(&[1, 1]), w(&[2, 2, 2]), w(&[1, 2, 1, 2, 1, 2, 1, 2, 1, 2])])
                .unwrap();
        assert_eq!(todd_coxeter(&a5, &[], 1000).unwrap().index(), 60);
        assert_eq!(todd_coxeter(&a5, &[w(&[2])], 1000).unwrap().index(), 20);
        // ⟨a, b | a b a^-1 b^-2⟩ with H = ⟨b⟩ collapses appropriately; trivial group check
        let trivial = Presentation::with_default_names(2, vec![w(&[1]), w(&[2])]).unwrap();
        assert_eq!(todd_coxeter(&trivial, &[], 10).unwrap().index(), 1);
    }

    #[test]
    fn infinite_index_exceeds_budget() {
        let r = todd_coxeter(&Presentation::free_abelian(2), &[w(&[1])], 50);
        assert!(matches!(r, Err(CosetError::BudgetExceeded(50))));
    }

    #[test]
    fn deterministic() {
        let p = Presentation::free_abelian(2);
        let s = [w(&[1, 1, 1]), w(&[2, 2])];
        let t = todd_coxeter(&p, &s, 200).unwrap();
        assert_eq!(t.index(), 6);
        assert_eq!(t, todd_coxeter(&p, &s, 200).unwrap());
    }
}
