//! Smith normal form over ℤ.
//!
//! Elimination picks the smallest nonzero entry of the active block as pivot,
//! clears its row and column with Euclidean steps (re-pivoting whenever a
//! remainder survives), and restores divisibility by folding an offending row
//! into the pivot row before moving on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::{bigint_list, IntegerMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_rank`, all positive.
    #[serde(with = "bigint_list")]
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// Whether `U · M · V = D` was re-multiplied and confirmed.
    pub transforms_checked: bool,
}

/// Unimodular `U`, `V` with `U · M · V = D`.
#[derive(Clone, Debug)]
pub struct SnfTransforms {
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    Eliminator::new(m, false).run().0
}

/// SNF together with checked transforms.
pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> (SnfResult, SnfTransforms) {
    let (mut result, transforms) = Eliminator::new(m, true).run();
    let transforms = transforms.expect("tracking requested");
    let product = &(&transforms.left * m) * &transforms.right;
    let mut expected = IntegerMatrix::zeros(m.rows(), m.cols());
    for (i, d) in result.invariant_factors.iter().enumerate() {
        expected.set(i, i, d.clone());
    }
    assert_eq!(product, expected, "SNF transforms failed to reproduce the diagonal");
    result.transforms_checked = true;
    (result, transforms)
}

struct Eliminator {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    // stored transposed so column operations on V are row operations here
    vt: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    IntegerMatrix::identity(n).into_rows()
}

fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, q: &BigInt, source: usize, from: usize) {
    // rows[target] -= q * rows[source]
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t[from..].iter_mut().zip(&s[from..]) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

impl Eliminator {
    fn new(m: &IntegerMatrix, track: bool) -> Self {
        Eliminator {
            a: m.clone().into_rows(),
            rows: m.rows(),
            cols: m.cols(),
            u: track.then(|| identity_rows(m.rows())),
            vt: track.then(|| identity_rows(m.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(vt) = &mut self.vt {
                vt.swap(i, j);
            }
        }
    }

    /// row_target -= q * row_source
    fn row_op(&mut self, target: usize, q: &BigInt, source: usize, from: usize) {
        row_axpy(&mut self.a, target, q, source, from);
        if let Some(u) = &mut self.u {
            row_axpy(u, target, q, source, 0);
        }
    }

    /// col_target -= q * col_source
    fn col_op(&mut self, target: usize, q: &BigInt, source: usize, from: usize) {
        for row in self.a[from..].iter_mut() {
            if !row[source].is_zero() {
                let delta = q * &row[source];
                row[target] -= delta;
            }
        }
        if let Some(vt) = &mut self.vt {
            row_axpy(vt, target, q, source, 0);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if x.abs().is_one() {
                    return Some((i, j));
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> (SnfResult, Option<SnfTransforms>) {
        let mut factors = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                // clear column t below the pivot
                let mut smallest: Option<usize> = None;
                for i in (t + 1)..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&p);
                    self.row_op(i, &q, t, t);
                    if !self.a[i][t].is_zero() && smallest.is_none_or(|s| self.a[i][t].abs() < self.a[s][t].abs()) {
                        smallest = Some(i);
                    }
                }
                if let Some(i) = smallest {
                    self.swap_rows(t, i);
                    continue;
                }
                // clear row t right of the pivot
                let mut smallest: Option<usize> = None;
                for j in (t + 1)..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&p);
                    self.col_op(j, &q, t, t);
                    if !self.a[t][j].is_zero() && smallest.is_none_or(|s| self.a[t][j].abs() < self.a[t][s].abs()) {
                        smallest = Some(j);
                    }
                }
                if let Some(j) = smallest {
                    self.swap_cols(t, j);
                    continue;
                }
                if p.abs().is_one() {
                    break;
                }
                // divisibility: fold a row holding a non-multiple of p into row t
                let offending =
                    ((t + 1)..self.rows).find(|&i| self.a[i][(t + 1)..].iter().any(|x| !x.is_multiple_of(&p)));
                match offending {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.row_op(t, &minus_one, i, t);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
            t += 1;
        }
        debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        let rank = factors.len();
        let transforms = match (self.u, self.vt) {
            (Some(u), Some(vt)) => {
                let left =
                    IntegerMatrix::from_flat(self.rows, self.rows, u.into_iter().flatten().collect()).expect("square");
                let right_t =
                    IntegerMatrix::from_flat(self.cols, self.cols, vt.into_iter().flatten().collect()).expect("square");
                Some(SnfTransforms { left, right: right_t.transpose() })
            }
            _ => None,
        };
        (SnfResult { invariant_factors: factors, rank, transforms_checked: false }, transforms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(cols, rows).unwrap()
    }

    fn factors(r: &SnfResult) -> Vec<i64> {
        r.invariant_factors.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn diag_two_three() {
        let r = smith_normal_form(&m(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(factors(&r), vec![1, 6]);
    }

    #[test]
    fn two_four_six_eight() {
        let r = smith_normal_form(&m(2, &[vec![2, 4], vec![6, 8]]));
        assert_eq!(factors(&r), vec![2, 4]);
    }

    #[test]
    fn zero_matrix_has_no_factors() {
        let r = smith_normal_form(&IntegerMatrix::zeros(3, 4));
        assert_eq!(r.rank, 0);
        assert!(r.invariant_factors.is_empty());
        assert_eq!(smith_normal_form(&IntegerMatrix::zeros(0, 5)).rank, 0);
    }

    #[test]
    fn transforms_are_checked() {
        let a = m(3, &[vec![4, 6, 2], vec![-8, 3, 5], vec![0, 12, 6]]);
        let (r, t) = smith_normal_form_with_transforms(&a);
        assert!(r.transforms_checked);
        assert_eq!(t.left.shape(), (3, 3));
        assert_eq!(t.right.shape(), (3, 3));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| IntegerMatrix::from_flat(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn divisibility_and_transforms(a in matrix_strategy()) {
            let (r, _) = smith_normal_form_with_transforms(&a);
            prop_assert!(r.invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
            prop_assert!(r.invariant_factors.iter().all(|d| d.is_positive()));
            prop_assert_eq!(r.rank, r.invariant_factors.len());
            prop_assert_eq!(smith_normal_form(&a), SnfResult { transforms_checked: false, ..r });
        }
    }
}
