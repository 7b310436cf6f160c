use crate::homology::IntegerMatrix;

const MAX_ITERATIONS: usize = 200;
const RAYLEIGH_TOL: f64 = 1e-12;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Gram matrix `AᵀA` or `AAᵀ`, whichever is smaller, as dense row-major `f64`.
fn gram(m: &IntegerMatrix) -> (usize, Vec<f64>) {
    let a = m.to_f64();
    let (r, c) = m.shape();
    // Gram matrix of the shorter side: entry (i, k) of M or of Mᵀ
    let (n, inner, si, sk) = if c <= r { (c, r, 1, c) } else { (r, c, c, 1) };
    let at = |i: usize, k: usize| a[i * si + k * sk];
    let mut g = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let s: f64 = (0..inner).map(|k| at(i, k) * at(j, k)).sum();
            g[i * n + j] = s;
            g[j * n + i] = s;
        }
    }
    (n, g)
}

fn mat_vec(n: usize, g: &[f64], x: &[f64]) -> Vec<f64> {
    (0..n).map(|i| (0..n).map(|j| g[i * n + j] * x[j]).sum()).collect()
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Largest eigenvalue of a symmetric PSD matrix; `None` if not converged.
fn power_iteration(n: usize, g: &[f64]) -> Option<f64> {
    // deterministic start with no special structure, so it is not orthogonal to
    // the top eigenvector of typical integer matrices (unlike the all-ones vector)
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + ((i + 1) as f64 * GOLDEN).fract()).collect();
    let s = norm2(&x);
    x.iter_mut().for_each(|v| *v /= s);
    let mut lambda = 0.0;
    for _ in 0..MAX_ITERATIONS {
        let y = mat_vec(n, g, &x);
        let next: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let len = norm2(&y);
        if len == 0.0 {
            return None;
        }
        if (next - lambda).abs() <= RAYLEIGH_TOL * next {
            return Some(next);
        }
        lambda = next;
        x = y.into_iter().map(|v| v / len).collect();
    }
    None
}

/// Largest eigenvalue by cyclic Jacobi rotations.
fn jacobi_max_eigenvalue(n: usize, mut a: Vec<f64>) -> f64 {
    let frob: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).fold(0.0, f64::max)
}

/// ℓ²-operator norm (largest singular value).
///
/// Vectors and 2×2 matrices use closed forms; otherwise power iteration on the
/// Gram matrix, falling back to Jacobi rotations if it does not settle.
pub fn operator_norm(m: &IntegerMatrix) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let (r, c) = m.shape();
    if r == 1 || c == 1 {
        return norm2(&m.to_f64());
    }
    let (n, g) = gram(m);
    if n == 2 {
        let (a, b, d) = (g[0], g[1], g[3]);
        let disc = ((a - d) * (a - d) + 4.0 * b * b).sqrt();
        return ((a + d + disc) / 2.0).sqrt();
    }
    let lambda = power_iteration(n, &g).unwrap_or_else(|| jacobi_max_eigenvalue(n, g));
    lambda.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(cols, rows).unwrap()
    }

    fn svd_oracle(x: &IntegerMatrix) -> f64 {
        let d = nalgebra::DMatrix::from_row_slice(x.rows(), x.cols(), &x.to_f64());
        d.singular_values().iter().cloned().fold(0.0, f64::max)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn examples() {
        assert_eq!(operator_norm(&IntegerMatrix::identity(5)), 1.0);
        assert_eq!(operator_norm(&m(2, &[vec![3, 4], vec![0, 0]])), 5.0);
        assert_eq!(operator_norm(&IntegerMatrix::zeros(3, 4)), 0.0);
        assert_eq!(operator_norm(&IntegerMatrix::zeros(0, 4)), 0.0);
        // circulant boundary of an 8-cycle: all-ones is in its kernel
        let d = crate::rebuilding::RebuildingData::subdivided_circle(8).y.boundaries[0].clone();
        assert!(close(operator_norm(&d), 2.0));
    }

    #[test]
    fn jacobi_agrees_with_oracle() {
        let x = m(3, &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let (n, g) = gram(&x);
        assert!(close(jacobi_max_eigenvalue(n, g).sqrt(), svd_oracle(&x)));
    }

    fn matrix() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| IntegerMatrix::from_flat(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn matches_svd(x in matrix()) {
            prop_assert!(close(operator_norm(&x), svd_oracle(&x)), "{} vs {}", operator_norm(&x), svd_oracle(&x));
        }

        #[test]
        fn transpose_invariant(x in matrix()) {
            prop_assert!(close(operator_norm(&x), operator_norm(&x.transpose())));
        }

        #[test]
        fn homogeneous(x in matrix(), c in -5i64..=5) {
            let scaled = operator_norm(&x.scaled(&BigInt::from(c)));
            prop_assert!(close(scaled, c.unsigned_abs() as f64 * operator_norm(&x)));
        }

        #[test]
        fn permutations_have_norm_one(p in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let mut x = IntegerMatrix::zeros(6, 6);
            for (i, &j) in p.iter().enumerate() {
                x.set(i, j, BigInt::from(1));
            }
            prop_assert!(close(operator_norm(&x), 1.0));
        }
    }
}
