use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::IntegerMatrix;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Rank of `m` over 𝔽_p by Gaussian elimination. `p` must be prime.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    assert!(is_prime(p), "{p} is not prime");
    let modulus = BigInt::from(p);
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| m.row(r).iter().map(|x| x.mod_floor(&modulus).to_u64().expect("reduced below p")).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - mul_mod(f, *y, p)) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
