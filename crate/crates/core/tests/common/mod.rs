#![allow(dead_code)]

use monodromy_core::exact_int::IntMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// Product of `len` random transvections `I + c E_ij`, `c ∈ [-2, 2] \ {0}`.
pub fn random_sl(rng: &mut impl Rng, n: usize, len: usize) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(c);
        t = &e * &t;
    }
    t
}

/// Laplace expansion along the first row, in `i128`.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

pub fn square_rows(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-bound..=bound, n), n))
}

pub fn rect_rows(max: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}
