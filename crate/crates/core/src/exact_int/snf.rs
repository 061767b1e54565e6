use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{serialize_int_vec, IntMatrix};

/// `left * original * right` is the diagonal matrix carrying `diag`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfDecomposition {
    pub left: IntMatrix,
    #[serde(serialize_with = "serialize_int_vec")]
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

fn min_abs_entry(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
///
/// Uses repeated division with remainder around the smallest entry of the
/// trailing block, then restores divisibility by folding an offending row
/// into the pivot row.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    'outer: for k in 0..steps {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, k) else {
                break 'outer;
            };
            a.swap_rows(k, pi);
            left.swap_rows(k, pi);
            a.swap_cols(k, pj);
            right.swap_cols(k, pj);

            let pivot = a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                let q = a[(i, k)].div_floor(&pivot);
                let neg = -q;
                a.add_row_multiple(i, k, &neg);
                left.add_row_multiple(i, k, &neg);
                clean &= a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                let q = a[(k, j)].div_floor(&pivot);
                let neg = -q;
                a.add_col_multiple(j, k, &neg);
                right.add_col_multiple(j, k, &neg);
                clean &= a[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(k, i, &one);
                    left.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            left.negate_row(k);
        }
    }

    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SnfDecomposition { left, diag, right }
}
