use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactIntError, IntMatrix};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate value is a minor of the input, so the only growth is
/// the one inherent to the determinant itself.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt, ExactIntError> {
    if !m.is_square() {
        return Err(ExactIntError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}
