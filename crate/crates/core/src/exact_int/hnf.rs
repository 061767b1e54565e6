use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{extended_gcd, IntMatrix};

/// Row-style Hermite normal form `transform * m = h`.
///
/// `h` is upper echelon with positive pivots, every entry above a pivot
/// reduced into `[0, pivot)`, and zero rows at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub transform: IntMatrix,
    /// Column index of the pivot in each nonzero row.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut t = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let (g, x, y) = extended_gcd(&a, &b);
            let z = -(&b / &g);
            let w = &a / &g;
            // [[x, y], [-b/g, a/g]] has determinant 1
            h.combine_rows(r, i, [&x, &y, &z, &w]);
            t.combine_rows(r, i, [&x, &y, &z, &w]);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            t.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                let neg = -q;
                h.add_row_multiple(i, r, &neg);
                t.add_row_multiple(i, r, &neg);
            }
        }
        pivots.push(c);
        r += 1;
    }

    HermiteForm { h, transform: t, rank: r, pivots }
}

impl HermiteForm {
    /// True when `h` satisfies the echelon, sign and reduction conditions.
    pub fn is_canonical(&self) -> bool {
        let h = &self.h;
        for (row, &pc) in self.pivots.iter().enumerate() {
            if !h[(row, pc)].is_positive() {
                return false;
            }
            if (0..pc).any(|j| !h[(row, j)].is_zero()) {
                return false;
            }
            if (row + 1..h.rows()).any(|i| !h[(i, pc)].is_zero()) {
                return false;
            }
            if (0..row).any(|i| h[(i, pc)].is_negative() || h[(i, pc)] >= h[(row, pc)]) {
                return false;
            }
        }
        self.pivots.windows(2).all(|w| w[0] < w[1]) && (self.rank..h.rows()).all(|i| h.row(i).iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_int::det_exact;
    use num_bigint::BigInt;
    use num_traits::One;

    fn check(m: &IntMatrix) -> HermiteForm {
        let hf = hermite_normal_form(m);
        assert_eq!(&hf.transform * m, hf.h);
        assert!(det_exact(&hf.transform).unwrap().abs().is_one());
        assert!(hf.is_canonical(), "not canonical: {}", hf.h);
        hf
    }

    #[test]
    fn identity_is_fixed() {
        let hf = check(&IntMatrix::identity(3));
        assert!(hf.h.is_identity());
        assert!(hf.transform.is_identity());
    }

    #[test]
    fn column_vector() {
        let hf = check(&IntMatrix::from_column(&[2, 4]));
        assert_eq!(hf.h, IntMatrix::from_column(&[2, 0]));
    }

    #[test]
    fn first_pivot_is_column_gcd() {
        let hf = check(&IntMatrix::from_rows(&[vec![4, 6], vec![2, 4]]));
        assert_eq!(hf.h[(0, 0)], BigInt::from(2));
        // det = 4, so the second pivot is 2 and the (0,1) entry is reduced mod 2
        assert_eq!(hf.h, IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
    }

    #[test]
    fn rank_deficient() {
        let hf = check(&IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 5]]));
        assert_eq!(hf.rank, 2);
        assert_eq!(hf.pivots, vec![0, 2]);
    }

    #[test]
    fn zero_matrix() {
        let hf = check(&IntMatrix::zeros(2, 3));
        assert_eq!(hf.rank, 0);
        assert!(hf.transform.is_identity());
    }
}
