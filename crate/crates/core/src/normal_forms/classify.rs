use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{conjugate_to_e1, eigen_signature, EigenSignature, NormalFormError};
use crate::exact_int::{det_exact, IntMatrix};

/// Shape of the normal form for a matrix with eigenvalue 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormTag {
    /// `[[1, k], [0, 1]]`.
    Triangular2,
    /// Upper unitriangular 3×3.
    UpperUnipotent3,
    /// Upper triangular with diagonal `(1, -1, -1)`.
    MixedMinusOne3,
    /// `[[1, *], [0, B]]` with `B ∈ SL(2, Z)` having no rational eigenvalue.
    IrrationalBlock3,
}

impl FormTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Triangular2 => "Triangular2",
            Self::UpperUnipotent3 => "UpperUnipotent3",
            Self::MixedMinusOne3 => "MixedMinusOne3",
            Self::IrrationalBlock3 => "IrrationalBlock3",
        }
    }

    /// Checks the zero pattern and diagonal prescribed by the tag.
    pub fn matches(self, m: &IntMatrix) -> bool {
        let diag: &[i64] = match self {
            Self::Triangular2 => &[1, 1],
            Self::UpperUnipotent3 => &[1, 1, 1],
            Self::MixedMinusOne3 => &[1, -1, -1],
            Self::IrrationalBlock3 => {
                return m.rows() == 3
                    && m.is_square()
                    && m[(0, 0)].is_one()
                    && m[(1, 0)].is_zero()
                    && m[(2, 0)].is_zero();
            }
        };
        let n = diag.len();
        m.rows() == n
            && m.is_square()
            && (0..n).all(|i| m[(i, i)] == BigInt::from(diag[i]) && (0..i).all(|j| m[(i, j)].is_zero()))
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub form: FormTag,
    /// `T ∈ SL(n, Z)` with `T M T⁻¹ = normal_form`.
    pub conjugator: IntMatrix,
    pub normal_form: IntMatrix,
    pub signature: EigenSignature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Classification {
    Form(ClassificationResult),
    /// The matrix has no eigenvalue 1, so no basis puts it in one of the
    /// forms above.
    NoUnitEigenvalue {
        signature: EigenSignature,
    },
}

impl Classification {
    pub fn result(&self) -> Option<&ClassificationResult> {
        match self {
            Self::Form(r) => Some(r),
            Self::NoUnitEigenvalue { .. } => None,
        }
    }

    pub fn signature(&self) -> &EigenSignature {
        match self {
            Self::Form(r) => &r.signature,
            Self::NoUnitEigenvalue { signature } => signature,
        }
    }

    pub fn form(&self) -> Option<FormTag> {
        self.result().map(|r| r.form)
    }
}

fn block_diag_1(block: &IntMatrix) -> IntMatrix {
    IntMatrix::embed_lower_right(block, block.rows() + 1)
}

/// Puts `m ∈ SL(n, Z)`, `n ∈ {2, 3}`, with eigenvalue 1 into normal form.
///
/// First `e₁` is made the 1-eigenvector; for `n = 3` the trailing 2×2 block
/// is then triangularized by a conjugator of shape `[[1, 0], [0, T₂]]` when
/// its eigenvalues are ±1.
pub fn classify(m: &IntMatrix) -> Result<Classification, NormalFormError> {
    if !m.is_square() {
        return Err(NormalFormError::NotSquare);
    }
    let n = m.rows();
    if !(2..=3).contains(&n) {
        return Err(NormalFormError::UnsupportedDimension(n));
    }
    let signature = eigen_signature(m)?;
    if !signature.has_plus_one {
        return Ok(Classification::NoUnitEigenvalue { signature });
    }

    let (t1, m1) = conjugate_to_e1(m, 1)?;
    let (form, conjugator, normal_form) = if n == 2 {
        (FormTag::Triangular2, t1, m1)
    } else {
        let block = m1.submatrix(1, 1, 2, 2);
        let epsilon = match (signature.ma_plus, signature.ma_minus) {
            (3, _) => Some((1, FormTag::UpperUnipotent3)),
            (1, 2) => Some((-1, FormTag::MixedMinusOne3)),
            (1, 0) => None,
            other => unreachable!("impossible multiplicities {other:?} for det 1"),
        };
        match epsilon {
            Some((eps, tag)) => {
                let (t2, _) = conjugate_to_e1(&block, eps)?;
                let t2 = block_diag_1(&t2);
                let t = &t2 * &t1;
                let nf = &(&t2 * &m1) * &t2.inverse_unimodular()?;
                (tag, t, nf)
            }
            None => (FormTag::IrrationalBlock3, t1, m1),
        }
    };

    debug_assert!(form.matches(&normal_form), "{form} does not match {normal_form}");
    debug_assert!(det_exact(&conjugator).is_ok_and(|d| d.is_one()));
    Ok(Classification::Form(ClassificationResult { form, conjugator, normal_form, signature }))
}

/// Checks `T M T⁻¹ = M'`, `det T = 1` and the form's zero pattern.
pub fn verify_classification(m: &IntMatrix, result: &ClassificationResult) -> bool {
    let Ok(inv) = result.conjugator.inverse_unimodular() else {
        return false;
    };
    det_exact(&result.conjugator).is_ok_and(|d| d.is_one())
        && &(&result.conjugator * m) * &inv == result.normal_form
        && result.form.matches(&result.normal_form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classified(rows: &[Vec<i64>]) -> (IntMatrix, ClassificationResult) {
        let m = IntMatrix::from_rows(rows);
        let Classification::Form(r) = classify(&m).unwrap() else {
            panic!("expected a form for {m}");
        };
        assert!(verify_classification(&m, &r));
        (m, r)
    }

    #[test]
    fn already_triangular() {
        let (_, r) = classified(&[vec![1, 5], vec![0, 1]]);
        assert_eq!(r.form, FormTag::Triangular2);
        assert!(r.conjugator.is_identity());
        assert_eq!(r.normal_form[(0, 1)], BigInt::from(5));
    }

    #[test]
    fn conjugated_unipotent() {
        let (_, r) = classified(&[vec![-4, 5], vec![-5, 6]]);
        assert_eq!(r.form, FormTag::Triangular2);
        assert_eq!(num_traits::Signed::abs(&r.normal_form[(0, 1)]), BigInt::from(5));
    }

    #[test]
    fn three_forms() {
        let (_, r) = classified(&[vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 1]]);
        assert_eq!(r.form, FormTag::IrrationalBlock3);
        let (_, r) = classified(&[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(r.form, FormTag::UpperUnipotent3);
        assert_eq!(r.signature.ma_plus, 3);
        let (_, r) = classified(&[vec![1, 2, 3], vec![0, -1, 4], vec![0, 0, -1]]);
        assert_eq!(r.form, FormTag::MixedMinusOne3);
    }

    #[test]
    fn cat_map_has_no_unit_eigenvalue() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(matches!(classify(&m).unwrap(), Classification::NoUnitEigenvalue { .. }));
    }

    #[test]
    fn unsupported_dimension() {
        assert_eq!(classify(&IntMatrix::identity(4)), Err(NormalFormError::UnsupportedDimension(4)));
    }

    #[test]
    fn tag_patterns() {
        let m = IntMatrix::from_rows(&[vec![1, 7, -3], vec![0, 1, 2], vec![0, 0, 1]]);
        assert!(FormTag::UpperUnipotent3.matches(&m));
        assert!(!FormTag::MixedMinusOne3.matches(&m));
        assert!(FormTag::IrrationalBlock3.matches(&m));
        assert!(!FormTag::Triangular2.matches(&m));
    }
}
