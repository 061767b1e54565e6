use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{classify, Classification, NormalFormError};
use crate::exact_int::{det_exact, serialize_int_vec, IntMatrix};

/// Integer vector of Maslov indices, one per basis cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MaslovVector(#[serde(serialize_with = "serialize_int_vec")] pub Vec<BigInt>);

impl MaslovVector {
    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Real action vector, one action per basis cycle.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ActionVector(pub Vec<f64>);

#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    pub monodromy: IntMatrix,
    pub maslov: MaslovVector,
    pub actions: ActionVector,
}

/// Applies the cycle basis change `γ' = T γ`: the monodromy is conjugated,
/// Maslov indices and actions are multiplied by `T`.
pub fn change_basis(
    m: &IntMatrix,
    mu: &MaslovVector,
    actions: &ActionVector,
    t: &IntMatrix,
) -> Result<BasisChange, NormalFormError> {
    let n = t.rows();
    if !t.is_square() || m.rows() != n || !m.is_square() || mu.len() != n || actions.0.len() != n {
        return Err(NormalFormError::NotSquare);
    }
    let det = det_exact(t)?;
    if !det.abs().is_one() {
        return Err(NormalFormError::NotUnimodular(det));
    }
    let monodromy = &(t * m) * &t.inverse_unimodular()?;
    let maslov = MaslovVector(t.mul_vec(&mu.0)?);
    let actions = ActionVector(
        (0..n).map(|i| (0..n).map(|j| t[(i, j)].to_f64().expect("finite entry") * actions.0[j]).sum()).collect(),
    );
    Ok(BasisChange { monodromy, maslov, actions })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremVerdict {
    Holds,
    Fails,
    /// μ = 0, so there is nothing to check.
    Vacuous,
}

impl TheoremVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Holds => "holds",
            Self::Fails => "fails",
            Self::Vacuous => "vacuous",
        }
    }
}

/// Checks `M μ = μ` exactly.
pub fn verify_theorem1(m: &IntMatrix, mu: &MaslovVector) -> Result<TheoremVerdict, NormalFormError> {
    let image = m.mul_vec(&mu.0)?;
    if mu.is_zero() {
        return Ok(TheoremVerdict::Vacuous);
    }
    Ok(if image == mu.0 { TheoremVerdict::Holds } else { TheoremVerdict::Fails })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCover {
    pub square: IntMatrix,
    pub classification: Classification,
    /// Invariant actions along the loop once (`m_g` of +1 for M).
    pub invariant_actions: usize,
    /// Invariant actions along the loop traversed twice (`m_g` of +1 for M²).
    pub invariant_actions_twice: usize,
}

/// Classifies `M²`, the monodromy of the loop traversed twice.
pub fn double_cover(m: &IntMatrix) -> Result<DoubleCover, NormalFormError> {
    let det = det_exact(m)?;
    if !det.is_one() {
        return Err(NormalFormError::NotSpecialLinear(det));
    }
    let once = classify(m)?;
    let square = m * m;
    let classification = classify(&square)?;
    Ok(DoubleCover {
        invariant_actions: once.signature().mg_plus,
        invariant_actions_twice: classification.signature().mg_plus,
        square,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::FormTag;

    #[test]
    fn identity_change_is_noop() {
        let m = IntMatrix::from_rows(&[vec![1, 3], vec![0, 1]]);
        let mu = MaslovVector::from_i64(&[2, 0]);
        let i = ActionVector(vec![0.25, -1.5]);
        let out = change_basis(&m, &mu, &i, &IntMatrix::identity(2)).unwrap();
        assert_eq!(out.monodromy, m);
        assert_eq!(out.maslov, mu);
        assert_eq!(out.actions, i);
    }

    #[test]
    fn swap_moves_to_upper_triangular() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let out = change_basis(&m, &MaslovVector::from_i64(&[0, 2]), &ActionVector(vec![0.1, 0.3]), &swap).unwrap();
        assert_eq!(out.monodromy, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(out.maslov, MaslovVector::from_i64(&[2, 0]));
        assert_eq!(out.actions, ActionVector(vec![0.3, 0.1]));
    }

    #[test]
    fn shear_on_maslov() {
        let t = IntMatrix::from_rows(&[vec![1, 0], vec![3, 1]]);
        let out =
            change_basis(&IntMatrix::identity(2), &MaslovVector::from_i64(&[2, 0]), &ActionVector(vec![0.0, 0.0]), &t)
                .unwrap();
        assert_eq!(out.maslov, MaslovVector::from_i64(&[2, 6]));
    }

    #[test]
    fn rejects_non_unimodular() {
        let t = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let err =
            change_basis(&IntMatrix::identity(2), &MaslovVector::from_i64(&[0, 0]), &ActionVector(vec![0.0; 2]), &t);
        assert_eq!(err, Err(NormalFormError::NotUnimodular(BigInt::from(2))));
    }

    #[test]
    fn theorem_verdicts() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(verify_theorem1(&m, &MaslovVector::from_i64(&[2, 0])).unwrap(), TheoremVerdict::Holds);
        assert_eq!(verify_theorem1(&m, &MaslovVector::from_i64(&[0, 2])).unwrap(), TheoremVerdict::Fails);
        let cat = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(verify_theorem1(&cat, &MaslovVector::from_i64(&[0, 0])).unwrap(), TheoremVerdict::Vacuous);
    }

    #[test]
    fn double_cover_of_minus_one_form() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, -1, 4], vec![0, 0, -1]]);
        let dc = double_cover(&m).unwrap();
        assert_eq!(dc.classification.signature().ma_plus, 3);
        assert_eq!(dc.classification.form(), Some(FormTag::UpperUnipotent3));
        // M² = [[1, 0, 8], [0, 1, -8], [0, 0, 1]]: a second invariant action appears
        assert_eq!(dc.invariant_actions, 1);
        assert_eq!(dc.invariant_actions_twice, 2);

        // with B = -I the square is the identity
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, -1, 0], vec![0, 0, -1]]);
        let dc = double_cover(&m).unwrap();
        assert_eq!(dc.invariant_actions_twice, 3);
    }

    #[test]
    fn double_cover_identity_and_cat() {
        let dc = double_cover(&IntMatrix::identity(3)).unwrap();
        assert!(dc.square.is_identity());
        let m = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 1]]);
        let dc = double_cover(&m).unwrap();
        assert_eq!(dc.classification.form(), Some(FormTag::IrrationalBlock3));
        assert!(dc.classification.signature().other_eigenvalues_irrational);
    }
}
