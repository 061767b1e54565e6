use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{eigen_signature, unimodular_completion, NormalFormError};
use crate::exact_int::{
    det_exact, extended_gcd, serialize_int, serialize_int_vec, solve_linear_diophantine, DiophantineSolution,
    IntMatrix, Obstruction, PrimitiveVector,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mg2Reduction {
    pub conjugator: IntMatrix,
    /// The single off-diagonal entry left at position (1, 3).
    #[serde(serialize_with = "serialize_int")]
    pub g: BigInt,
    pub normal_form: IntMatrix,
}

/// Reduces a unipotent `m ∈ SL(3, Z)` with a two-dimensional fixed space to
/// `I + g E₁₃`.
///
/// `N = m - I` has rank one and squares to zero, so `N = u wᵀ` with `u`
/// primitive and `wᵀ u = 0`. Moving `u` to `e₁` leaves `w` supported on
/// the last two coordinates, where an SL(2, Z) rotation sends it to `(0, g)`.
pub fn reduce_mg2(m: &IntMatrix) -> Result<Mg2Reduction, NormalFormError> {
    if m.rows() != 3 || !m.is_square() {
        return Err(NormalFormError::UnsupportedDimension(m.rows()));
    }
    let sig = eigen_signature(m)?;
    if sig.ma_plus != 3 || sig.mg_plus != 2 {
        return Err(NormalFormError::WrongMultiplicity { ma: sig.ma_plus, mg: sig.mg_plus });
    }
    let one = BigInt::one();
    let nil = m.shift_diagonal(&one);
    debug_assert!((&nil * &nil).is_zero());

    let j0 = (0..3).find(|&j| nil.column(j).iter().any(|x| !x.is_zero())).expect("N has rank one");
    let u = PrimitiveVector::normalize(nil.column(j0))?.sign_normalized();
    let lead = u.entries().iter().position(|x| !x.is_zero()).expect("nonzero");
    let w: Vec<BigInt> = nil.row(lead).iter().map(|x| x / &u.entries()[lead]).collect();

    let s = unimodular_completion(&u)?;
    let t1 = s.inverse_unimodular()?;
    // w' = Sᵀ w, first entry is wᵀ u = 0
    let w1 = s.transpose().mul_vec(&w)?;
    debug_assert!(w1[0].is_zero());

    let (g, x, y) = extended_gcd(&w1[1], &w1[2]);
    // Q = [[w3/g, x], [-w2/g, y]] has det 1 and (w2, w3) Q = (0, g)
    let q = IntMatrix::from_rows(&[vec![&w1[2] / &g, x], vec![-(&w1[1] / &g), y]]);
    let r = q.inverse_unimodular()?;
    let t2 = IntMatrix::embed_lower_right(&r, 3);
    let conjugator = &t2 * &t1;
    let normal_form = &(&conjugator * m) * &conjugator.inverse_unimodular()?;

    debug_assert_eq!(g, nil.content());
    debug_assert!(det_exact(&conjugator).is_ok_and(|d| d.is_one()));
    Ok(Mg2Reduction { conjugator, g, normal_form })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BlockDiagonalization {
    Solved {
        #[serde(serialize_with = "serialize_int_vec")]
        d: Vec<BigInt>,
        /// `[[1, -d], [0, I]]`
        conjugator: IntMatrix,
        block_diagonal: IntMatrix,
    },
    Unsolvable {
        witness: Obstruction,
    },
}

impl BlockDiagonalization {
    pub fn is_solved(&self) -> bool {
        matches!(self, Self::Solved { .. })
    }
}

/// Builds `[[1, a], [0, A]]`.
pub fn block_triangular(a: &[BigInt], block: &IntMatrix) -> IntMatrix {
    let n = block.rows() + 1;
    let mut m = IntMatrix::embed_lower_right(block, n);
    for (j, x) in a.iter().enumerate() {
        m[(0, j + 1)] = x.clone();
    }
    m
}

/// Tries to conjugate `[[1, a], [0, A]]` to `[[1, 0], [0, A]]` with
/// `T = [[1, -d], [0, I]]`, which amounts to solving `d (A - I) = a`.
pub fn block_diagonalize(a: &[BigInt], block: &IntMatrix) -> Result<BlockDiagonalization, NormalFormError> {
    if !block.is_square() || a.len() != block.rows() {
        return Err(NormalFormError::NotSquare);
    }
    let det = det_exact(block)?;
    if !det.is_one() {
        return Err(NormalFormError::NotSpecialLinear(det));
    }
    let shifted = block.shift_diagonal(&BigInt::one());
    match solve_linear_diophantine(&shifted, a)? {
        DiophantineSolution::Solved { x: d } => {
            let neg: Vec<BigInt> = d.iter().map(|x| -x).collect();
            let conjugator = block_triangular(&neg, &IntMatrix::identity(block.rows()));
            let m = block_triangular(a, block);
            let block_diagonal = &(&conjugator * &m) * &block_triangular(&d, &IntMatrix::identity(block.rows()));
            debug_assert!((1..m.cols()).all(|j| block_diagonal[(0, j)].is_zero()));
            Ok(BlockDiagonalization::Solved { d, conjugator, block_diagonal })
        }
        DiophantineSolution::Unsolvable { witness } => Ok(BlockDiagonalization::Unsolvable { witness }),
    }
}

/// True when `d (A - I) = a` by direct substitution.
pub fn check_block_solution(a: &[BigInt], block: &IntMatrix, d: &[BigInt]) -> bool {
    let shifted = block.shift_diagonal(&BigInt::one());
    shifted.vec_mul(d).is_ok_and(|lhs| lhs == a)
}
