use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{
    hermite_normal_form, serialize_int, serialize_int_vec, smith_normal_form, ExactIntError, IntMatrix, PrimitiveVector,
};

/// An elementary divisor that fails to divide the transformed right-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Position in the Smith basis.
    pub index: usize,
    /// Elementary divisor at `index` (zero past the rank).
    #[serde(serialize_with = "serialize_int")]
    pub divisor: BigInt,
    /// Component of the transformed right-hand side at `index`.
    #[serde(serialize_with = "serialize_int")]
    pub residue: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DiophantineSolution {
    Solved {
        #[serde(serialize_with = "serialize_int_vec")]
        x: Vec<BigInt>,
    },
    Unsolvable {
        witness: Obstruction,
    },
}

impl DiophantineSolution {
    pub fn solution(&self) -> Option<&[BigInt]> {
        match self {
            Self::Solved { x } => Some(x),
            Self::Unsolvable { .. } => None,
        }
    }
}

/// Solves the row system `x · b = a` over the integers.
///
/// With `L b R = D` in Smith form the system becomes `y D = a R` for
/// `y = x L⁻¹`. Free coordinates of `y` are set to zero, so the returned
/// particular solution is deterministic.
pub fn solve_linear_diophantine(b: &IntMatrix, a: &[BigInt]) -> Result<DiophantineSolution, ExactIntError> {
    if a.len() != b.cols() {
        return Err(ExactIntError::Dimension(format!(
            "right-hand side has length {} but matrix has {} columns",
            a.len(),
            b.cols()
        )));
    }
    let snf = smith_normal_form(b);
    let c = snf.right.vec_mul(a)?;
    let mut y = vec![BigInt::zero(); b.rows()];
    for (j, cj) in c.iter().enumerate() {
        let d = snf.diag.get(j).cloned().unwrap_or_default();
        if d.is_zero() {
            if !cj.is_zero() {
                return Ok(DiophantineSolution::Unsolvable {
                    witness: Obstruction { index: j, divisor: d, residue: cj.clone() },
                });
            }
        } else if cj.is_multiple_of(&d) {
            y[j] = cj / &d;
        } else {
            return Ok(DiophantineSolution::Unsolvable {
                witness: Obstruction { index: j, divisor: d, residue: cj.clone() },
            });
        }
    }
    let x = snf.left.vec_mul(&y)?;
    Ok(DiophantineSolution::Solved { x })
}

/// A primitive integer vector `v` with `m · v = 0`, first nonzero entry
/// positive.
///
/// Read off the Hermite transform of `mᵀ`: rows of the transform that map
/// to zero rows span the integer kernel, and each is primitive because the
/// transform is unimodular.
pub fn primitive_kernel_vector(m: &IntMatrix) -> Result<PrimitiveVector, ExactIntError> {
    let hf = hermite_normal_form(&m.transpose());
    if hf.rank == m.cols() {
        return Err(ExactIntError::NoKernel);
    }
    let v = hf.transform.row(hf.rank);
    Ok(PrimitiveVector::new(v)?.sign_normalized())
}
