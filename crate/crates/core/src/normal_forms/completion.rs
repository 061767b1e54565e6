use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::NormalFormError;
use crate::exact_int::{det_exact, hermite_normal_form, primitive_kernel_vector, IntMatrix, PrimitiveVector};

/// A matrix `S ∈ SL(n, Z)` whose first column is `u`.
///
/// The Hermite transform `W` of the column `u` satisfies `W u = e₁`, so
/// `S = W⁻¹` has first column `u`. A determinant of -1 is repaired by
/// negating the second column, and every later column is then reduced
/// modulo the first so the result does not depend on incidental choices
/// inside the elimination.
pub fn unimodular_completion(u: &PrimitiveVector) -> Result<IntMatrix, NormalFormError> {
    let n = u.len();
    let col = IntMatrix::from_column(u.entries());
    let hf = hermite_normal_form(&col);
    debug_assert!(hf.h[(0, 0)].is_one());
    let mut s = hf.transform.inverse_unimodular()?;
    if det_exact(&s)?.is_negative() {
        if n == 1 {
            return Err(NormalFormError::NotCompletable);
        }
        s.negate_col(1);
    }

    let (lead, lead_val) = u
        .entries()
        .iter()
        .enumerate()
        .find(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.abs()))
        .expect("primitive vector is nonzero");
    for j in 1..n {
        let q = s[(lead, j)].div_floor(&lead_val) * u.entries()[lead].signum();
        if !q.is_zero() {
            s.add_col_multiple(j, 0, &-q);
        }
    }
    Ok(s)
}

/// Conjugates `m` so that `ε e₁` becomes its first column.
///
/// Returns `(T, T m T⁻¹)` where `T = S⁻¹` and `S` completes the primitive
/// ε-eigenvector of `m`.
pub fn conjugate_to_e1(m: &IntMatrix, epsilon: i32) -> Result<(IntMatrix, IntMatrix), NormalFormError> {
    assert!(epsilon == 1 || epsilon == -1, "epsilon must be ±1");
    if !m.is_square() {
        return Err(NormalFormError::NotSquare);
    }
    let eps = BigInt::from(epsilon);
    let shifted = m.shift_diagonal(&eps);
    let u = primitive_kernel_vector(&shifted).map_err(|_| NormalFormError::NoEigenvalue(epsilon))?;
    let s = unimodular_completion(&u)?;
    let t = s.inverse_unimodular()?;
    let conj = &(&t * m) * &s;
    debug_assert!((0..m.rows()).all(|i| conj[(i, 0)] == if i == 0 { eps.clone() } else { BigInt::zero() }));
    Ok((t, conj))
}
