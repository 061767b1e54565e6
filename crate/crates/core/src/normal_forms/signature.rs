use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::NormalFormError;
use crate::exact_int::{det_exact, IntMatrix};

/// Multiplicities of the eigenvalues ±1 of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSignature {
    pub dim: usize,
    pub has_plus_one: bool,
    pub has_minus_one: bool,
    pub ma_plus: usize,
    pub mg_plus: usize,
    pub ma_minus: usize,
    pub mg_minus: usize,
    /// The eigenvalues other than ±1 exist and none of them is rational.
    /// Non-real eigenvalues count as irrational here.
    pub other_eigenvalues_irrational: bool,
}

/// Characteristic polynomial `det(λI - m)` by Faddeev–LeVerrier, coefficients
/// in ascending degree. The divisions are exact for integer input.
pub fn characteristic_polynomial(m: &IntMatrix) -> Vec<BigInt> {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        mk = &(m * &mk) + &(&IntMatrix::identity(n) * &coeffs[n - k + 1]);
        let am = m * &mk;
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    coeffs
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides by `(λ - root)`; caller guarantees `root` is a root.
fn deflate(poly: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = poly.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &poly[i + 1] + carry * root;
        out[i] = carry.clone();
    }
    out
}

/// Strips every factor `(λ - root)` and returns the multiplicity.
fn strip_root(poly: &mut Vec<BigInt>, root: &BigInt) -> usize {
    let mut mult = 0;
    while poly.len() > 1 && eval(poly, root).is_zero() {
        *poly = deflate(poly, root);
        mult += 1;
    }
    mult
}

/// Rational-root test for a monic integer polynomial: any rational root is an
/// integer dividing the constant term.
fn has_rational_root(poly: &[BigInt]) -> bool {
    if poly.len() <= 1 {
        return false;
    }
    let c0 = poly[0].abs();
    if c0.is_zero() {
        return true;
    }
    let Some(c) = c0.to_u64() else {
        unreachable!("constant term divides det = 1");
    };
    let mut d = 1u64;
    while d * d <= c {
        if c % d == 0 {
            for cand in [d, c / d] {
                let cand = BigInt::from(cand);
                if eval(poly, &cand).is_zero() || eval(poly, &-cand).is_zero() {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

/// Eigenvalue ±1 multiplicities of `m ∈ SL(n, Z)`.
///
/// Algebraic multiplicities come from deflating the characteristic
/// polynomial, geometric ones from the exact rank of `m ∓ I`.
pub fn eigen_signature(m: &IntMatrix) -> Result<EigenSignature, NormalFormError> {
    let det = det_exact(m)?;
    if !det.is_one() {
        return Err(NormalFormError::NotSpecialLinear(det));
    }
    let n = m.rows();
    let mut poly = characteristic_polynomial(m);
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let ma_plus = strip_root(&mut poly, &one);
    let ma_minus = strip_root(&mut poly, &minus_one);
    let mg = |lambda: &BigInt, ma: usize| if ma == 0 { 0 } else { n - m.shift_diagonal(lambda).rank() };
    Ok(EigenSignature {
        dim: n,
        has_plus_one: ma_plus > 0,
        has_minus_one: ma_minus > 0,
        ma_plus,
        mg_plus: mg(&one, ma_plus),
        ma_minus,
        mg_minus: mg(&minus_one, ma_minus),
        other_eigenvalues_irrational: poly.len() > 1 && !has_rational_root(&poly),
    })
}
