use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPolynomial, LinalgError};

/// `det(xI − m)` by Faddeev–LeVerrier.
///
/// With `M_0 = 0`, `M_k = A·M_{k−1} + c_{n−k+1}·I` and
/// `c_{n−k} = −tr(A·M_k) / k`. Every `M_k` is an integer matrix, so each
/// division must be exact; a nonzero remainder is reported as an error.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial, LinalgError> {
    let n = m.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // Holds A·M_{k-1}; starts as A·M_0 = 0.
    let mut am = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut mk = am;
        let c = coeffs[n - k + 1].clone();
        if !c.is_zero() {
            for i in 0..n {
                let v = mk.get(i, i) + &c;
                mk.set(i, i, v);
            }
        }
        am = m.mul(&mk);
        let (q, r) = (-am.trace()).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(LinalgError::InexactDivision { step: k });
        }
        coeffs[n - k] = q;
    }
    Ok(IntPolynomial::new(coeffs))
}
