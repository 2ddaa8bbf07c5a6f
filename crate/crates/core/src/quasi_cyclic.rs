//! The rotational product on F_{2^m}^n, i.e. multiplication in
//! F_{2^m}[X]/(X^n - 1): (a·b)_k = Σ_{i+j ≡ k (mod n)} a_i b_j.

use crate::error::Result;
use crate::field::FieldElement;
use crate::rank::RkVector;

/// The n x n circulant with rot(b)[k][j] = b_{(k-j) mod n}, so that
/// a·b = a·rot(b)^T. Only materialized for inspection and tests.
pub fn rot(b: &RkVector) -> Vec<Vec<FieldElement>> {
    let n = b.len();
    (0..n)
        .map(|k| (0..n).map(|j| b.coords()[(k + n - j) % n]).collect())
        .collect()
}

/// Row vector times the transpose of a square matrix over the same field.
pub fn mul_by_transpose(a: &RkVector, matrix: &[Vec<FieldElement>]) -> RkVector {
    let field = a.field();
    let coords = matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(a.coords())
                .fold(FieldElement::ZERO, |acc, (&r, &x)| acc + field.mul(x, r))
        })
        .collect();
    RkVector::new(field, coords).expect("products stay in the field")
}

/// a·b by direct cyclic convolution.
pub fn rot_product(a: &RkVector, b: &RkVector) -> Result<RkVector> {
    a.check_compatible(b)?;
    let field = a.field();
    let n = a.len();
    let mut out = vec![FieldElement::ZERO; n];
    for (i, &ai) in a.coords().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.coords().iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let k = if i + j >= n { i + j - n } else { i + j };
            out[k] += field.mul(ai, bj);
        }
    }
    RkVector::new(field, out)
}

/// (a, b)·c = (a·c, b·c).
pub fn pair_product(pair: (&RkVector, &RkVector), c: &RkVector) -> Result<(RkVector, RkVector)> {
    Ok((rot_product(pair.0, c)?, rot_product(pair.1, c)?))
}
