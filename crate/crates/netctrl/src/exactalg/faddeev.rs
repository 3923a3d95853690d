//! Characteristic polynomial and adjugate of `sI - A` in one pass.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::RMatrix;
use super::poly::Poly;
use super::polymatrix::PolyMatrix;
use super::rational::Rat;
use super::ExactError;

/// Output of [`faddeev_leverrier`]: the characteristic polynomial of `A`
/// and the adjugate of `sI - A` as a polynomial matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharData {
    /// `chi(s) = det(sI - A)`, monic of degree `n`.
    pub chi: Poly,
    /// `adj(sI - A)`, satisfying `(sI - A) * adj(sI - A) = chi(s) * I`.
    pub adjugate: PolyMatrix,
}

/// Faddeev-LeVerrier recursion. With `M_0 = I` and
/// `c_k = -tr(A M_{k-1}) / k`, `M_k = A M_{k-1} + c_k I`, the characteristic
/// polynomial is `s^n + c_1 s^{n-1} + ... + c_n` and the matrices `M_k`
/// are the descending coefficients of `adj(sI - A)`.
pub fn faddeev_leverrier(a: &RMatrix) -> Result<CharData, ExactError> {
    if !a.is_square() {
        return Err(ExactError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(CharData {
            chi: Poly::one(),
            adjugate: PolyMatrix::zeros(0, 0),
        });
    }
    let mut cs = vec![Rat::zero(); n + 1];
    cs[0] = Rat::from_integer(BigInt::from(1));
    let mut m = RMatrix::identity(n);
    let mut ms = Vec::with_capacity(n);
    ms.push(m.clone());
    for (k, slot) in cs.iter_mut().enumerate().skip(1) {
        let am = a.mul(&m);
        let trace = (0..n).fold(Rat::zero(), |acc, i| acc + &am[(i, i)]);
        let ck = -trace / Rat::from_integer(BigInt::from(k as i64));
        m = am.add(&RMatrix::identity(n).scale(&ck));
        *slot = ck;
        if k < n {
            ms.push(m.clone());
        }
    }
    // cs holds [1, c_1, ..., c_n] by descending power.
    let chi = Poly::from_coeffs(cs.into_iter().rev().collect());
    let adjugate = PolyMatrix::from_fn(n, n, |i, j| {
        // Coefficient of s^{n-1-k} is ms[k][(i, j)].
        Poly::from_coeffs((0..n).rev().map(|k| ms[k][(i, j)].clone()).collect())
    });
    Ok(CharData { chi, adjugate })
}
