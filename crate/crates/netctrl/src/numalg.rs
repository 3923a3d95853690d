//! Floating-point linear algebra with explicit tolerances.
//!
//! Everything here is a fallback for questions the exact kernel cannot
//! settle in rational arithmetic (irrational eigenvalues, numeric PBH
//! points). Results carry a `numeric` confidence downstream; the exact
//! paths never call into this module.

use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::exactalg::{
    faddeev_leverrier, rational_roots, squarefree_decomposition, ExactError, Poly, RMatrix, Rat,
};

/// Tolerances used by every numeric decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericTolerance {
    /// Relative threshold for rank decisions: a pivot counts while it
    /// exceeds `rank_tol` times the largest pivot.
    pub rank_tol: f64,
    /// Acceptance bound for witness residuals.
    pub residual_tol: f64,
}

impl Default for NumericTolerance {
    fn default() -> Self {
        NumericTolerance {
            rank_tol: 1e-9,
            residual_tol: 1e-8,
        }
    }
}

impl NumericTolerance {
    /// Both thresholds set to the same value, for the CLI override.
    pub fn uniform(tol: f64) -> Self {
        NumericTolerance {
            rank_tol: tol,
            residual_tol: tol,
        }
    }
}

/// Errors from the numeric layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("matrix contains a NaN or infinite entry")]
    NonFinite,
    #[error("the zero vector cannot be a witness")]
    ZeroVector,
}

/// Dense `f64` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rmatrix(m: &RMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, rat_to_f64(&m[(i, j)]));
            }
        }
        out
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FMat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    pub fn from_rmatrix(m: &RMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            Complex64::new(rat_to_f64(&m[(i, j)]), 0.0)
        })
    }

    /// `s*I - a` over the complex numbers.
    pub fn si_minus(s: Complex64, a: &RMatrix) -> Self {
        assert!(a.is_square(), "si_minus needs a square matrix");
        Self::from_fn(a.rows(), a.cols(), |i, j| {
            let v = -rat_to_f64(&a[(i, j)]);
            if i == j {
                s + v
            } else {
                Complex64::new(v, 0.0)
            }
        })
    }

    pub fn hstack(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                rhs.get(i, j - self.cols)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Real embedding `[[Re, -Im], [Im, Re]]`; its rank is twice the
    /// complex rank.
    fn embed_real(&self) -> FMat {
        let (r, c) = (self.rows, self.cols);
        let mut out = FMat::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let z = self.get(i, j);
                out.set(i, j, z.re);
                out.set(i, j + c, -z.im);
                out.set(i + r, j, z.im);
                out.set(i + r, j + c, z.re);
            }
        }
        out
    }
}

impl fmt::Display for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Best-effort conversion; astronomically large rationals may overflow to
/// infinity, which the rank routines then reject.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Numeric rank via Householder QR with column pivoting: the rank is the
/// number of pivot columns whose remaining norm exceeds `rank_tol` times
/// the largest one.
pub fn num_rank(m: &FMat, tol: &NumericTolerance) -> Result<usize, NumError> {
    if !m.all_finite() {
        return Err(NumError::NonFinite);
    }
    let (rows, cols) = (m.rows, m.cols);
    if rows == 0 || cols == 0 {
        return Ok(0);
    }
    let mut a = m.clone();
    let steps = rows.min(cols);
    let mut largest = 0.0f64;
    let mut rank = 0;
    for k in 0..steps {
        // Pick the remaining column with the largest norm below row k.
        let mut best = k;
        let mut best_norm = 0.0f64;
        for j in k..cols {
            let norm: f64 = (k..rows).map(|i| a.get(i, j).powi(2)).sum::<f64>().sqrt();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        if k == 0 {
            largest = best_norm;
        }
        if best_norm <= tol.rank_tol * largest {
            break;
        }
        if best != k {
            for i in 0..rows {
                let t = a.get(i, k);
                a.set(i, k, a.get(i, best));
                a.set(i, best, t);
            }
        }
        // Householder reflector zeroing column k below the diagonal.
        let x0 = a.get(k, k);
        let alpha = if x0 >= 0.0 { -best_norm } else { best_norm };
        let mut v: Vec<f64> = (k..rows).map(|i| a.get(i, k)).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 > 0.0 {
            for j in k..cols {
                let dot: f64 = (k..rows).map(|i| v[i - k] * a.get(i, j)).sum();
                let w = 2.0 * dot / vnorm2;
                for i in k..rows {
                    let t = a.get(i, j) - w * v[i - k];
                    a.set(i, j, t);
                }
            }
        }
        a.set(k, k, alpha);
        for i in k + 1..rows {
            a.set(i, k, 0.0);
        }
        rank += 1;
    }
    Ok(rank)
}

/// Complex rank through the real embedding.
pub fn num_rank_c(m: &CMat, tol: &NumericTolerance) -> Result<usize, NumError> {
    Ok(num_rank(&m.embed_real(), tol)? / 2)
}

/// Basis of the numeric left nullspace `{ v : v m ~ 0 }`: reduced row
/// echelon form of `mᵀ` with partial (largest-modulus) pivoting, treating
/// pivot candidates below `rank_tol * max-entry` as zero.
pub fn complex_left_nullspace(m: &CMat, tol: &NumericTolerance) -> Vec<Vec<Complex64>> {
    let n_eq = m.cols; // one equation per column of m
    let dim = m.rows; // one unknown per row of m
    let mut e = CMat::from_fn(n_eq, dim, |i, j| m.get(j, i));
    let scale = e.data.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1.0);
    let threshold = tol.rank_tol * scale;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut r = 0;
    for c in 0..dim {
        if r == n_eq {
            break;
        }
        let best = (r..n_eq).max_by(|&i, &j| {
            e.get(i, c)
                .norm()
                .partial_cmp(&e.get(j, c).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(best) = best else { break };
        if e.get(best, c).norm() <= threshold {
            continue; // free column
        }
        if best != r {
            for j in 0..dim {
                let t = e.get(r, j);
                e.set(r, j, e.get(best, j));
                e.set(best, j, t);
            }
        }
        let inv = e.get(r, c).inv();
        for j in 0..dim {
            let v = e.get(r, j) * inv;
            e.set(r, j, v);
        }
        for i in 0..n_eq {
            if i != r {
                let f = e.get(i, c);
                if f.norm() > 0.0 {
                    for j in 0..dim {
                        let v = e.get(i, j) - f * e.get(r, j);
                        e.set(i, j, v);
                    }
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.iter().any(|&(_, pc)| pc == free) {
            continue;
        }
        let mut v = vec![Complex64::ZERO; dim];
        v[free] = Complex64::ONE;
        for &(pr, pc) in &pivots {
            v[pc] = -e.get(pr, free);
        }
        basis.push(v);
    }
    basis
}

/// All complex roots of a nonconstant polynomial by Durand-Kerner
/// iteration, sorted by real then imaginary part. The caller is expected to
/// hand in a squarefree polynomial for full accuracy.
pub fn poly_roots(p: &Poly) -> Vec<Complex64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let lead = rat_to_f64(p.leading().expect("nonconstant"));
    let cs: Vec<Complex64> = (0..=deg)
        .map(|k| Complex64::new(rat_to_f64(&p.coeff(k)) / lead, 0.0))
        .collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::ZERO;
        for c in cs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let mut den = Complex64::ONE;
            for j in 0..deg {
                if j != k {
                    den *= zs[k] - zs[j];
                }
            }
            if den.norm() < 1e-300 {
                zs[k] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let step = eval(zs[k]) / den;
            zs[k] -= step;
            max_step = max_step.max(step.norm());
        }
        let spread = zs.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        if max_step < 1e-13 * spread {
            break;
        }
    }
    zs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    zs
}

/// Horner evaluation of an exact polynomial at a complex point.
pub fn eval_poly_c(p: &Poly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for c in p.coeffs().iter().rev() {
        acc = acc * z + rat_to_f64(c);
    }
    acc
}

/// Eigenvalue report: rational eigenvalues exactly, the rest numerically.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Rational eigenvalues with multiplicities, ascending.
    pub exact: Vec<(Rat, usize)>,
    /// Remaining eigenvalues with multiplicities, sorted by (re, im).
    /// Computed from the exactly-deflated quotient, squarefree factor by
    /// squarefree factor, so multiple roots do not degrade the iteration.
    pub numeric: Vec<(Complex64, usize)>,
    /// True when the characteristic polynomial split over the rationals.
    pub fully_exact: bool,
}

impl SpectrumReport {
    /// Sum of all multiplicities; always the matrix order.
    pub fn total_multiplicity(&self) -> usize {
        self.exact.iter().map(|(_, m)| m).sum::<usize>()
            + self.numeric.iter().map(|(_, m)| m).sum::<usize>()
    }
}

/// Spectrum of a square rational matrix: characteristic polynomial by
/// Faddeev-LeVerrier, rational roots exactly, the deflated remainder by
/// squarefree decomposition plus Durand-Kerner.
pub fn spectrum(a: &RMatrix) -> Result<SpectrumReport, ExactError> {
    let chi = faddeev_leverrier(a)?.chi;
    let rr = rational_roots(&chi)?;
    let fully_exact = rr.complete();
    let mut numeric = Vec::new();
    if !fully_exact {
        for (factor, mult) in squarefree_decomposition(&rr.quotient)? {
            for root in poly_roots(&factor) {
                numeric.push((root, mult));
            }
        }
        numeric.sort_by(|a, b| {
            a.0.re
                .partial_cmp(&b.0.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(
                    a.0.im
                        .partial_cmp(&b.0.im)
                        .unwrap_or(std::cmp::Ordering::Equal),
                )
        });
    }
    Ok(SpectrumReport {
        exact: rr.roots,
        numeric,
        fully_exact,
    })
}

/// Scaled witness defect: `max(|alpha (s0 I - Phi)|_inf, |alpha Psi|_inf)`
/// divided by `|alpha|_inf`. Exactly zero for an exact witness.
pub fn witness_residual(
    s0: Complex64,
    alpha: &[Complex64],
    phi: &RMatrix,
    psi: &RMatrix,
) -> Result<f64, NumError> {
    assert_eq!(alpha.len(), phi.rows(), "witness length mismatch");
    assert_eq!(phi.rows(), psi.rows(), "system shape mismatch");
    let anorm = alpha.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if anorm == 0.0 {
        return Err(NumError::ZeroVector);
    }
    if !alpha.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(NumError::NonFinite);
    }
    let n = phi.rows();
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut acc = Complex64::ZERO;
        for (i, a) in alpha.iter().enumerate() {
            let shift = if i == j { s0 } else { Complex64::ZERO };
            acc += a * (shift - rat_to_f64(&phi[(i, j)]));
        }
        worst = worst.max(acc.norm());
    }
    for j in 0..psi.cols() {
        let mut acc = Complex64::ZERO;
        for (i, a) in alpha.iter().enumerate() {
            acc += a * rat_to_f64(&psi[(i, j)]);
        }
        worst = worst.max(acc.norm());
    }
    if !worst.is_finite() {
        return Err(NumError::NonFinite);
    }
    Ok(worst / anorm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rint;
    use crate::rmat;

    fn tol() -> NumericTolerance {
        NumericTolerance::default()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(num_rank(&FMat::from_rmatrix(&RMatrix::identity(3)), &tol()).unwrap(), 3);
        assert_eq!(num_rank(&FMat::zeros(2, 5), &tol()).unwrap(), 0);
    }

    #[test]
    fn rank_of_outer_product_sum() {
        // u v^T + w z^T with independent pairs: rank 2.
        let u = [1.0, 2.0, -1.0, 0.5];
        let v = [3.0, 1.0, 0.0, 2.0];
        let w = [0.0, 1.0, 1.0, -2.0];
        let z = [1.0, -1.0, 2.0, 1.0];
        let mut m = FMat::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, u[i] * v[j] + w[i] * z[j]);
            }
        }
        assert_eq!(num_rank(&m, &tol()).unwrap(), 2);
    }

    #[test]
    fn tiny_perturbations_stay_below_the_threshold() {
        let m = FMat::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0 + 1e-14],
        ]);
        assert_eq!(num_rank(&m, &tol()).unwrap(), 1);
    }

    #[test]
    fn non_finite_is_rejected() {
        let m = FMat::from_rows(&[vec![1.0, f64::NAN]]);
        assert!(matches!(num_rank(&m, &tol()), Err(NumError::NonFinite)));
    }

    #[test]
    fn complex_rank_via_embedding() {
        // Row 2 = i * row 1, so complex rank 1 (real embedding rank 2).
        let m = CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::ONE,
            (0, 1) => Complex64::I,
            (1, 0) => Complex64::I,
            (1, 1) => -Complex64::ONE,
            _ => unreachable!(),
        });
        assert_eq!(num_rank_c(&m, &tol()).unwrap(), 1);
    }

    #[test]
    fn complex_nullspace_annihilates() {
        let m = CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::ONE,
            (0, 1) => Complex64::I,
            (1, 0) => Complex64::I,
            (1, 1) => -Complex64::ONE,
            _ => unreachable!(),
        });
        let basis = complex_left_nullspace(&m, &tol());
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        for j in 0..2 {
            let r = v[0] * m.get(0, j) + v[1] * m.get(1, j);
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn roots_of_simple_quadratics() {
        let pm1 = poly_roots(&Poly::from_ints(&[-1, 0, 1]));
        assert!((pm1[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        assert!((pm1[1] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let ipair = poly_roots(&Poly::from_ints(&[1, 0, 1]));
        assert!((ipair[0] - Complex64::new(0.0, -1.0)).norm() < 1e-9);
        assert!((ipair[1] - Complex64::new(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn spectrum_fully_exact_for_nilpotent_and_triangular() {
        let rep = spectrum(&rmat![[0, 1], [0, 0]]).unwrap();
        assert!(rep.fully_exact);
        assert_eq!(rep.exact, vec![(rint(0), 2)]);
        assert_eq!(rep.total_multiplicity(), 2);

        let rep = spectrum(&rmat![[1, 0], [1, 1]]).unwrap();
        assert_eq!(rep.exact, vec![(rint(1), 2)]);
    }

    #[test]
    fn spectrum_mixes_exact_and_numeric_parts() {
        // chi = s^3 - 9s^2 - 28s + 24 = (s + 3)(s^2 - 12s + 8).
        let rep = spectrum(&rmat![[1, 8, 7], [4, 5, 6], [1, 2, 3]]).unwrap();
        assert!(!rep.fully_exact);
        assert_eq!(rep.exact, vec![(rint(-3), 1)]);
        assert_eq!(rep.numeric.len(), 2);
        assert_eq!(rep.total_multiplicity(), 3);
        for (z, _) in &rep.numeric {
            assert!((z - Complex64::new(2.0, 0.0)).norm() > 1e-6);
        }
    }

    #[test]
    fn spectrum_of_irrational_pair() {
        let rep = spectrum(&rmat![[0, 2], [1, 0]]).unwrap();
        assert!(rep.exact.is_empty());
        let r2 = 2.0f64.sqrt();
        assert!((rep.numeric[0].0 - Complex64::new(-r2, 0.0)).norm() < 1e-9);
        assert!((rep.numeric[1].0 - Complex64::new(r2, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn residual_zero_for_an_exact_witness() {
        let phi = rmat![[1, 0], [0, 2]];
        let psi = rmat![[1], [0]];
        let alpha = [Complex64::ZERO, Complex64::ONE];
        let r = witness_residual(Complex64::new(2.0, 0.0), &alpha, &phi, &psi).unwrap();
        assert_eq!(r, 0.0);
        let off = witness_residual(Complex64::new(2.5, 0.0), &alpha, &phi, &psi).unwrap();
        assert!(off > 0.4);
    }

    #[test]
    fn residual_rejects_zero_vectors() {
        let phi = rmat![[1]];
        let psi = rmat![[1]];
        assert!(matches!(
            witness_residual(Complex64::ZERO, &[Complex64::ZERO], &phi, &psi),
            Err(NumError::ZeroVector)
        ));
    }
}
