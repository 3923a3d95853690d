//! Matrices with polynomial entries, for rank-locus computations.

use std::fmt;
use std::ops::Index;

use num_traits::Zero;

use super::matrix::RMatrix;
use super::poly::{poly_gcd, Poly};
use super::rational::Rat;

/// Dense matrix over `Q[s]`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    /// `p * I_n`.
    pub fn scaled_identity(n: usize, p: &Poly) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { p.clone() } else { Poly::zero() })
    }

    /// Embeds a rational matrix as constant polynomials.
    pub fn from_rmatrix(m: &RMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            if m[(i, j)].is_zero() {
                Poly::zero()
            } else {
                Poly::constant(m[(i, j)].clone())
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = p;
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }

    pub fn hstack(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    /// Entry-wise evaluation at a rational point.
    pub fn eval(&self, s: &Rat) -> RMatrix {
        RMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval(s))
    }

    /// Determinant by fraction-free elimination over `Q[s]`; every division
    /// in the Bareiss recurrence is exact in the polynomial ring.
    pub fn det(&self) -> Poly {
        assert!(self.rows == self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = Poly::one();
        for c in 0..n - 1 {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Poly::zero();
            };
            if p != c {
                m.swap(p, c);
                sign = !sign;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let t = &(&m[c][c] * &m[i][j]) - &(&m[i][c] * &m[c][j]);
                    m[i][j] = t.div_exact(&prev);
                }
                m[i][c] = Poly::zero();
            }
            prev = m[c][c].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -&d
        } else {
            d
        }
    }

    /// Monic gcd of all maximal (rows x rows) minors. Requires
    /// `rows <= cols`. Columns that are identically zero never contribute a
    /// nonzero minor and are skipped. Returns zero iff every minor vanishes
    /// identically; stops early once the gcd drops to a constant.
    pub fn maximal_minor_gcd(&self) -> Poly {
        assert!(
            self.rows <= self.cols,
            "maximal_minor_gcd expects a wide matrix"
        );
        let live_cols: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self[(i, j)].is_zero()))
            .collect();
        if live_cols.len() < self.rows {
            return Poly::zero();
        }
        let mut gcd = Poly::zero();
        let mut subset: Vec<usize> = Vec::with_capacity(self.rows);
        self.minor_gcd_rec(&live_cols, 0, &mut subset, &mut gcd);
        gcd.monic()
    }

    fn minor_gcd_rec(
        &self,
        live_cols: &[usize],
        start: usize,
        subset: &mut Vec<usize>,
        gcd: &mut Poly,
    ) {
        if !gcd.is_zero() && gcd.is_constant() {
            return;
        }
        if subset.len() == self.rows {
            let minor =
                PolyMatrix::from_fn(self.rows, self.rows, |i, j| self[(i, subset[j])].clone())
                    .det();
            if !minor.is_zero() {
                *gcd = poly_gcd(gcd, &minor);
            }
            return;
        }
        let need = self.rows - subset.len();
        for k in start..=live_cols.len().saturating_sub(need) {
            subset.push(live_cols[k]);
            self.minor_gcd_rec(live_cols, k + 1, subset, gcd);
            subset.pop();
        }
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
