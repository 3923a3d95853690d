//! Dense rational matrices: arithmetic, exact rank, nullspaces, solving.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{rat_str, Rat};

/// Dense matrix over [`Rat`], stored row-major.
///
/// Zero-row or zero-column matrices are allowed; they show up naturally as
/// empty nullspace bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Builds an [`RMatrix`] from integer literals: `rmat![[1, 0], [1, 1]]`.
#[macro_export]
macro_rules! rmat {
    ($([$($v:expr),* $(,)?]),* $(,)?) => {
        $crate::exactalg::RMatrix::from_rows(vec![
            $(vec![$($crate::exactalg::rint($v)),*]),*
        ])
    };
}

impl RMatrix {
    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix literal"
        );
        let n_rows = rows.len();
        let data: Vec<Rat> = rows.into_iter().flatten().collect();
        RMatrix {
            rows: n_rows,
            cols,
            data,
        }
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMatrix { rows, cols, data }
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[Rat]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    /// Borrows row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copies column `j` out as a vector.
    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Matrix product. Panics on a shape mismatch.
    pub fn mul(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cur = out[(i, j)].clone();
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }

    pub fn scale(&self, k: &Rat) -> RMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * k)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, below: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, below.cols, "column mismatch in vstack");
        Self::from_fn(self.rows + below.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                below[(i - self.rows, j)].clone()
            }
        })
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(rat_str).collect())
            .collect();
        let mut widths = vec![0usize; self.cols];
        for row in &strings {
            for (j, s) in row.iter().enumerate() {
                widths[j] = widths[j].max(s.len());
            }
        }
        for row in &strings {
            write!(f, "[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>width$}", s, width = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &RMatrix, b: &RMatrix) -> RMatrix {
    RMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        let (ai, bi) = (i / b.rows(), i % b.rows());
        let (aj, bj) = (j / b.cols(), j % b.cols());
        &a[(ai, aj)] * &b[(bi, bj)]
    })
}

/// `s*I - a` for square `a`.
pub fn si_minus(s: &Rat, a: &RMatrix) -> RMatrix {
    assert!(a.is_square(), "si_minus needs a square matrix");
    RMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i == j {
            s - &a[(i, j)]
        } else {
            -a[(i, j)].clone()
        }
    })
}

/// Row vector times matrix.
pub fn row_times(v: &[Rat], m: &RMatrix) -> Vec<Rat> {
    assert_eq!(v.len(), m.rows(), "length mismatch in row_times");
    (0..m.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(Rat::zero(), |acc, (i, vi)| acc + vi * &m[(i, j)])
        })
        .collect()
}

/// Exact rank by fraction-free (Bareiss) elimination on an integer scaling
/// of the matrix. Row scaling does not change rank, so each row is cleared
/// of denominators independently. Deterministic: the pivot is always the
/// first nonzero entry in the current column.
pub fn rat_rank(m: &RMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let ints: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| scale_row(m.row(i))).collect();
    bareiss_rank(ints)
}

fn scale_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    row.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

fn exact_div(n: BigInt, d: &BigInt) -> BigInt {
    debug_assert!(!d.is_zero());
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "Bareiss division left a remainder");
    q
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        for i in pivot_row + 1..rows {
            for j in c + 1..cols {
                let t = &m[pivot_row][c] * &m[i][j] - &m[i][c] * &m[pivot_row][j];
                m[i][j] = exact_div(t, &prev);
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[pivot_row][c].clone();
        pivot_row += 1;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form. Returns the reduced matrix together with the
/// pivot column indices, in order.
pub fn rref(m: &RMatrix) -> (RMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                let cur = a[(r, j)].clone();
                a.set(p, j, cur);
                a.set(r, j, tmp);
            }
        }
        let inv = a[(r, c)].clone();
        for j in c..cols {
            let v = a[(r, j)].clone() / inv.clone();
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let factor = a[(i, c)].clone();
                for j in c..cols {
                    let v = a[(i, j)].clone() - &factor * &a[(r, j)];
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the left nullspace `{ v : v m = 0 }`, returned as the rows of a
/// `k x m.rows()` matrix (`k` may be zero). The basis comes from the reduced
/// echelon form of `mᵀ`, so it is deterministic.
pub fn left_nullspace(m: &RMatrix) -> RMatrix {
    let t = m.transpose();
    let (re, pivots) = rref(&t);
    let n = t.cols(); // dimension of the candidate v
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut basis = RMatrix::zeros(free.len(), n);
    for (k, &fcol) in free.iter().enumerate() {
        basis.set(k, fcol, Rat::one());
        for (r, &pcol) in pivots.iter().enumerate() {
            let v = -re[(r, fcol)].clone();
            basis.set(k, pcol, v);
        }
    }
    basis
}

/// Solves `a x = b` exactly for the matrix `x`, with free variables set to
/// zero. Returns `None` when the system is inconsistent.
pub fn solve(a: &RMatrix, b: &RMatrix) -> Option<RMatrix> {
    assert_eq!(a.rows(), b.rows(), "row mismatch in solve");
    let aug = a.hstack(b);
    let (re, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    let mut x = RMatrix::zeros(a.cols(), b.cols());
    for (r, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, re[(r, a.cols() + j)].clone());
        }
    }
    Some(x)
}
