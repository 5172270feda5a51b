//! Dense exact rational matrices. Small sizes only (metric, GL samples,
//! structure-constant solves).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num::traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{int, ratio, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self {
            rows,
            cols,
            data: values.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let t = &factor * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - &t;
                    let t = &factor * &inv[(col, j)];
                    inv[(r, j)] = &inv[(r, j)] - &t;
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &p;
                for j in col..n {
                    let t = &factor * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Solves `self * x = b` for one solution `x`, or `None` when the system
    /// is inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let (rows, cols) = (self.rows, self.cols);
        let mut aug = Self::from_fn(rows, cols + 1, |i, j| {
            if j < cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !aug[(i, c)].is_zero()) else {
                continue;
            };
            aug.swap_rows(p, r);
            let pv = aug[(r, c)].clone();
            for j in 0..=cols {
                aug[(r, j)] = &aug[(r, j)] / &pv;
            }
            for i in 0..rows {
                if i != r && !aug[(i, c)].is_zero() {
                    let f = aug[(i, c)].clone();
                    for j in 0..=cols {
                        let t = &f * &aug[(r, j)];
                        aug[(i, j)] = &aug[(i, j)] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        if (r..rows).any(|i| !aug[(i, cols)].is_zero()) {
            return None;
        }
        let mut x = vec![Rational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[(i, cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Random matrix with entries `p/q`, `|p| <= 4`, `1 <= q <= 3`, redrawn
    /// until invertible.
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::from_fn(n, n, |_, _| ratio(rng.random_range(-4..=4), rng.random_range(1..=3)));
            if !m.determinant().expect("square").is_zero() {
                return m;
            }
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes");
        RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, k| acc + &self[(i, k)] * &rhs[(k, j)])
        })
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..5 {
            let m = RatMatrix::random_invertible(n, &mut rng);
            let inv = m.inverse().unwrap();
            assert_eq!(&m * &inv, RatMatrix::identity(n));
            assert_eq!(&inv * &m, RatMatrix::identity(n));
        }
    }

    #[test]
    fn singular_is_rejected() {
        let m = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn determinant_of_permutation_matrix() {
        let m = RatMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(m.determinant().unwrap(), int(-1));
    }

    #[test]
    fn solve_underdetermined_and_inconsistent() {
        let a = RatMatrix::from_i64(1, 2, &[1, 1]);
        let x = a.solve(&[int(3)]).unwrap();
        assert_eq!(&x[0] + &x[1], int(3));
        let b = RatMatrix::from_i64(2, 1, &[1, 1]);
        assert!(b.solve(&[int(1), int(2)]).is_none());
    }
}
