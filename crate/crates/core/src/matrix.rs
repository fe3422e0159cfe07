//! Dense matrices over a ring.

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::poly::{Field, Poly, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = acc + a.clone() * b.clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Characteristic polynomial `det(xI - A)` by the division-free
    /// Berkowitz algorithm.
    pub fn charpoly(&self) -> Poly<T> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        // vector of coefficients, leading first
        let mut c: Vec<T> = vec![T::one(), -self[(0, 0)].clone()];
        for r in 1..n {
            // A = [[M, col], [row, a]] with M the leading r x r block
            let a = self[(r, r)].clone();
            let col: Vec<T> = (0..r).map(|i| self[(i, r)].clone()).collect();
            let row: Vec<T> = (0..r).map(|j| self[(r, j)].clone()).collect();
            // powers: row * M^k * col for k = 0..r-1
            let mut q = vec![T::one(), -a];
            let mut v = col;
            for _ in 0..r {
                let mut s = T::zero();
                for (x, y) in row.iter().zip(&v) {
                    s = s + x.clone() * y.clone();
                }
                q.push(-s);
                let mut nv = vec![T::zero(); r];
                for (i, slot) in nv.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (j, vj) in v.iter().enumerate() {
                        acc = acc + self[(i, j)].clone() * vj.clone();
                    }
                    *slot = acc;
                }
                v = nv;
            }
            // Toeplitz product: new c = T * c where T is lower triangular built from q
            let len = r + 2;
            let mut nc = vec![T::zero(); len];
            for (i, slot) in nc.iter_mut().enumerate() {
                let mut acc = T::zero();
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < q.len() {
                        acc = acc + q[i - j].clone() * cj.clone();
                    }
                }
                *slot = acc;
            }
            c = nc;
        }
        c.reverse();
        Poly::new(c)
    }
}

impl<T: Field> Matrix<T> {
    /// Solves `A x = b`, returning `None` when `A` is singular.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = b.to_vec();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                b.swap(piv, col);
            }
            let inv = T::one() / a[(col, col)].clone();
            for r in col + 1..n {
                let f = a[(r, col)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    a[(r, j)] = v;
                }
                b[r] = b[r].clone() - f * b[col].clone();
            }
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut s = b[i].clone();
            for j in i + 1..n {
                s = s - a[(i, j)].clone() * x[j].clone();
            }
            x[i] = s / a[(i, i)].clone();
        }
        Some(x)
    }
}

impl Matrix<BigInt> {
    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: Self) -> Matrix<T> {
        assert_eq!(self.cols, o.rows);
        let mut m: Matrix<T> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = m[(i, j)].clone() + a.clone() * o[(k, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn bareiss_det() {
        let m = im(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), BigInt::from(4));
        let s = im(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.det(), BigInt::from(-1));
        let z = im(&[&[1, 2], &[2, 4]]);
        assert_eq!(z.det(), BigInt::zero());
    }

    #[test]
    fn berkowitz_companion() {
        // companion of x^3 - 2x^2 - x + 2
        let m = im(&[&[2, 1, -2], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(m.charpoly(), Poly::from_i64s(&[2, -1, -2, 1]));
    }

    #[test]
    fn charpoly_matches_det_at_points() {
        let m = im(&[&[1, 2, 3, 0], &[-1, 0, 4, 2], &[5, 1, -2, 1], &[0, 3, 1, 1]]);
        let cp = m.charpoly();
        for t in -3i64..=3 {
            let mut s = m.clone();
            for i in 0..4 {
                for j in 0..4 {
                    s[(i, j)] = -s[(i, j)].clone() + if i == j { BigInt::from(t) } else { BigInt::zero() };
                }
            }
            assert_eq!(cp.eval(&BigInt::from(t)), s.det());
        }
    }

    #[test]
    fn rational_solve() {
        let m = im(&[&[2, 1], &[1, 3]]).to_rational();
        let b = vec![BigRational::from_integer(3.into()), BigRational::from_integer(5.into())];
        let x = m.solve(&b).unwrap();
        assert_eq!(x[0], BigRational::new(4.into(), 5.into()));
        assert_eq!(x[1], BigRational::new(7.into(), 5.into()));
    }
}
