//! Dense matrices over an exact scalar.
//!
//! The type is generic so the same plumbing serves integer matrices (grams,
//! isometries, Smith transforms) and rational ones (dual bases, solving);
//! the crate root fixes the concrete aliases [`crate::IntMat`] and
//! [`crate::RatMat`]. Algorithms that need division live on those aliases.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::{Error, Int, Rat, Result};

/// Scalar bound for the generic matrix shell: an exact commutative ring.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Add<Output = T>
        + Mul<Output = T>
{
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::new(r, c, rows.into_iter().flatten().collect())
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shapes");
        let mut out = Mat::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.clone() * rhs[(k, j)].clone();
                    let cur = out[(i, j)].clone();
                    out[(i, j)] = cur + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec shapes");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Mat::new(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    /// Block-diagonal sum: `self ⊕ rhs`.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let mut out = Mat::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    pub(crate) fn row_addmul(&mut self, a: usize, b: usize, q: &T) {
        for j in 0..self.cols {
            let t = self[(b, j)].clone() * q.clone();
            let cur = self[(a, j)].clone();
            self[(a, j)] = cur + t;
        }
    }

    /// col[a] += q * col[b]
    pub(crate) fn col_addmul(&mut self, a: usize, b: usize, q: &T) {
        for i in 0..self.rows {
            let t = self[(i, b)].clone() * q.clone();
            let cur = self[(i, a)].clone();
            self[(i, a)] = cur + t;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let cur = self[(i, j)].clone();
            self[(i, j)] = -cur;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let cur = self[(i, j)].clone();
            self[(i, j)] = -cur;
        }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Mat<Int> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> Mat<Rat> {
        self.map(|x| Rat::from_integer(x.clone()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn bareiss_det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                // pivot search below row k
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    // exact by the Bareiss identity
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// True when every entry is even.
    pub fn all_even(&self) -> bool {
        self.data.iter().all(|x| x.is_even())
    }
}

impl Mat<Rat> {
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Result<Mat<Int>> {
        if !self.is_integral() {
            return Err(Error::InvalidInput(
                "matrix has non-integer entries".into(),
            ));
        }
        Ok(self.map(|x| x.to_integer()))
    }

    /// Least common multiple of all entry denominators.
    pub fn denom_lcm(&self) -> Int {
        let mut l = Int::one();
        for x in &self.data {
            l = l.lcm(x.denom());
        }
        l
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Mat<Rat>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<Rat>::identity(n);
        for col in 0..n {
            // partial pivot: any nonzero entry works over Q; take the first
            let pivot_row = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            a.swap_rows(pivot_row, col);
            inv.swap_rows(pivot_row, col);
            let p = a[(col, col)].clone();
            for j in 0..n {
                let t = a[(col, j)].clone() / p.clone();
                a[(col, j)] = t;
                let t = inv[(col, j)].clone() / p.clone();
                inv[(col, j)] = t;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let t = a[(i, j)].clone() - f.clone() * a[(col, j)].clone();
                    a[(i, j)] = t;
                    let t = inv[(i, j)].clone() - f.clone() * inv[(col, j)].clone();
                    inv[(i, j)] = t;
                }
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` exactly; `None` when the system is singular.
    pub fn solve_vec(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert!(self.is_square());
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot_row = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            a.swap_rows(pivot_row, col);
            rhs.swap(pivot_row, col);
            let p = a[(col, col)].clone();
            for j in col..n {
                let t = a[(col, j)].clone() / p.clone();
                a[(col, j)] = t;
            }
            let t = rhs[col].clone() / p;
            rhs[col] = t;
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in col..n {
                    let t = a[(i, j)].clone() - f.clone() * a[(col, j)].clone();
                    a[(i, j)] = t;
                }
                let t = rhs[i].clone() - f * rhs[col].clone();
                rhs[i] = t;
            }
        }
        Some(rhs)
    }

    /// Signature `(n_plus, n_minus)` of a symmetric nondegenerate matrix, by
    /// exact congruence diagonalization over Q.
    pub fn symmetric_signature(&self) -> Result<(usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::InvalidInput("matrix not symmetric".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let (mut plus, mut minus) = (0usize, 0usize);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                // bring a nonzero diagonal entry to position k, or synthesize
                // one from an off-diagonal entry (characteristic-zero trick)
                if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                    a.swap_rows(i, k);
                    a.swap_cols(i, k);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero())
                {
                    let one = Rat::one();
                    a.row_addmul(i, j, &one);
                    a.col_addmul(i, j, &one); // a[(i,i)] = 2*a[(i,j)] != 0
                    a.swap_rows(i, k);
                    a.swap_cols(i, k);
                } else {
                    return Err(Error::DegenerateLattice);
                }
            }
            let p = a[(k, k)].clone();
            if p.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = -(a[(i, k)].clone() / p.clone());
                a.row_addmul(i, k, &f);
                a.col_addmul(i, k, &f);
            }
        }
        Ok((plus, minus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn matmul_identity() {
        let m = IntTest::sample();
        assert_eq!(m.mul(&Mat::identity(3)), m);
        assert_eq!(Mat::identity(3).mul(&m), m);
    }

    struct IntTest;
    impl IntTest {
        fn sample() -> Mat<Int> {
            Mat::from_i64_rows(&[&[1, 2, 3], &[0, -1, 4], &[2, 2, 2]])
        }
    }

    #[test]
    fn bareiss_matches_cofactor_3x3() {
        let m = IntTest::sample();
        // cofactor expansion by hand: 1*(-2-8) - 2*(0-8) + 3*(0+2) = 12
        assert_eq!(m.bareiss_det(), int(12));
    }

    #[test]
    fn bareiss_singular() {
        let m = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.bareiss_det(), int(0));
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let m = IntTest::sample().to_rat();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn signature_diag() {
        let m = Mat::from_i64_rows(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, -4]]).to_rat();
        assert_eq!(m.symmetric_signature().unwrap(), (1, 2));
    }

    #[test]
    fn signature_hyperbolic_block() {
        // [[0,2],[2,0]] has eigenvalues ±2
        let m = Mat::from_i64_rows(&[&[0, 2], &[2, 0]]).to_rat();
        assert_eq!(m.symmetric_signature().unwrap(), (1, 1));
    }
}
