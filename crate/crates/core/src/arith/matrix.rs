//! Dense matrices over [`Scalar`], plus the complex double-precision shadow.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// Row-major dense matrix over ℚ(i). Serialized as an array of rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (k, x) in d.iter().enumerate() {
            m[(k, k)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
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

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("subtraction of different shapes".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &f);
                    inv.add_row_multiple(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Exact determinant (fraction-free is unnecessary over a field).
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            let pinv = p.inv()?;
            for r in col + 1..n {
                if !a[(r, col)].is_zero() {
                    let f = &a[(r, col)] * &pinv;
                    a.add_row_multiple(r, col, &f);
                }
            }
        }
        Ok(det)
    }

    /// Leading principal minors, exact.
    pub fn leading_minors(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::Shape("minors of non-square matrix".into()));
        }
        (1..=self.rows)
            .map(|k| self.submatrix(k, k).determinant())
            .collect()
    }

    fn submatrix(&self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Rank via row echelon form.
    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn row_echelon(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = a[(row, col)].inv().expect("nonzero pivot");
            a.scale_row(row, &inv);
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    /// Basis of the right null space {x : A x = 0}, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = self.row_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&rref[(r, f)];
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            self[(r, c)] *= s;
        }
    }

    /// row[target] -= f * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, f: &Scalar) {
        for c in 0..self.cols {
            let d = f * &self[(source, c)];
            self[(target, c)] -= &d;
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    /// Float shadow of this matrix.
    pub fn to_f64(&self) -> FMatrix {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// True iff `a` is Hermitian and every leading principal minor is strictly
/// positive (exact rational minors).
pub fn is_hermitian_positive(a: &Matrix) -> bool {
    first_nonpositive_minor(a).is_none() && a.is_hermitian()
}

/// Index (1-based size) and value of the first leading minor that is not
/// strictly positive, if any.
pub fn first_nonpositive_minor(a: &Matrix) -> Option<(usize, Scalar)> {
    let minors = a.leading_minors().ok()?;
    minors
        .into_iter()
        .enumerate()
        .find(|(_, m)| !m.is_positive_real())
        .map(|(k, m)| (k + 1, m))
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Complex double-precision matrix used by the numeric oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FMatrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(FMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = FMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn mul(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                for c in 0..other.cols {
                    out[(r, c)] += self[(r, k)] * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss–Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<FMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = FMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .ok_or(Error::Singular)?;
            if a[(pivot, col)].norm() < 1e-300 {
                return Err(Error::Singular);
            }
            for c in 0..n {
                a.entries.swap(col * n + c, pivot * n + c);
                inv.entries.swap(col * n + c, pivot * n + c);
            }
            let p = a[(col, col)].inv();
            for c in 0..n {
                a[(col, c)] *= p;
                inv[(col, c)] *= p;
            }
            for r in 0..n {
                if r != col {
                    let f = a[(r, col)];
                    for c in 0..n {
                        let (x, y) = (a[(col, c)], inv[(col, c)]);
                        a[(r, c)] -= f * x;
                        inv[(r, c)] -= f * y;
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &FMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for FMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn identity_products() {
        let i2 = Matrix::identity(2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.mul(&swap).unwrap(), i2);
    }

    #[test]
    fn shape_mismatch() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Shape(_))));
        assert!(a.inverse().is_err());
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
        let d = Matrix::diag(&[q(2, 1), q(1, 2)]);
        assert_eq!(d.inverse().unwrap(), Matrix::diag(&[q(1, 2), q(2, 1)]));
        let sing = Matrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn hermitian_positive() {
        assert!(is_hermitian_positive(&Matrix::identity(2)));
        let indef = Matrix::from_ints(&[&[1, 2], &[2, 1]]).unwrap();
        assert!(!is_hermitian_positive(&indef));
        assert_eq!(
            first_nonpositive_minor(&indef),
            Some((2, Scalar::from_int(-3)))
        );
        // Hermitian with complex off-diagonal
        let h = Matrix::from_rows(vec![
            vec![q(2, 1), Scalar::complex((0, 1), (1, 1))],
            vec![Scalar::complex((0, 1), (-1, 1)), q(2, 1)],
        ])
        .unwrap();
        assert!(is_hermitian_positive(&h));
        // positive minors but not Hermitian
        let nh = Matrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(!is_hermitian_positive(&nh));
    }

    #[test]
    fn null_space_and_rank() {
        let a = Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
        let ns = a.null_space();
        assert_eq!(ns.len(), 1);
        let v = Matrix::from_rows(ns[0].iter().map(|x| vec![x.clone()]).collect()).unwrap();
        assert_eq!(a.mul(&v).unwrap(), Matrix::zeros(2, 1));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-9i64..10, 1i64..5, -9i64..10, 1i64..5), n * n).prop_map(
            move |v| {
                let rows = v
                    .chunks(n)
                    .map(|row| {
                        row.iter()
                            .map(|&(a, b, c, d)| Scalar::complex((a, b), (c, d)))
                            .collect()
                    })
                    .collect();
                Matrix::from_rows(rows).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn product_matches_float_shadow(a in small_matrix(3), b in small_matrix(3)) {
            let exact = a.mul(&b).unwrap().to_f64();
            let float = a.to_f64().mul(&b.to_f64()).unwrap();
            prop_assert!(exact.max_abs_diff(&float) < 1e-12 * 100.0);
        }

        #[test]
        fn transpose_reverses_products(a in small_matrix(3), b in small_matrix(3)) {
            let lhs = a.mul(&b).unwrap().transpose();
            let rhs = b.transpose().mul(&a.transpose()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn inverse_is_exact(a in small_matrix(4)) {
            if let Ok(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
                prop_assert_eq!(inv.inverse().unwrap(), a.clone());
                let f = a.to_f64().inverse().unwrap();
                let scale = 1.0 + f.max_abs_diff(&FMatrix::zeros(4, 4));
                prop_assert!(inv.to_f64().max_abs_diff(&f) < 1e-10 * scale);
            } else {
                prop_assert!(a.determinant().unwrap().is_zero());
            }
        }
    }
}
