//! Dense matrices over exact cyclotomic scalars.
//!
//! Everything here is exact: products and determinants come out in
//! canonical form, `inverse` performs Gauss–Jordan elimination with exact
//! field division, and the recognisers (`as_scaled_permutation`,
//! `conjugate_column_pairing`) decide their questions by canonical-form
//! equality rather than numerically.

use crate::cyclo::Cyclotomic;
use std::fmt;
use thiserror::Error;

/// Errors from matrix construction and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("data length {len} does not fill a {rows}x{cols} matrix")]
    DataShape { rows: usize, cols: usize, len: usize },
    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("no column equals the conjugate of column {col}")]
    MissingConjugateColumn { col: usize },
    #[error("conjugate pairing for column {col} is ambiguous (duplicate columns)")]
    AmbiguousConjugatePairing { col: usize },
}

/// A scaled permutation matrix: `scale`·Π with Π\[i\]\[permutation\[i\]\] = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPermutation {
    pub scale: Cyclotomic,
    pub permutation: Vec<usize>,
}

/// A dense row-major matrix of exact cyclotomic numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Cyclotomic>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DataShape { rows, cols, len: data.len() });
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LinalgError::DataShape { rows: nrows, cols: ncols, len: bad.len() });
        }
        Ok(ExactMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
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

    pub fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Cyclotomic) {
        self.data[i * self.cols + j] = value;
    }

    /// Row `i` as a contiguous slice.
    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ExactMatrix {
        self.map(Cyclotomic::conj)
    }

    /// Conjugate transpose (Hermitian adjoint).
    pub fn conj_transpose(&self) -> ExactMatrix {
        self.conj().transpose()
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> ExactMatrix {
        self.map(|x| x * c)
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                data.push(Cyclotomic::dot(
                    (0..self.cols).map(|k| (self.at(i, k), other.at(k, j))),
                ));
            }
        }
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// True when M·M† is the identity.
    pub fn is_unitary(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        self.mul(&self.conj_transpose()).map(|p| p.is_identity()).unwrap_or(false)
    }

    /// Determinant by exact Gaussian elimination.
    ///
    /// # Errors
    /// [`LinalgError::NotSquare`] for non-square input.
    pub fn determinant(&self) -> Result<Cyclotomic, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut work = self.data.clone();
        let entry = |w: &Vec<Cyclotomic>, i: usize, j: usize| w[i * n + j].clone();
        let mut det = Cyclotomic::one();
        for k in 0..n {
            let Some(pivot_row) = (k..n).find(|&r| !work[r * n + k].is_zero()) else {
                return Ok(Cyclotomic::zero());
            };
            if pivot_row != k {
                for j in 0..n {
                    work.swap(k * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = entry(&work, k, k);
            det = &det * &pivot;
            let pinv = pivot.inv().expect("pivot chosen nonzero");
            for r in k + 1..n {
                let factor = &entry(&work, r, k) * &pinv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let delta = &factor * &entry(&work, k, j);
                    work[r * n + j] = &work[r * n + j] - &delta;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    ///
    /// # Errors
    /// [`LinalgError::NotSquare`] for non-square input,
    /// [`LinalgError::Singular`] when no inverse exists.
    pub fn inverse(&self) -> Result<ExactMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut left = self.clone();
        let mut right = ExactMatrix::identity(n);
        for k in 0..n {
            let Some(pivot_row) = (k..n).find(|&r| !left.at(r, k).is_zero()) else {
                return Err(LinalgError::Singular);
            };
            if pivot_row != k {
                for j in 0..n {
                    left.data.swap(k * n + j, pivot_row * n + j);
                    right.data.swap(k * n + j, pivot_row * n + j);
                }
            }
            let pinv = left.at(k, k).inv().expect("pivot chosen nonzero");
            for j in 0..n {
                left.set(k, j, left.at(k, j) * &pinv);
                right.set(k, j, right.at(k, j) * &pinv);
            }
            for r in 0..n {
                if r == k || left.at(r, k).is_zero() {
                    continue;
                }
                let factor = left.at(r, k).clone();
                for j in 0..n {
                    let dl = &factor * left.at(k, j);
                    let dr = &factor * right.at(k, j);
                    left.set(r, j, left.at(r, j) - &dl);
                    right.set(r, j, right.at(r, j) - &dr);
                }
            }
        }
        Ok(right)
    }

    /// Recognises `scale`·Π for a permutation matrix Π: every row holds a
    /// single nonzero entry, all nonzero entries are equal, and the nonzero
    /// columns are a permutation.  Returns `None` when the matrix has no
    /// such shape.
    pub fn as_scaled_permutation(&self) -> Option<ScaledPermutation> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut permutation = vec![0usize; n];
        let mut used = vec![false; n];
        let mut scale: Option<&Cyclotomic> = None;
        for (i, image) in permutation.iter_mut().enumerate() {
            let mut nonzero = None;
            for j in 0..n {
                if !self.at(i, j).is_zero() {
                    if nonzero.is_some() {
                        return None;
                    }
                    nonzero = Some(j);
                }
            }
            let j = nonzero?;
            match scale {
                None => scale = Some(self.at(i, j)),
                Some(c) if c == self.at(i, j) => {}
                Some(_) => return None,
            }
            if used[j] {
                return None;
            }
            used[j] = true;
            *image = j;
        }
        Some(ScaledPermutation { scale: scale?.clone(), permutation })
    }

    /// Finds the permutation σ with conj(column j) = column σ(j) for every
    /// j, by exact column comparison.
    ///
    /// # Errors
    /// [`LinalgError::MissingConjugateColumn`] when some conjugated column
    /// matches no column, [`LinalgError::AmbiguousConjugatePairing`] when a
    /// conjugated column matches several (duplicate columns) or the map
    /// fails to be a bijection.
    pub fn conjugate_column_pairing(&self) -> Result<Vec<usize>, LinalgError> {
        let columns: Vec<Vec<Cyclotomic>> = (0..self.cols).map(|j| self.column(j)).collect();
        let mut pairing = Vec::with_capacity(self.cols);
        for (j, col) in columns.iter().enumerate() {
            let target: Vec<Cyclotomic> = col.iter().map(Cyclotomic::conj).collect();
            let mut matches = columns.iter().enumerate().filter(|(_, c)| **c == target);
            let Some((k, _)) = matches.next() else {
                return Err(LinalgError::MissingConjugateColumn { col: j });
            };
            if matches.next().is_some() {
                return Err(LinalgError::AmbiguousConjugatePairing { col: j });
            }
            pairing.push(k);
        }
        let mut seen = vec![false; self.cols];
        for (j, &k) in pairing.iter().enumerate() {
            if seen[k] {
                return Err(LinalgError::AmbiguousConjugatePairing { col: j });
            }
            seen[k] = true;
        }
        Ok(pairing)
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        self.at(i, j)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Cyclotomic::to_string).collect();
            writeln!(f, "{}", line.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(v)
    }

    fn rat(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn zeta(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn m(rows: Vec<Vec<Cyclotomic>>) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let a = m(vec![vec![int(1), zeta(3, 1)], vec![rat(1, 2), int(-4)]]);
        let e = ExactMatrix::identity(2);
        assert_eq!(a.mul(&e).unwrap(), a);
        assert_eq!(e.mul(&a).unwrap(), a);
    }

    #[test]
    fn two_by_two_determinant() {
        let a = m(vec![vec![int(1), int(2)], vec![int(3), int(4)]]);
        assert_eq!(a.determinant().unwrap(), int(-2));
        let singular = m(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(singular.determinant().unwrap().is_zero());
    }

    #[test]
    fn determinant_with_row_swap_needed() {
        let a = m(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(a.determinant().unwrap(), int(-1));
    }

    #[test]
    fn inverse_round_trips() {
        let a = m(vec![
            vec![int(2), int(1), int(0)],
            vec![int(1), zeta(4, 1), int(1)],
            vec![int(0), int(1), int(2)],
        ]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = m(vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        assert_eq!(a.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn hadamard_scaled_is_unitary_and_symmetric() {
        let inv_sqrt2 = Cyclotomic::sqrt_nonneg_rational(
            &BigRational::new(BigInt::from(1), BigInt::from(2)),
        )
        .unwrap();
        let h = m(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]).scale(&inv_sqrt2);
        assert!(h.is_unitary());
        assert!(h.is_symmetric());
        assert!(!m(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]).is_unitary());
    }

    #[test]
    fn scaled_permutation_recognition() {
        let swap3 = m(vec![vec![int(0), int(3)], vec![int(3), int(0)]]);
        let got = swap3.as_scaled_permutation().unwrap();
        assert_eq!(got.scale, int(3));
        assert_eq!(got.permutation, vec![1, 0]);

        let mixed = m(vec![vec![int(0), int(3)], vec![int(2), int(0)]]);
        assert!(mixed.as_scaled_permutation().is_none());
        let dense = m(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        assert!(dense.as_scaled_permutation().is_none());
    }

    #[test]
    fn conjugate_columns_of_cube_root_character_table() {
        let p = m(vec![
            vec![int(1), int(1), int(1)],
            vec![int(1), zeta(3, 1), zeta(3, 2)],
            vec![int(1), zeta(3, 2), zeta(3, 1)],
        ]);
        assert_eq!(p.conjugate_column_pairing().unwrap(), vec![0, 2, 1]);
    }

    #[test]
    fn conjugate_pairing_failures_are_reported() {
        let no_partner = m(vec![vec![zeta(4, 1), int(1)], vec![int(1), int(2)]]);
        assert!(matches!(
            no_partner.conjugate_column_pairing(),
            Err(LinalgError::MissingConjugateColumn { .. })
        ));
        let duplicated = m(vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert!(matches!(
            duplicated.conjugate_column_pairing(),
            Err(LinalgError::AmbiguousConjugatePairing { .. })
        ));
    }

    #[test]
    fn shape_errors_carry_both_shapes() {
        let a = ExactMatrix::zeros(2, 3);
        let b = ExactMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(LinalgError::ShapeMismatch { .. })));
        assert!(a.add(&b).is_ok());
        assert!(matches!(
            ExactMatrix::new(2, 2, vec![Cyclotomic::zero(); 3]),
            Err(LinalgError::DataShape { .. })
        ));
        assert!(matches!(
            ExactMatrix::zeros(2, 3).determinant(),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn product_respects_associativity_on_sample() {
        let a = m(vec![vec![int(1), zeta(5, 1)], vec![int(0), int(2)]]);
        let b = m(vec![vec![zeta(5, 2), int(1)], vec![int(3), zeta(4, 1)]]);
        let c = m(vec![vec![int(1), int(1)], vec![zeta(3, 1), int(0)]]);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}
