//! Two-step rescaling between the three presentations of a Fourier
//! matrix.
//!
//! Starting from a unitary candidate `S` (positive first column), dividing
//! each row by its first entry yields the `s`-matrix (first column all
//! ones), and multiplying each column of `s` by its first entry yields the
//! `P`-matrix (first row holds the degrees, first column all ones).  The
//! inverse direction divides each `P` column by the exact square root of
//! its first entry and then divides each `s` row by the square root of its
//! norm d_i = Σ_j |s_ij|².
//!
//! [`FourierTriple`] bundles all three matrices together with the degrees
//! δ_j = s₀ⱼ², the norms d_i, the order d₀ = Σ_j δ_j, and the conjugation
//! involution on columns.  Construction enforces the structural
//! preconditions exactly and reports precise errors; deeper axiom checks
//! (unitarity, integrality) are a separate concern.

use crate::cyclo::{Cyclotomic, CycloError, Sign};
use crate::linalg::{ExactMatrix, LinalgError};
use thiserror::Error;

/// Errors from assembling a [`FourierTriple`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RescaleError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("first-column entry in row {row} is not a positive real")]
    NonpositiveFirstColumn { row: usize },
    #[error("degree at index {index} is not a positive real")]
    NonpositiveDegree { index: usize },
    #[error("columns are not closed under conjugation: {0}")]
    NotClosedUnderConjugation(LinalgError),
    #[error("degree at index {index} is irrational; exact square root unavailable")]
    IrrationalDegree { index: usize },
    #[error("norm at index {index} is irrational; exact square root unavailable")]
    IrrationalNorm { index: usize },
    #[error("first column must be all ones; row {row} differs")]
    FirstColumnNotOnes { row: usize },
    #[error("sign determination failed: {0}")]
    Undecidable(CycloError),
}

/// A validated bundle of the three matrix forms and their numeric data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierTriple {
    fourier: ExactMatrix,
    s_matrix: ExactMatrix,
    p_matrix: ExactMatrix,
    degrees: Vec<Cyclotomic>,
    norms: Vec<Cyclotomic>,
    order: Cyclotomic,
    involution: Vec<usize>,
}

/// True when the value is real and strictly positive; propagates only a
/// precision-cap failure, mapping "not real" to false.
fn is_positive_real(x: &Cyclotomic) -> Result<bool, RescaleError> {
    match x.sign_real() {
        Ok(Sign::Positive) => Ok(true),
        Ok(_) | Err(CycloError::NotReal) => Ok(false),
        Err(e) => Err(RescaleError::Undecidable(e)),
    }
}

fn require_square(m: &ExactMatrix) -> Result<usize, RescaleError> {
    if !m.is_square() {
        return Err(RescaleError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(m.rows())
}

/// d_i = Σ_j |s_ij|² for each row of the `s`-matrix.
fn row_norms(s: &ExactMatrix) -> Vec<Cyclotomic> {
    (0..s.rows())
        .map(|i| {
            let conjugates: Vec<Cyclotomic> = s.row(i).iter().map(Cyclotomic::conj).collect();
            Cyclotomic::dot(s.row(i).iter().zip(conjugates.iter()))
        })
        .collect()
}

impl FourierTriple {
    /// Rescales a candidate Fourier matrix `S`: divides each row by its
    /// first entry (giving `s`) and multiplies each `s`-column by its
    /// first entry (giving `P`).
    ///
    /// Requires every first-column entry and every first-row entry of `s`
    /// to be a positive real, and the columns of `S` to be closed under
    /// conjugation; unitarity and integrality are deliberately not
    /// checked here.
    pub fn from_fourier(fourier: &ExactMatrix) -> Result<Self, RescaleError> {
        let r = require_square(fourier)?;
        let mut s_rows = Vec::with_capacity(r);
        for i in 0..r {
            if !is_positive_real(fourier.at(i, 0))? {
                return Err(RescaleError::NonpositiveFirstColumn { row: i });
            }
            let inv = fourier.at(i, 0).inv().expect("positive entry is nonzero");
            s_rows.push(fourier.row(i).iter().map(|x| x * &inv).collect::<Vec<_>>());
        }
        let s_matrix = ExactMatrix::from_rows(s_rows).expect("rows built square");
        for j in 0..r {
            if !is_positive_real(s_matrix.at(0, j))? {
                return Err(RescaleError::NonpositiveDegree { index: j });
            }
        }
        let involution = fourier
            .conjugate_column_pairing()
            .map_err(RescaleError::NotClosedUnderConjugation)?;
        Ok(Self::assemble(fourier.clone(), s_matrix, involution))
    }

    /// Rescales an `s`-matrix (first column all ones, first row positive
    /// real) up to `P` and down to `S`.  Rebuilding `S` divides row `i` by
    /// √d_i, so every norm d_i must be rational.
    pub fn from_s_matrix(s_matrix: &ExactMatrix) -> Result<Self, RescaleError> {
        let r = require_square(s_matrix)?;
        for i in 0..r {
            if !s_matrix.at(i, 0).is_one() {
                return Err(RescaleError::FirstColumnNotOnes { row: i });
            }
        }
        for j in 0..r {
            if !is_positive_real(s_matrix.at(0, j))? {
                return Err(RescaleError::NonpositiveDegree { index: j });
            }
        }
        let norms = row_norms(s_matrix);
        let mut fourier_rows = Vec::with_capacity(r);
        for (i, norm) in norms.iter().enumerate() {
            let d = norm
                .as_rational()
                .ok_or(RescaleError::IrrationalNorm { index: i })?;
            let root =
                Cyclotomic::sqrt_nonneg_rational(&d).expect("row norm is a sum of squares");
            let inv = root.inv().expect("row norm is at least one");
            fourier_rows.push(s_matrix.row(i).iter().map(|x| x * &inv).collect::<Vec<_>>());
        }
        let fourier = ExactMatrix::from_rows(fourier_rows).expect("rows built square");
        let involution = fourier
            .conjugate_column_pairing()
            .map_err(RescaleError::NotClosedUnderConjugation)?;
        Ok(Self::assemble(fourier, s_matrix.clone(), involution))
    }

    /// Reverses the rescaling from a `P`-matrix: divides each column by
    /// the exact square root of its first entry (the degree), then each
    /// row by the square root of its norm.  Degrees and norms must be
    /// rational for the exact square roots to exist.
    pub fn from_p_matrix(p_matrix: &ExactMatrix) -> Result<Self, RescaleError> {
        let r = require_square(p_matrix)?;
        for i in 0..r {
            if !p_matrix.at(i, 0).is_one() {
                return Err(RescaleError::FirstColumnNotOnes { row: i });
            }
        }
        let mut column_divisors = Vec::with_capacity(r);
        for j in 0..r {
            let degree = p_matrix
                .at(0, j)
                .as_rational()
                .ok_or(RescaleError::IrrationalDegree { index: j })?;
            if !is_positive_real(p_matrix.at(0, j))? {
                return Err(RescaleError::NonpositiveDegree { index: j });
            }
            let root = Cyclotomic::sqrt_nonneg_rational(&degree)
                .expect("positivity checked above");
            column_divisors.push(root.inv().expect("positive degree is nonzero"));
        }
        let mut s_rows = Vec::with_capacity(r);
        for i in 0..r {
            s_rows.push(
                (0..r)
                    .map(|j| p_matrix.at(i, j) * &column_divisors[j])
                    .collect::<Vec<_>>(),
            );
        }
        let s_matrix = ExactMatrix::from_rows(s_rows).expect("rows built square");
        Self::from_s_matrix(&s_matrix)
    }

    fn assemble(
        fourier: ExactMatrix,
        s_matrix: ExactMatrix,
        involution: Vec<usize>,
    ) -> FourierTriple {
        let r = s_matrix.rows();
        let degrees: Vec<Cyclotomic> =
            (0..r).map(|j| s_matrix.at(0, j) * s_matrix.at(0, j)).collect();
        let norms = row_norms(&s_matrix);
        let order = degrees.iter().fold(Cyclotomic::zero(), |acc, d| &acc + d);
        let mut p_matrix = ExactMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                p_matrix.set(i, j, s_matrix.at(i, j) * s_matrix.at(0, j));
            }
        }
        debug_assert_eq!(&order, &norms[0], "order must equal the principal norm");
        FourierTriple { fourier, s_matrix, p_matrix, degrees, norms, order, involution }
    }

    /// The unitary-form matrix `S`.
    pub fn fourier_matrix(&self) -> &ExactMatrix {
        &self.fourier
    }

    /// The row-normalised `s`-matrix (first column all ones).
    pub fn s_matrix(&self) -> &ExactMatrix {
        &self.s_matrix
    }

    /// The `P`-matrix (character table; first row = degrees).
    pub fn p_matrix(&self) -> &ExactMatrix {
        &self.p_matrix
    }

    /// Degrees δ_j = s₀ⱼ² = p₀ⱼ.
    pub fn degrees(&self) -> &[Cyclotomic] {
        &self.degrees
    }

    /// Norms d_i = Σ_j |s_ij|².
    pub fn norms(&self) -> &[Cyclotomic] {
        &self.norms
    }

    /// The order d₀ = Σ_j δ_j (also the principal norm).
    pub fn order(&self) -> &Cyclotomic {
        &self.order
    }

    /// The conjugation involution σ on column indices.
    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn rank(&self) -> usize {
        self.s_matrix.rows()
    }
}

/// True iff rescaling `S` up to `P` and back down reproduces `S` exactly.
pub fn roundtrip_check(fourier: &ExactMatrix) -> Result<bool, RescaleError> {
    let up = FourierTriple::from_fourier(fourier)?;
    let down = FourierTriple::from_p_matrix(up.p_matrix())?;
    Ok(down.fourier_matrix() == fourier)
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

    fn sqrt(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::sqrt_nonneg_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
            .unwrap()
    }

    fn m(rows: Vec<Vec<Cyclotomic>>) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    fn hadamard_fourier() -> ExactMatrix {
        m(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]).scale(&sqrt(1, 2))
    }

    #[test]
    fn rank_one_triple_is_trivial() {
        let t = FourierTriple::from_fourier(&m(vec![vec![int(1)]])).unwrap();
        assert_eq!(t.s_matrix(), &m(vec![vec![int(1)]]));
        assert_eq!(t.p_matrix(), &m(vec![vec![int(1)]]));
        assert_eq!(t.degrees(), &[int(1)]);
        assert_eq!(t.order(), &int(1));
        assert_eq!(t.involution(), &[0]);
    }

    #[test]
    fn two_point_table_rescales_to_signs() {
        let t = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        let signs = m(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]);
        assert_eq!(t.s_matrix(), &signs);
        assert_eq!(t.p_matrix(), &signs);
        assert_eq!(t.degrees(), &[int(1), int(1)]);
        assert_eq!(t.norms(), &[int(2), int(2)]);
        assert_eq!(t.order(), &int(2));
        assert_eq!(t.involution(), &[0, 1]);
    }

    #[test]
    fn rank_two_family_with_degree_four() {
        let p = m(vec![vec![int(1), int(4)], vec![int(1), int(-1)]]);
        let t = FourierTriple::from_p_matrix(&p).unwrap();
        assert_eq!(t.s_matrix(), &m(vec![vec![int(1), int(2)], vec![int(1), rat(-1, 2)]]));
        assert_eq!(t.norms(), &[int(5), rat(5, 4)]);
        assert_eq!(t.degrees(), &[int(1), int(4)]);
        assert_eq!(t.order(), &int(5));
        let expected_fourier =
            m(vec![vec![int(1), int(2)], vec![int(2), int(-1)]]).scale(&sqrt(1, 5));
        assert_eq!(t.fourier_matrix(), &expected_fourier);
        assert!(t.fourier_matrix().is_unitary());
    }

    #[test]
    fn cube_root_table_divides_by_sqrt_three() {
        let p = m(vec![
            vec![int(1), int(1), int(1)],
            vec![int(1), zeta(3, 1), zeta(3, 2)],
            vec![int(1), zeta(3, 2), zeta(3, 1)],
        ]);
        let t = FourierTriple::from_p_matrix(&p).unwrap();
        assert_eq!(t.s_matrix(), &p);
        assert_eq!(t.order(), &int(3));
        assert_eq!(t.fourier_matrix(), &p.scale(&sqrt(1, 3)));
        assert_eq!(t.involution(), &[0, 2, 1]);
        // Degrees are invariant under the involution.
        for (j, &jstar) in t.involution().iter().enumerate() {
            assert_eq!(t.degrees()[j], t.degrees()[jstar]);
        }
    }

    #[test]
    fn s_matrix_entry_point_matches_fourier_entry_point() {
        let signs = m(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]);
        let via_s = FourierTriple::from_s_matrix(&signs).unwrap();
        let via_fourier = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        assert_eq!(via_s, via_fourier);
    }

    #[test]
    fn roundtrip_is_exact() {
        assert!(roundtrip_check(&hadamard_fourier()).unwrap());
        assert!(roundtrip_check(&m(vec![vec![int(1)]])).unwrap());
    }

    #[test]
    fn zero_first_column_entry_is_rejected() {
        let id = ExactMatrix::identity(2);
        assert_eq!(
            FourierTriple::from_fourier(&id),
            Err(RescaleError::NonpositiveFirstColumn { row: 1 })
        );
    }

    #[test]
    fn irrational_degree_is_rejected_in_p_form() {
        let p = m(vec![vec![int(1), sqrt(2, 1)], vec![int(1), int(-1)]]);
        assert_eq!(
            FourierTriple::from_p_matrix(&p),
            Err(RescaleError::IrrationalDegree { index: 1 })
        );
    }

    #[test]
    fn nonpositive_degree_is_rejected_in_p_form() {
        let p = m(vec![vec![int(1), int(-1)], vec![int(1), int(1)]]);
        assert_eq!(
            FourierTriple::from_p_matrix(&p),
            Err(RescaleError::NonpositiveDegree { index: 1 })
        );
    }

    #[test]
    fn first_column_must_be_ones_in_p_form() {
        let p = m(vec![vec![int(1), int(1)], vec![int(2), int(-1)]]);
        assert_eq!(
            FourierTriple::from_p_matrix(&p),
            Err(RescaleError::FirstColumnNotOnes { row: 1 })
        );
    }

    #[test]
    fn unpaired_conjugate_columns_are_rejected() {
        // First row and column are fine, but the conjugate of the second
        // column matches no column.
        let s = m(vec![vec![int(1), int(1)], vec![int(1), zeta(5, 1)]]);
        assert!(matches!(
            FourierTriple::from_s_matrix(&s),
            Err(RescaleError::NotClosedUnderConjugation(_))
        ));
    }

    #[test]
    fn non_square_input_is_rejected() {
        let wide = ExactMatrix::zeros(2, 3);
        assert_eq!(
            FourierTriple::from_fourier(&wide),
            Err(RescaleError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn order_divides_norm_times_degree_on_symmetric_unitary_input() {
        let t = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        for j in 0..t.rank() {
            assert_eq!(&(&t.norms()[j] * &t.degrees()[j]), t.order());
        }
    }
}
