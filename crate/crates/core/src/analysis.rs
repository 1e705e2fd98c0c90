//! Theorem-level checkers built on the verified primitives: self-duality
//! of the `P`-matrix, the degree/multiplicity identity, the integrality
//! correspondence with constructive reconstruction of `S`, the
//! square-order and divisibility screens, homogeneity, and the
//! classification of the column group of a homogeneous matrix.
//!
//! All checkers are exact.  Verdict enums distinguish "hypothesis not
//! applicable" from "holds" from "counterexample"; a counterexample from
//! one of the theorem checkers is always reported with a witness rather
//! than suppressed or panicked on.

use crate::cyclo::basis::factorize;
use crate::cyclo::{Cyclotomic, CycloError, Sign};
use crate::fusion::{verify_fourier, AxiomReport, CAlgebra, IntegralityConvention, Witness};
use crate::linalg::ScaledPermutation;
use crate::rescale::{FourierTriple, RescaleError};
use crate::ExactMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from the analysis operations.  Theorem *violations* are not
/// errors (they come back as counterexample verdicts); these are raised
/// when an operation's inputs fall outside its hypotheses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("degree {index} is not rational, so its square root cannot be normalized")]
    IrrationalDegree { index: usize },
    #[error("degree {index} is not a positive value")]
    NonpositiveDegree { index: usize },
    #[error("degree {index} is not a rational integer")]
    NonIntegerDegree { index: usize },
    #[error("the first degree must be 1")]
    FirstDegreeNotOne,
    #[error("the degree vector is empty")]
    EmptyDegrees,
    #[error("P·conj(P) is not the order times a permutation matrix")]
    NotSelfDual,
    #[error("integrality condition fails at ({indices:?}): {detail}", indices = .0.indices, detail = .0.detail)]
    IntegralityFailed(Witness),
    #[error("reconstructed matrix fails the Fourier axioms — {0}")]
    ReconstructionRejected(AxiomReport),
    #[error("the supplied matrix does not belong to the algebra: degree {index} disagrees with row 0")]
    AlgebraMatrixMismatch { index: usize },
    #[error("rescaling failed: {0}")]
    RescaleFailed(#[from] RescaleError),
    #[error("hypothesis not met: {reason}")]
    HypothesisNotMet { reason: String },
    #[error("entry dominance |s({row},{col})| ≤ s(0,{col}) fails")]
    DominanceFailed { row: usize, col: usize },
    #[error("entrywise product of columns {left} and {right} matches no column")]
    NotClosed { left: usize, right: usize },
    #[error("sign determination gave up: {0}")]
    Undecidable(CycloError),
}

// ---- Duality ----------------------------------------------------------------

/// The exact self-duality data of a triple's `P`-matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// `P·conj(P)` recognized as `scale·Π`, when it has that shape.
    pub verdict: Option<ScaledPermutation>,
    /// True when `P·conj(P) = d₀·Π` for a permutation `Π` (scale equals
    /// the algebra order exactly).
    pub is_self_dual: bool,
    /// True when additionally `Π` is the identity.
    pub is_normalized: bool,
    /// Multiplicities m_j = d₀/d_j.
    pub multiplicities: Vec<Cyclotomic>,
    /// Exact verdict of the identity m_j = δ_j for all j.
    pub multiplicities_equal_degrees: bool,
}

/// Computes `P·conj(P)`, recognizes it as a scaled permutation, and
/// checks the multiplicity identity m_j = d₀/d_j = δ_j exactly.
pub fn duality_report(triple: &FourierTriple) -> DualityReport {
    let p = triple.p_matrix();
    let product = p.mul(&p.conj()).expect("P is square");
    let verdict = product.as_scaled_permutation();
    let is_self_dual =
        verdict.as_ref().is_some_and(|sp| &sp.scale == triple.order());
    let is_normalized = is_self_dual
        && verdict
            .as_ref()
            .is_some_and(|sp| sp.permutation.iter().enumerate().all(|(i, &v)| i == v));
    let multiplicities: Vec<Cyclotomic> = triple
        .norms()
        .iter()
        .map(|d| triple.order() * &d.inv().expect("norms are nonzero"))
        .collect();
    let multiplicities_equal_degrees =
        multiplicities.as_slice() == triple.degrees();
    DualityReport {
        verdict,
        is_self_dual,
        is_normalized,
        multiplicities,
        multiplicities_equal_degrees,
    }
}

// ---- Integrality correspondence ----------------------------------------------

/// Outcome of the integrality condition λ_ijk·√δ_k/√(δ_i·δ_j) ∈ ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegralityVerdict {
    Pass,
    Fail(Witness),
}

/// Square roots of the degrees, with positivity and rationality checked.
fn degree_roots(alg: &CAlgebra) -> Result<Vec<Cyclotomic>, AnalysisError> {
    alg.degrees()
        .iter()
        .enumerate()
        .map(|(index, d)| {
            let q = d.as_rational().ok_or(AnalysisError::IrrationalDegree { index })?;
            if !q.is_positive() {
                return Err(AnalysisError::NonpositiveDegree { index });
            }
            Ok(Cyclotomic::sqrt_nonneg_rational(&q).expect("positive rational"))
        })
        .collect()
}

/// Evaluates λ_ijk·√δ_k/√(δ_i·δ_j) exactly for every triple of indices
/// and reports the first non-integer value.  For an algebra arising from
/// a matrix this quotient equals N_ijk, so passing is equivalent to
/// integral structure constants.
pub fn integrality_condition(alg: &CAlgebra) -> Result<IntegralityVerdict, AnalysisError> {
    let roots = degree_roots(alg)?;
    let inv_roots: Vec<Cyclotomic> = roots
        .iter()
        .map(|w| w.inv().expect("square roots of positive rationals are nonzero"))
        .collect();
    let r = alg.rank();
    for i in 0..r {
        for j in 0..r {
            let denominator = &inv_roots[i] * &inv_roots[j];
            for (k, root_k) in roots.iter().enumerate() {
                let quotient = &(alg.lambda(i, j, k) * root_k) * &denominator;
                if quotient.as_integer().is_none() {
                    return Ok(IntegralityVerdict::Fail(Witness {
                        indices: vec![i, j, k],
                        value: Some(quotient.clone()),
                        detail: format!(
                            "λ({i},{j},{k})·√δ_{k}/√(δ_{i}·δ_{j}) = {quotient} is not a rational integer"
                        ),
                    }));
                }
            }
        }
    }
    Ok(IntegralityVerdict::Pass)
}

/// Rebuilds a verified Fourier matrix from a self-dual algebra with its
/// `P`-matrix: s = P·diag(1/√δ_j), then S_ij = s_ij/√d_i.  Fails loudly
/// if the result does not pass the Fourier axioms.
pub fn reconstruct_fourier(
    alg: &CAlgebra,
    p: &ExactMatrix,
    convention: IntegralityConvention,
) -> Result<ExactMatrix, AnalysisError> {
    if p.rows() != alg.rank() || p.cols() != alg.rank() {
        return Err(AnalysisError::AlgebraMatrixMismatch { index: 0 });
    }
    if let Some(index) =
        (0..alg.rank()).find(|&j| p.at(0, j) != &alg.degrees()[j])
    {
        return Err(AnalysisError::AlgebraMatrixMismatch { index });
    }
    let product = p.mul(&p.conj()).expect("P is square");
    let self_dual = product
        .as_scaled_permutation()
        .is_some_and(|sp| &sp.scale == alg.order());
    if !self_dual {
        return Err(AnalysisError::NotSelfDual);
    }
    match integrality_condition(alg)? {
        IntegralityVerdict::Pass => {}
        IntegralityVerdict::Fail(witness) => {
            return Err(AnalysisError::IntegralityFailed(witness));
        }
    }
    let triple = FourierTriple::from_p_matrix(p)?;
    let report = verify_fourier(triple.fourier_matrix(), convention);
    if !report.all_pass() {
        return Err(AnalysisError::ReconstructionRejected(report));
    }
    Ok(triple.fourier_matrix().clone())
}

// ---- Square-order and divisibility screens -----------------------------------

/// Verdict of the square-order lemma: odd rank and integer det(P) force
/// the order to be a perfect-square integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareOrderVerdict {
    /// Even rank — the lemma says nothing.
    NotApplicable,
    /// Odd rank but det(P) is not a rational integer — hypothesis empty.
    Vacuous,
    Holds,
    /// Odd rank, integer determinant, yet the order is not a perfect
    /// square — this would contradict the lemma and is surfaced loudly.
    Counterexample { determinant: Cyclotomic, order: Cyclotomic },
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &(&root * &root) == n
}

/// Tests the square-order lemma on a triple: applicable for odd rank;
/// when det(P) ∈ ℤ the order d₀ must be a perfect-square integer.
pub fn square_order_check(triple: &FourierTriple) -> SquareOrderVerdict {
    if triple.rank().is_multiple_of(2) {
        return SquareOrderVerdict::NotApplicable;
    }
    let determinant = triple
        .p_matrix()
        .determinant()
        .expect("P is square");
    if determinant.as_integer().is_none() {
        return SquareOrderVerdict::Vacuous;
    }
    let square = triple
        .order()
        .as_integer()
        .is_some_and(|d0| is_perfect_square(&d0));
    if square {
        SquareOrderVerdict::Holds
    } else {
        SquareOrderVerdict::Counterexample {
            determinant,
            order: triple.order().clone(),
        }
    }
}

/// Verdict of the degree-pattern screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScreenVerdict {
    Consistent,
    /// Index j ≥ 1 whose degree is ≠ 1 yet divides every nontrivial
    /// degree — a pattern no Fourier matrix can produce.
    Inconsistent { witness: usize },
}

/// Screens a degree vector (δ_0, …, δ_{r−1}), δ_0 = 1, all positive
/// integers: the pattern is impossible for a Fourier matrix if some
/// nontrivial degree other than 1 divides all nontrivial degrees.
pub fn divisibility_screen(degrees: &[Cyclotomic]) -> Result<ScreenVerdict, AnalysisError> {
    if degrees.is_empty() {
        return Err(AnalysisError::EmptyDegrees);
    }
    let mut values = Vec::with_capacity(degrees.len());
    for (index, d) in degrees.iter().enumerate() {
        let v = d.as_integer().ok_or(AnalysisError::NonIntegerDegree { index })?;
        if !v.is_positive() {
            return Err(AnalysisError::NonpositiveDegree { index });
        }
        values.push(v);
    }
    if !values[0].is_one() {
        return Err(AnalysisError::FirstDegreeNotOne);
    }
    let nontrivial = &values[1..];
    let witness = nontrivial.iter().position(|d| {
        !d.is_one() && nontrivial.iter().all(|other| (other % d).is_zero())
    });
    Ok(match witness {
        Some(j) => ScreenVerdict::Inconsistent { witness: j + 1 },
        None => ScreenVerdict::Consistent,
    })
}

// ---- Homogeneity and the degree-one property ----------------------------------

/// Returns the common value t of all nontrivial degrees when they agree
/// (rank ≤ 2 is homogeneous by vacuity/singleton; rank 1 reports t = 1).
pub fn homogeneity(triple: &FourierTriple) -> Option<Cyclotomic> {
    let nontrivial = &triple.degrees()[1..];
    match nontrivial.first() {
        None => Some(Cyclotomic::one()),
        Some(t) => nontrivial.iter().all(|d| d == t).then(|| t.clone()),
    }
}

/// Which hypothesis of the degree-one proposition a triple satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// All nontrivial degrees equal this value.
    Homogeneous { degree: Cyclotomic },
    /// The order is a prime integer and all degrees are integers.
    PrimeOrder,
    Neither,
}

fn is_prime_int(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let two = BigInt::from(2);
    if n == &two {
        return true;
    }
    if (n % &two).is_zero() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &(&d * &d) <= n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// Classifies a triple under the degree-one proposition's hypotheses.
/// Homogeneity takes precedence when both hold.
pub fn hypothesis_of(triple: &FourierTriple) -> Hypothesis {
    if let Some(degree) = homogeneity(triple) {
        return Hypothesis::Homogeneous { degree };
    }
    let prime_order = triple.order().as_integer().is_some_and(|d0| is_prime_int(&d0));
    let integral_degrees =
        triple.degrees().iter().all(|d| d.as_integer().is_some());
    if prime_order && integral_degrees {
        Hypothesis::PrimeOrder
    } else {
        Hypothesis::Neither
    }
}

/// Verdict of the degree-one proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeOneVerdict {
    Holds,
    /// A degree ≠ 1 or a norm differing from d₀ under a satisfied
    /// hypothesis — would contradict the proposition.
    Counterexample(Witness),
}

fn require_fourier(
    triple: &FourierTriple,
    convention: IntegralityConvention,
) -> Result<(), AnalysisError> {
    let report = verify_fourier(triple.fourier_matrix(), convention);
    if !report.all_pass() {
        return Err(AnalysisError::HypothesisNotMet {
            reason: format!("matrix fails the Fourier axioms — {report}"),
        });
    }
    Ok(())
}

/// Checks that a Fourier matrix satisfying the homogeneity or prime-order
/// hypothesis has all degrees equal to 1, and equivalently a unique norm.
pub fn degree_one_check(
    triple: &FourierTriple,
    convention: IntegralityConvention,
) -> Result<DegreeOneVerdict, AnalysisError> {
    require_fourier(triple, convention)?;
    if hypothesis_of(triple) == Hypothesis::Neither {
        return Err(AnalysisError::HypothesisNotMet {
            reason: "neither homogeneous nor of prime order with integer degrees".to_string(),
        });
    }
    if let Some(index) = (0..triple.rank()).find(|&i| !triple.degrees()[i].is_one()) {
        return Ok(DegreeOneVerdict::Counterexample(Witness {
            indices: vec![index],
            value: Some(triple.degrees()[index].clone()),
            detail: format!("degree {index} is {} ≠ 1", triple.degrees()[index]),
        }));
    }
    if let Some(index) =
        (0..triple.rank()).find(|&i| &triple.norms()[i] != triple.order())
    {
        return Ok(DegreeOneVerdict::Counterexample(Witness {
            indices: vec![index],
            value: Some(triple.norms()[index].clone()),
            detail: format!("norm {index} differs from the order, so the norm is not unique"),
        }));
    }
    Ok(DegreeOneVerdict::Holds)
}

// ---- Classification of the column group ---------------------------------------

/// Verdict of the ±1-entry conjecture for integral matrices with unique
/// norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CuntzVerdict {
    Holds,
    Counterexample { row: usize, col: usize },
}

/// Exactly verified conclusions of the classification theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub hypothesis: Hypothesis,
    /// δ_j = 1 for all j, verified exactly.
    pub degrees_all_one: bool,
    /// |s_ij|² = 1 for all entries, verified exactly.
    pub unimodular_entries: bool,
    /// Cayley table of the columns under entrywise multiplication:
    /// entry (i,j) is the column index of sᵢ⊙sⱼ.  Present only when the
    /// entries are unimodular.
    pub column_group: Option<Vec<Vec<usize>>>,
    /// Invariant factors of the abelian column group, ascending, each
    /// dividing the next.
    pub invariant_factors: Option<Vec<u64>>,
    /// For real matrices only: whether every column has order ≤ 2.
    pub is_elementary_abelian: Option<bool>,
    /// For integral matrices with unique norm only: the ±1 verdict.
    pub cuntz_conjecture_verdict: Option<CuntzVerdict>,
}

/// Entry dominance |s_ij| ≤ s_0j, decided exactly via the sign of
/// s_0j² − |s_ij|².
fn check_dominance(triple: &FourierTriple) -> Result<(), AnalysisError> {
    let s = triple.s_matrix();
    for j in 0..s.cols() {
        let bound = s.at(0, j) * s.at(0, j);
        for i in 0..s.rows() {
            let diff = &bound - &s.at(i, j).abs_sq();
            match diff.sign_real() {
                Ok(Sign::Positive) | Ok(Sign::Zero) => {}
                Ok(Sign::Negative) => {
                    return Err(AnalysisError::DominanceFailed { row: i, col: j });
                }
                Err(CycloError::NotReal) => {
                    unreachable!("difference of squared moduli is real")
                }
                Err(e) => return Err(AnalysisError::Undecidable(e)),
            }
        }
    }
    Ok(())
}

/// Builds the Cayley table of the columns under entrywise multiplication.
fn column_cayley_table(s: &ExactMatrix) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let r = s.rows();
    let columns: Vec<Vec<Cyclotomic>> = (0..r).map(|j| s.column(j)).collect();
    let mut table = vec![vec![0usize; r]; r];
    for i in 0..r {
        for j in 0..r {
            let product: Vec<Cyclotomic> =
                (0..r).map(|l| &columns[i][l] * &columns[j][l]).collect();
            let matched = (0..r).find(|&k| columns[k] == product);
            match matched {
                Some(k) => table[i][j] = k,
                None => return Err(AnalysisError::NotClosed { left: i, right: j }),
            }
        }
    }
    Ok(table)
}

/// Group-law sanity on a candidate Cayley table: identity column 0,
/// commutativity, associativity, and an inverse for every element.  Any
/// violation is reported through the closure error channel since it
/// equally contradicts the classification theorem.
fn check_group_axioms(table: &[Vec<usize>]) -> Result<(), AnalysisError> {
    let r = table.len();
    for i in 0..r {
        if table[i][0] != i || table[0][i] != i {
            return Err(AnalysisError::NotClosed { left: i, right: 0 });
        }
        if !(0..r).any(|j| table[i][j] == 0) {
            return Err(AnalysisError::NotClosed { left: i, right: i });
        }
        for j in 0..r {
            if table[i][j] != table[j][i] {
                return Err(AnalysisError::NotClosed { left: i, right: j });
            }
            for k in 0..r {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(AnalysisError::NotClosed { left: i, right: j });
                }
            }
        }
    }
    Ok(())
}

fn column_order(table: &[Vec<usize>], j: usize) -> u64 {
    let mut current = j;
    let mut order = 1u64;
    while current != 0 {
        current = table[current][j];
        order += 1;
    }
    order
}

fn exact_log(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        assert!(n.is_multiple_of(p), "element counts of an abelian group are prime powers");
        n /= p;
        e += 1;
    }
    e
}

/// Exponent multiset (descending) of the p-primary component, recovered
/// from order statistics: the counts a_k = #{g : g^(p^k) = e} determine
/// the conjugate partition of the exponent partition.
fn prime_exponents(orders: &[u64], p: u64) -> Vec<u32> {
    let mut logs = vec![0u32];
    let mut pk = 1u64;
    loop {
        pk *= p;
        let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
        let log = exact_log(count, p);
        if log == *logs.last().expect("nonempty") {
            break;
        }
        logs.push(log);
    }
    // b_k = logs[k] − logs[k−1] counts parts ≥ k; multiplicity of the
    // part k is b_k − b_{k+1}.
    let b: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
    let mut exponents = Vec::new();
    for k in (1..=b.len()).rev() {
        let next = if k < b.len() { b[k] } else { 0 };
        for _ in 0..(b[k - 1] - next) {
            exponents.push(k as u32);
        }
    }
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents
}

/// Invariant factors (ascending divisibility chain) of an abelian group
/// given its element orders.
fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    if n <= 1 {
        return Vec::new();
    }
    let per_prime: Vec<(u64, Vec<u32>)> = factorize(n)
        .into_iter()
        .map(|(p, _)| (p, prime_exponents(orders, p)))
        .collect();
    let width = per_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..width)
        .map(|t| {
            per_prime
                .iter()
                .map(|(p, es)| p.pow(es.get(t).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    factors.reverse();
    factors.retain(|&f| f != 1);
    factors
}

/// Verifies the classification theorem's conclusions for a Fourier
/// matrix under the homogeneity or prime-order hypothesis and entry
/// dominance: unimodular entries, columns forming an abelian group, its
/// invariant factors, the elementary-abelian conclusion for real
/// matrices, and the ±1 conjecture for integral matrices with unique
/// norm.
pub fn classify(
    triple: &FourierTriple,
    convention: IntegralityConvention,
) -> Result<ClassificationReport, AnalysisError> {
    let hypothesis = hypothesis_of(triple);
    if hypothesis == Hypothesis::Neither {
        return Err(AnalysisError::HypothesisNotMet {
            reason: "neither homogeneous nor of prime order with integer degrees".to_string(),
        });
    }
    check_dominance(triple)?;
    require_fourier(triple, convention)?;

    let degrees_all_one = triple.degrees().iter().all(|d| d.is_one());
    let s = triple.s_matrix();
    let r = triple.rank();
    let unimodular_entries = (0..r)
        .all(|i| (0..r).all(|j| s.at(i, j).abs_sq().is_one()));

    let mut column_group = None;
    let mut invariant_factors = None;
    let mut is_elementary_abelian = None;
    let mut cuntz_conjecture_verdict = None;

    if unimodular_entries {
        let table = column_cayley_table(s)?;
        check_group_axioms(&table)?;
        let orders: Vec<u64> = (0..r).map(|j| column_order(&table, j)).collect();
        invariant_factors = Some(invariant_factors_from_orders(&orders));

        let is_real = (0..r).all(|i| (0..r).all(|j| s.at(i, j).is_real()));
        if is_real {
            is_elementary_abelian = Some(orders.iter().all(|&o| o <= 2));
        }

        let integral = (0..r).all(|i| (0..r).all(|j| s.at(i, j).as_integer().is_some()));
        let unique_norm = triple.norms().iter().all(|d| d == &triple.norms()[0]);
        if integral && unique_norm {
            let minus_one = Cyclotomic::from_integer(-1);
            let bad = (0..r)
                .flat_map(|i| (0..r).map(move |j| (i, j)))
                .find(|&(i, j)| !(s.at(i, j).is_one() || s.at(i, j) == &minus_one));
            cuntz_conjecture_verdict = Some(match bad {
                None => CuntzVerdict::Holds,
                Some((row, col)) => CuntzVerdict::Counterexample { row, col },
            });
        }
        column_group = Some(table);
    }

    Ok(ClassificationReport {
        hypothesis,
        degrees_all_one,
        unimodular_entries,
        column_group,
        invariant_factors,
        is_elementary_abelian,
        cuntz_conjecture_verdict,
    })
}

// ---- Perfect-square degrees ----------------------------------------------------

/// Verdict of the integral-matrix degree test: when every s-entry is a
/// rational integer, all degrees must be perfect squares and all λ
/// rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerfectSquareVerdict {
    /// The s-matrix has a non-integer entry.
    NotApplicable,
    Holds,
    Counterexample(Witness),
}

/// Tests the perfect-square-degree property of integral matrices.
pub fn perfect_square_degrees_check(triple: &FourierTriple) -> PerfectSquareVerdict {
    let s = triple.s_matrix();
    let r = triple.rank();
    let integral = (0..r).all(|i| (0..r).all(|j| s.at(i, j).as_integer().is_some()));
    if !integral {
        return PerfectSquareVerdict::NotApplicable;
    }
    for (j, d) in triple.degrees().iter().enumerate() {
        let square = d.as_integer().is_some_and(|v| is_perfect_square(&v));
        if !square {
            return PerfectSquareVerdict::Counterexample(Witness {
                indices: vec![j],
                value: Some(d.clone()),
                detail: format!("degree {j} = {d} is not a perfect-square integer"),
            });
        }
    }
    let constants = crate::fusion::structure_constants(triple);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let value = constants.lambda(i, j, k);
                if value.as_rational().is_none() {
                    return PerfectSquareVerdict::Counterexample(Witness {
                        indices: vec![i, j, k],
                        value: Some(value.clone()),
                        detail: format!("λ({i},{j},{k}) = {value} is not rational"),
                    });
                }
            }
        }
    }
    PerfectSquareVerdict::Holds
}
