//! Structure constants and axiom verification.
//!
//! A candidate matrix `S` is a Fourier matrix when it is unitary and
//! symmetric, has a positive first column, and induces integral structure
//! constants N_ijk = Σ_l S_li·S_lj·conj(S_lk)/S_l0.  A modular datum adds
//! a finite-order diagonal `T` with (ST)³ = S².  From a rescaled triple,
//! the columns of the `P`-matrix span a commutative algebra whose
//! structure constants are λ_ijk = N_ijk·s₀ᵢ·s₀ⱼ/s₀ₖ; [`CAlgebra`] holds
//! that data and [`verify_calgebra`] checks the defining axioms —
//! involution, reality, support at the identity, positivity, degree
//! homomorphism, standard basis, and associativity.
//!
//! All verdicts are exact.  Failed checks always carry a concrete witness
//! (indices and, where meaningful, the offending value).

use crate::cyclo::{Cyclotomic, CycloError, Sign};
use crate::linalg::ExactMatrix;
use crate::rescale::FourierTriple;
use num_traits::Signed;
use std::fmt;
use thiserror::Error;

/// Which integrality convention axiom (v) enforces on the N_ijk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegralityConvention {
    /// N_ijk must be rational integers (possibly negative) — the
    /// generalized convention used throughout this crate by default.
    #[default]
    Integer,
    /// N_ijk must be nonnegative rational integers (the classical
    /// fusion-ring convention).
    NonnegativeInteger,
}

/// Concrete evidence for a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Offending indices, in the order natural to the check (row, or
    /// (i,j), or (i,j,k), …).
    pub indices: Vec<usize>,
    /// The offending value, when one exists.
    pub value: Option<Cyclotomic>,
    /// Human-readable explanation.
    pub detail: String,
}

impl Witness {
    fn new(indices: Vec<usize>, value: Option<Cyclotomic>, detail: impl Into<String>) -> Self {
        Witness { indices, value, detail: detail.into() }
    }
}

/// One named check with its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// The outcome of an axiom suite: every check named, failures witnessed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn pass(&mut self, name: &'static str) {
        self.checks.push(AxiomCheck { name, passed: true, witness: None });
    }

    fn fail(&mut self, name: &'static str, witness: Witness) {
        self.checks.push(AxiomCheck { name, passed: false, witness: Some(witness) });
    }

    /// Records `witness` as a failure when present, otherwise a pass.
    fn record(&mut self, name: &'static str, witness: Option<Witness>) {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_pass() {
            return write!(f, "all {} checks passed", self.checks.len());
        }
        let failed: Vec<String> = self
            .failures()
            .map(|c| match &c.witness {
                Some(w) => format!("{} ({})", c.name, w.detail),
                None => c.name.to_string(),
            })
            .collect();
        write!(f, "failed: {}", failed.join("; "))
    }
}

/// Errors from algebra construction (verification failures are verdicts,
/// not errors — these arise only from malformed or inconsistent input).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("lambda table has {found} entries but rank {rank} needs {expected}")]
    TableShape { rank: usize, expected: usize, found: usize },
    #[error(
        "cannot derive the involution: basis index {index} has {count} partners with nonzero λ_ij0"
    )]
    InvolutionUnderdetermined { index: usize, count: usize },
    #[error("involution entry {value} at index {index} is out of range for rank {rank}")]
    InvolutionOutOfRange { index: usize, value: usize, rank: usize },
    #[error("input is not a Fourier matrix — {0}")]
    FourierAxiomsFailed(AxiomReport),
    #[error("constructed algebra failed its own verification — {0}")]
    ConstructionInconsistent(AxiomReport),
}

// ---- Structure constants ---------------------------------------------------

/// Dense r×r×r tables of the structure constants in both bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    n: Vec<Cyclotomic>,
    lambda: Vec<Cyclotomic>,
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// N_ijk, the constants generated by the `s`-matrix columns.
    pub fn n(&self, i: usize, j: usize, k: usize) -> &Cyclotomic {
        &self.n[(i * self.rank + j) * self.rank + k]
    }

    /// λ_ijk, the constants generated by the `P`-matrix columns.
    pub fn lambda(&self, i: usize, j: usize, k: usize) -> &Cyclotomic {
        &self.lambda[(i * self.rank + j) * self.rank + k]
    }

    pub fn lambda_table(&self) -> &[Cyclotomic] {
        &self.lambda
    }
}

/// Computes N_ijk = Σ_l s_li·s_lj·conj(s_lk)/d_l and
/// λ_ijk = N_ijk·s₀ᵢ·s₀ⱼ/s₀ₖ, exactly, for all triples.
pub fn structure_constants(triple: &FourierTriple) -> StructureConstants {
    let s = triple.s_matrix();
    let r = triple.rank();
    // Weighted conjugates: w[l][k] = conj(s_lk)/d_l, shared across (i,j).
    let inv_norms: Vec<Cyclotomic> = triple
        .norms()
        .iter()
        .map(|d| d.inv().expect("norms are positive"))
        .collect();
    let weighted: Vec<Vec<Cyclotomic>> = (0..r)
        .map(|l| (0..r).map(|k| &s.at(l, k).conj() * &inv_norms[l]).collect())
        .collect();
    let row0_inv: Vec<Cyclotomic> = (0..r)
        .map(|k| s.at(0, k).inv().expect("first s-row is positive"))
        .collect();

    let mut n = vec![Cyclotomic::zero(); r * r * r];
    let mut lambda = vec![Cyclotomic::zero(); r * r * r];
    for i in 0..r {
        for j in i..r {
            let pairwise: Vec<Cyclotomic> =
                (0..r).map(|l| s.at(l, i) * s.at(l, j)).collect();
            let scale = s.at(0, i) * s.at(0, j);
            for k in 0..r {
                let n_ijk = Cyclotomic::dot(
                    pairwise.iter().zip((0..r).map(|l| &weighted[l][k])),
                );
                let l_ijk = &(&n_ijk * &scale) * &row0_inv[k];
                n[(i * r + j) * r + k] = n_ijk.clone();
                lambda[(i * r + j) * r + k] = l_ijk.clone();
                if i != j {
                    n[(j * r + i) * r + k] = n_ijk;
                    lambda[(j * r + i) * r + k] = l_ijk;
                }
            }
        }
    }
    StructureConstants { rank: r, n, lambda }
}

// ---- Fourier-matrix verification -------------------------------------------

/// True when `x` is an acceptable structure constant under `convention`.
fn constant_is_admissible(x: &Cyclotomic, convention: IntegralityConvention) -> bool {
    match x.as_integer() {
        None => false,
        Some(v) => match convention {
            IntegralityConvention::Integer => true,
            IntegralityConvention::NonnegativeInteger => !v.is_negative(),
        },
    }
}

fn first_asymmetry(m: &ExactMatrix) -> Option<Witness> {
    for i in 0..m.rows() {
        for j in i + 1..m.cols() {
            if m.at(i, j) != m.at(j, i) {
                return Some(Witness::new(
                    vec![i, j],
                    Some(m.at(i, j).clone()),
                    format!("entry ({i},{j}) differs from entry ({j},{i})"),
                ));
            }
        }
    }
    None
}

fn first_unitarity_defect(m: &ExactMatrix) -> Option<Witness> {
    let product = m.mul(&m.conj_transpose()).expect("square");
    for i in 0..product.rows() {
        for j in 0..product.cols() {
            let expected_one = i == j;
            let entry = product.at(i, j);
            let ok = if expected_one { entry.is_one() } else { entry.is_zero() };
            if !ok {
                return Some(Witness::new(
                    vec![i, j],
                    Some(entry.clone()),
                    format!("(M·M†)({i},{j}) = {entry}"),
                ));
            }
        }
    }
    None
}

fn first_nonpositive_first_column(m: &ExactMatrix) -> Option<Witness> {
    for i in 0..m.rows() {
        let entry = m.at(i, 0);
        match entry.sign_real() {
            Ok(Sign::Positive) => {}
            Ok(_) | Err(CycloError::NotReal) => {
                return Some(Witness::new(
                    vec![i],
                    Some(entry.clone()),
                    format!("entry ({i},0) = {entry} is not a positive real"),
                ));
            }
            Err(e) => {
                return Some(Witness::new(
                    vec![i],
                    Some(entry.clone()),
                    format!("sign of entry ({i},0) undecided: {e}"),
                ));
            }
        }
    }
    None
}

/// First inadmissible induced constant N_ijk = Σ_l S_li·S_lj·conj(S_lk)/S_l0,
/// or a witness that the formula is undefined (some S_l0 = 0).
fn first_integrality_defect(
    m: &ExactMatrix,
    convention: IntegralityConvention,
) -> Option<Witness> {
    let r = m.rows();
    if let Some(l) = (0..r).find(|&l| m.at(l, 0).is_zero()) {
        return Some(Witness::new(
            vec![l],
            None,
            format!("structure constants undefined: entry ({l},0) is zero"),
        ));
    }
    // Algebraically S_li·S_lj·conj(S_lk)/S_l0 = s_li·s_lj·conj(s_lk)·S_l0²
    // with s_lk = S_lk/S_l0; the right-hand side is cheaper to evaluate.
    let row_inv: Vec<Cyclotomic> =
        (0..r).map(|l| m.at(l, 0).inv().expect("checked nonzero")).collect();
    let srows: Vec<Vec<Cyclotomic>> = (0..r)
        .map(|l| m.row(l).iter().map(|x| x * &row_inv[l]).collect())
        .collect();
    let weights: Vec<Cyclotomic> = (0..r).map(|l| m.at(l, 0) * m.at(l, 0)).collect();
    // Column-major: the innermost loop below consumes one column per k.
    let weighted_cols: Vec<Vec<Cyclotomic>> = (0..r)
        .map(|k| (0..r).map(|l| &srows[l][k].conj() * &weights[l]).collect())
        .collect();
    for i in 0..r {
        for j in i..r {
            let pairwise: Vec<Cyclotomic> =
                (0..r).map(|l| &srows[l][i] * &srows[l][j]).collect();
            for (k, column) in weighted_cols.iter().enumerate() {
                let n_ijk = Cyclotomic::dot(pairwise.iter().zip(column));
                if !constant_is_admissible(&n_ijk, convention) {
                    return Some(Witness::new(
                        vec![i, j, k],
                        Some(n_ijk.clone()),
                        format!("N({i},{j},{k}) = {n_ijk}"),
                    ));
                }
            }
        }
    }
    None
}

/// Verifies the Fourier-matrix axioms on `S`: unitary, symmetric,
/// positive first column, and integral induced structure constants.
pub fn verify_fourier(m: &ExactMatrix, convention: IntegralityConvention) -> AxiomReport {
    let mut report = AxiomReport::default();
    if !m.is_square() {
        report.fail(
            "square",
            Witness::new(vec![m.rows(), m.cols()], None, "matrix is not square".to_string()),
        );
        return report;
    }
    report.pass("square");
    report.record("symmetric", first_asymmetry(m));
    report.record("unitary", first_unitarity_defect(m));
    report.record("positive-first-column", first_nonpositive_first_column(m));
    report.record(
        "integral-structure-constants",
        first_integrality_defect(m, convention),
    );
    report
}

/// Verifies the full modular-datum axioms: the Fourier axioms on `S`,
/// `T` diagonal with root-of-unity entries, and (ST)³ = S².
pub fn verify_modular_datum(
    s: &ExactMatrix,
    t: &ExactMatrix,
    convention: IntegralityConvention,
) -> AxiomReport {
    let mut report = verify_fourier(s, convention);
    if t.rows() != s.rows() || t.cols() != s.cols() {
        report.fail(
            "diagonal",
            Witness::new(
                vec![t.rows(), t.cols()],
                None,
                format!("T is {}x{} but S is {}x{}", t.rows(), t.cols(), s.rows(), s.cols()),
            ),
        );
        return report;
    }
    let off_diagonal = (0..t.rows())
        .flat_map(|i| (0..t.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !t.at(i, j).is_zero())
        .map(|(i, j)| {
            Witness::new(
                vec![i, j],
                Some(t.at(i, j).clone()),
                format!("off-diagonal entry ({i},{j}) is nonzero"),
            )
        });
    report.record("diagonal", off_diagonal);

    let non_root = (0..t.rows()).find_map(|i| {
        let entry = t.at(i, i);
        if entry.is_zero() {
            return Some(Witness::new(
                vec![i],
                Some(entry.clone()),
                format!("diagonal entry {i} is zero"),
            ));
        }
        // A cyclotomic of conductor n is a root of unity iff raising it to
        // lcm(2, n) gives 1 — exact, no numeric bound needed.
        let exponent = if entry.order().is_multiple_of(2) { entry.order() } else { 2 * entry.order() };
        (!entry.pow(exponent).is_one()).then(|| {
            Witness::new(
                vec![i],
                Some(entry.clone()),
                format!("diagonal entry {i} = {entry} is not a root of unity"),
            )
        })
    });
    report.record("finite-order", non_root);

    if report.check("diagonal").is_some_and(|c| c.passed) {
        let st = s.mul(t).expect("shapes checked");
        let st3 = st.mul(&st).expect("square").mul(&st).expect("square");
        let s2 = s.mul(s).expect("square");
        let defect = (0..s.rows())
            .flat_map(|i| (0..s.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| st3.at(i, j) != s2.at(i, j))
            .map(|(i, j)| {
                Witness::new(
                    vec![i, j],
                    Some(st3.at(i, j).clone()),
                    format!("(ST)³ and S² differ at ({i},{j})"),
                )
            });
        report.record("modular-identity", defect);
    }
    report
}

// ---- C-algebras -------------------------------------------------------------

/// A commutative algebra presented by its structure-constant table λ, a
/// degree vector, an involution on basis indices, and its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CAlgebra {
    rank: usize,
    lambda: Vec<Cyclotomic>,
    degrees: Vec<Cyclotomic>,
    involution: Vec<usize>,
    order: Cyclotomic,
}

impl CAlgebra {
    /// Assembles an algebra from explicit parts, checking only shapes —
    /// run [`verify_calgebra`] to decide whether the axioms hold.
    pub fn from_parts(
        rank: usize,
        lambda: Vec<Cyclotomic>,
        degrees: Vec<Cyclotomic>,
        involution: Vec<usize>,
        order: Cyclotomic,
    ) -> Result<Self, FusionError> {
        let expected = rank * rank * rank;
        if lambda.len() != expected {
            return Err(FusionError::TableShape { rank, expected, found: lambda.len() });
        }
        if degrees.len() != rank {
            return Err(FusionError::TableShape { rank, expected: rank, found: degrees.len() });
        }
        if involution.len() != rank {
            return Err(FusionError::TableShape {
                rank,
                expected: rank,
                found: involution.len(),
            });
        }
        if let Some((index, &value)) =
            involution.iter().enumerate().find(|(_, &v)| v >= rank)
        {
            return Err(FusionError::InvolutionOutOfRange { index, value, rank });
        }
        Ok(CAlgebra { rank, lambda, degrees, involution, order })
    }

    /// Derives involution, degrees, and order from a bare λ table: i* is
    /// the unique j with λ_ij0 ≠ 0, δ_i = λ_{i,i*,0}, order = Σ δ_i.
    pub fn from_lambda_table(rank: usize, lambda: Vec<Cyclotomic>) -> Result<Self, FusionError> {
        let expected = rank * rank * rank;
        if lambda.len() != expected {
            return Err(FusionError::TableShape { rank, expected, found: lambda.len() });
        }
        let at = |i: usize, j: usize, k: usize| &lambda[(i * rank + j) * rank + k];
        let mut involution = Vec::with_capacity(rank);
        for i in 0..rank {
            let partners: Vec<usize> = (0..rank).filter(|&j| !at(i, j, 0).is_zero()).collect();
            if partners.len() != 1 {
                return Err(FusionError::InvolutionUnderdetermined {
                    index: i,
                    count: partners.len(),
                });
            }
            involution.push(partners[0]);
        }
        let degrees: Vec<Cyclotomic> =
            (0..rank).map(|i| at(i, involution[i], 0).clone()).collect();
        let order = degrees.iter().fold(Cyclotomic::zero(), |acc, d| &acc + d);
        Ok(CAlgebra { rank, lambda, degrees, involution, order })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> &Cyclotomic {
        &self.lambda[(i * self.rank + j) * self.rank + k]
    }

    pub fn lambda_table(&self) -> &[Cyclotomic] {
        &self.lambda
    }

    pub fn degrees(&self) -> &[Cyclotomic] {
        &self.degrees
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn order(&self) -> &Cyclotomic {
        &self.order
    }
}

/// Builds the algebra spanned by the `P`-matrix columns of a triple
/// without any verification — callers that want the checked pathway use
/// [`build_calgebra`]; this entry point allows inspecting algebras whose
/// matrix fails the Fourier axioms (they can still be honest C-algebras).
pub fn candidate_calgebra(triple: &FourierTriple) -> CAlgebra {
    let constants = structure_constants(triple);
    CAlgebra {
        rank: triple.rank(),
        lambda: constants.lambda,
        degrees: triple.degrees().to_vec(),
        involution: triple.involution().to_vec(),
        order: triple.order().clone(),
    }
}

/// Constructs the C-algebra of a Fourier matrix: requires the Fourier
/// axioms to hold for `triple`'s matrix, then re-verifies the constructed
/// algebra before returning it.
pub fn build_calgebra(
    triple: &FourierTriple,
    convention: IntegralityConvention,
) -> Result<CAlgebra, FusionError> {
    let fourier_report = verify_fourier(triple.fourier_matrix(), convention);
    if !fourier_report.all_pass() {
        return Err(FusionError::FourierAxiomsFailed(fourier_report));
    }
    let algebra = candidate_calgebra(triple);
    let algebra_report = verify_calgebra(&algebra);
    if !algebra_report.all_pass() {
        return Err(FusionError::ConstructionInconsistent(algebra_report));
    }
    Ok(algebra)
}

fn positivity_witness(x: &Cyclotomic, index: usize, what: &str) -> Option<Witness> {
    match x.sign_real() {
        Ok(Sign::Positive) => None,
        Ok(_) | Err(CycloError::NotReal) => Some(Witness::new(
            vec![index],
            Some(x.clone()),
            format!("{what} {index} = {x} is not a positive real"),
        )),
        Err(e) => Some(Witness::new(
            vec![index],
            Some(x.clone()),
            format!("sign of {what} {index} undecided: {e}"),
        )),
    }
}

/// Verifies the C-algebra axioms plus structural sanity (commutativity,
/// unit behaviour, associativity, order = degree sum).
pub fn verify_calgebra(alg: &CAlgebra) -> AxiomReport {
    let mut report = AxiomReport::default();
    let r = alg.rank();
    let sigma = alg.involution();

    // The involution must be a self-inverse permutation fixing the unit.
    let involution_defect = if sigma.first() != Some(&0) && r > 0 {
        Some(Witness::new(vec![0], None, "involution moves the unit index 0".to_string()))
    } else {
        (0..r)
            .find(|&i| sigma[sigma[i]] != i)
            .map(|i| Witness::new(vec![i], None, format!("σ(σ({i})) = {} ≠ {i}", sigma[sigma[i]])))
    };
    report.record("involution", involution_defect);

    let non_real = (0..r)
        .flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| !alg.lambda(i, j, k).is_real())
        .map(|(i, j, k)| {
            Witness::new(
                vec![i, j, k],
                Some(alg.lambda(i, j, k).clone()),
                format!("λ({i},{j},{k}) is not real"),
            )
        });
    report.record("constants-real", non_real);

    let non_commutative = (0..r)
        .flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| alg.lambda(i, j, k) != alg.lambda(j, i, k))
        .map(|(i, j, k)| {
            Witness::new(
                vec![i, j, k],
                Some(alg.lambda(i, j, k).clone()),
                format!("λ({i},{j},{k}) ≠ λ({j},{i},{k})"),
            )
        });
    report.record("commutative", non_commutative);

    let unit_defect = (0..r)
        .flat_map(|j| (0..r).map(move |k| (j, k)))
        .find(|&(j, k)| {
            let expected_one = j == k;
            let entry = alg.lambda(0, j, k);
            if expected_one { !entry.is_one() } else { !entry.is_zero() }
        })
        .map(|(j, k)| {
            Witness::new(
                vec![j, k],
                Some(alg.lambda(0, j, k).clone()),
                format!("b_0·b_{j} has coefficient {} at b_{k}", alg.lambda(0, j, k)),
            )
        });
    report.record("unit", unit_defect);

    let support_defect = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let nonzero = !alg.lambda(i, j, 0).is_zero();
            nonzero != (j == sigma[i])
        })
        .map(|(i, j)| {
            Witness::new(
                vec![i, j],
                Some(alg.lambda(i, j, 0).clone()),
                if j == sigma[i] {
                    format!("λ({i},{j},0) = 0 although {j} = σ({i})")
                } else {
                    format!("λ({i},{j},0) = {} although {j} ≠ σ({i})", alg.lambda(i, j, 0))
                },
            )
        });
    report.record("support-at-identity", support_defect);

    let pairing_defect =
        (0..r).find_map(|i| positivity_witness(alg.lambda(i, sigma[i], 0), i, "pairing value"));
    report.record("positive-pairing", pairing_defect);

    let degree_defect = (0..r).find_map(|i| {
        positivity_witness(&alg.degrees()[i], i, "degree").or_else(|| {
            (alg.degrees()[i] != alg.degrees()[sigma[i]]).then(|| {
                Witness::new(
                    vec![i],
                    Some(alg.degrees()[i].clone()),
                    format!("degree {i} differs from degree σ({i}) = {}", sigma[i]),
                )
            })
        })
    });
    report.record("degrees-positive-involution-invariant", degree_defect);

    let hom_defect = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let lhs = &alg.degrees()[i] * &alg.degrees()[j];
            let rhs = Cyclotomic::dot(
                (0..r).map(|k| (alg.lambda(i, j, k), &alg.degrees()[k])),
            );
            lhs != rhs
        })
        .map(|(i, j)| {
            Witness::new(
                vec![i, j],
                None,
                format!("δ(b_{i})·δ(b_{j}) ≠ Σ_k λ({i},{j},k)·δ(b_k)"),
            )
        });
    report.record("degree-homomorphism", hom_defect);

    let standard_defect = (0..r)
        .find(|&i| &alg.degrees()[i] != alg.lambda(i, sigma[i], 0))
        .map(|i| {
            Witness::new(
                vec![i],
                Some(alg.degrees()[i].clone()),
                format!("δ(b_{i}) ≠ λ({i},σ({i}),0)"),
            )
        });
    report.record("standard-basis", standard_defect);

    let degree_sum = alg.degrees().iter().fold(Cyclotomic::zero(), |acc, d| &acc + d);
    let order_defect = (&degree_sum != alg.order()).then(|| {
        Witness::new(
            vec![],
            Some(degree_sum.clone()),
            format!("degree sum {degree_sum} differs from recorded order {}", alg.order()),
        )
    });
    report.record("order-is-degree-sum", order_defect);

    let assoc_defect = (0..r)
        .flat_map(|i| {
            (0..r).flat_map(move |j| {
                (0..r).flat_map(move |k| (0..r).map(move |l| (i, j, k, l)))
            })
        })
        .find(|&(i, j, k, l)| {
            let lhs = Cyclotomic::dot((0..r).map(|m| (alg.lambda(i, j, m), alg.lambda(m, k, l))));
            let rhs = Cyclotomic::dot((0..r).map(|m| (alg.lambda(j, k, m), alg.lambda(i, m, l))));
            lhs != rhs
        })
        .map(|(i, j, k, l)| {
            Witness::new(
                vec![i, j, k, l],
                None,
                format!("(b_{i}b_{j})b_{k} and b_{i}(b_{j}b_{k}) disagree at b_{l}"),
            )
        });
    report.record("associative", assoc_defect);

    report
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

    fn rank2_triple(n: i64, d: i64) -> FourierTriple {
        let p = m(vec![vec![int(1), rat(n, d)], vec![int(1), int(-1)]]);
        FourierTriple::from_p_matrix(&p).unwrap()
    }

    #[test]
    fn two_point_fourier_matrix_passes_all_axioms() {
        let report = verify_fourier(&hadamard_fourier(), IntegralityConvention::Integer);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn two_point_constants_match_group_multiplication() {
        let triple = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        let sc = structure_constants(&triple);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let expected = if (i + j) % 2 == k { int(1) } else { int(0) };
                    assert_eq!(sc.n(i, j, k), &expected, "N({i},{j},{k})");
                    assert_eq!(sc.lambda(i, j, k), &expected, "λ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn rank_two_family_fails_only_integrality() {
        let triple = rank2_triple(4, 1);
        let report = verify_fourier(triple.fourier_matrix(), IntegralityConvention::Integer);
        assert!(report.check("unitary").unwrap().passed);
        assert!(report.check("symmetric").unwrap().passed);
        assert!(report.check("positive-first-column").unwrap().passed);
        let failed = report.check("integral-structure-constants").unwrap();
        assert!(!failed.passed);
        let witness = failed.witness.as_ref().unwrap();
        assert_eq!(witness.indices, vec![1, 1, 1]);
        assert_eq!(witness.value.as_ref().unwrap(), &rat(3, 2));
    }

    #[test]
    fn rank_two_family_constants_match_presentation() {
        // b₁² = n·b₀ + (n−1)·b₁ with n = 4.
        let sc = structure_constants(&rank2_triple(4, 1));
        assert_eq!(sc.lambda(1, 1, 0), &int(4));
        assert_eq!(sc.lambda(1, 1, 1), &int(3));
        assert_eq!(sc.n(1, 1, 1), &rat(3, 2));
        assert_eq!(sc.n(1, 1, 0), &int(1));
    }

    #[test]
    fn identity_matrix_verdicts_are_frozen() {
        let report = verify_fourier(&ExactMatrix::identity(2), IntegralityConvention::Integer);
        assert!(report.check("unitary").unwrap().passed);
        assert!(report.check("symmetric").unwrap().passed);
        let positive = report.check("positive-first-column").unwrap();
        assert!(!positive.passed);
        assert_eq!(positive.witness.as_ref().unwrap().indices, vec![1]);
        let integral = report.check("integral-structure-constants").unwrap();
        assert!(!integral.passed);
        assert_eq!(integral.witness.as_ref().unwrap().indices, vec![1]);
    }

    #[test]
    fn strict_convention_rejects_negative_constants() {
        // The n = 1 member is the two-element group table: all constants
        // are 0 or 1, so both conventions accept it.
        let triple = rank2_triple(1, 1);
        let lenient = verify_fourier(triple.fourier_matrix(), IntegralityConvention::Integer);
        let strict =
            verify_fourier(triple.fourier_matrix(), IntegralityConvention::NonnegativeInteger);
        assert!(lenient.all_pass());
        assert!(strict.all_pass());
        assert!(!constant_is_admissible(&int(-2), IntegralityConvention::NonnegativeInteger));
        assert!(constant_is_admissible(&int(-2), IntegralityConvention::Integer));
        assert!(!constant_is_admissible(&rat(1, 2), IntegralityConvention::Integer));
    }

    #[test]
    fn trivial_modular_datum_passes() {
        let s = m(vec![vec![int(1)]]);
        let t = m(vec![vec![int(1)]]);
        let report = verify_modular_datum(&s, &t, IntegralityConvention::Integer);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn hadamard_modular_datum_with_eighth_roots() {
        let s = hadamard_fourier();
        let t = m(vec![vec![zeta(8, 3), int(0)], vec![int(0), zeta(8, 1)]]);
        let report = verify_modular_datum(&s, &t, IntegralityConvention::Integer);
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn tampered_modular_data_are_rejected() {
        let s = hadamard_fourier();
        let not_root = m(vec![vec![rat(1, 2), int(0)], vec![int(0), zeta(8, 1)]]);
        let report = verify_modular_datum(&s, &not_root, IntegralityConvention::Integer);
        assert!(!report.check("finite-order").unwrap().passed);

        let wrong_phase = m(vec![vec![zeta(8, 2), int(0)], vec![int(0), zeta(8, 1)]]);
        let report = verify_modular_datum(&s, &wrong_phase, IntegralityConvention::Integer);
        assert!(report.check("finite-order").unwrap().passed);
        assert!(!report.check("modular-identity").unwrap().passed);

        let dense = m(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        let report = verify_modular_datum(&s, &dense, IntegralityConvention::Integer);
        assert!(!report.check("diagonal").unwrap().passed);
    }

    #[test]
    fn built_algebra_verifies_and_has_expected_shape() {
        let triple = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        let alg = build_calgebra(&triple, IntegralityConvention::Integer).unwrap();
        assert_eq!(alg.rank(), 2);
        assert_eq!(alg.degrees(), &[int(1), int(1)]);
        assert_eq!(alg.order(), &int(2));
        assert_eq!(alg.lambda(1, 1, 0), &int(1));
        assert!(verify_calgebra(&alg).all_pass());
    }

    #[test]
    fn build_rejects_non_fourier_input() {
        let triple = rank2_triple(4, 1);
        assert!(matches!(
            build_calgebra(&triple, IntegralityConvention::Integer),
            Err(FusionError::FourierAxiomsFailed(_))
        ));
    }

    #[test]
    fn rank_two_family_is_a_calgebra_even_without_fourier_axioms() {
        let alg = candidate_calgebra(&rank2_triple(4, 1));
        let report = verify_calgebra(&alg);
        assert!(report.all_pass(), "{report}");
        let fractional = candidate_calgebra(&rank2_triple(3, 2));
        assert!(verify_calgebra(&fractional).all_pass());
    }

    #[test]
    fn lambda_table_round_trip_derives_the_same_algebra() {
        let triple = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        let alg = build_calgebra(&triple, IntegralityConvention::Integer).unwrap();
        let rebuilt = CAlgebra::from_lambda_table(2, alg.lambda_table().to_vec()).unwrap();
        assert_eq!(&rebuilt, &alg);
    }

    #[test]
    fn tampered_support_is_reported_with_witness() {
        let triple = FourierTriple::from_fourier(&hadamard_fourier()).unwrap();
        let alg = build_calgebra(&triple, IntegralityConvention::Integer).unwrap();
        let mut lambda = alg.lambda_table().to_vec();
        lambda[2] = int(1); // λ(0,1,0): support where none belongs
        let tampered = CAlgebra::from_parts(
            2,
            lambda,
            alg.degrees().to_vec(),
            alg.involution().to_vec(),
            alg.order().clone(),
        )
        .unwrap();
        let report = verify_calgebra(&tampered);
        let support = report.check("support-at-identity").unwrap();
        assert!(!support.passed);
        assert_eq!(support.witness.as_ref().unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            CAlgebra::from_lambda_table(2, vec![int(1); 7]),
            Err(FusionError::TableShape { expected: 8, found: 7, .. })
        ));
        let mut lambda = vec![int(0); 8];
        lambda[0] = int(1); // λ(0,0,0) only; row 1 has no partner
        assert!(matches!(
            CAlgebra::from_lambda_table(2, lambda),
            Err(FusionError::InvolutionUnderdetermined { index: 1, count: 0 })
        ));
        assert!(matches!(
            CAlgebra::from_parts(1, vec![int(1)], vec![int(1)], vec![3], int(1)),
            Err(FusionError::InvolutionOutOfRange { index: 0, value: 3, rank: 1 })
        ));
    }

    #[test]
    fn constants_are_symmetric_in_the_first_two_indices() {
        let p = m(vec![
            vec![int(1), int(1), int(1)],
            vec![int(1), zeta(3, 1), zeta(3, 2)],
            vec![int(1), zeta(3, 2), zeta(3, 1)],
        ]);
        let sc = structure_constants(&FourierTriple::from_p_matrix(&p).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(sc.n(i, j, k), sc.n(j, i, k));
                    let expected = if (i + j) % 3 == k { int(1) } else { int(0) };
                    assert_eq!(sc.n(i, j, k), &expected);
                }
            }
        }
    }
}
