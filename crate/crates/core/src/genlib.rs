//! Corpus generators: character tables of finite abelian groups (known
//! to pass every axiom), Kronecker products for enriching the corpus,
//! and the rank-2 one-parameter family of honest C-algebras that fail
//! the integrality axiom for most parameter values.
//!
//! The enumeration helpers double as independent test oracles: a
//! generated group knows its own invariant factors via
//! [`canonical_invariant_factors`], letting classification results be
//! checked against the generator rather than against themselves.

use crate::cyclo::basis::factorize;
use crate::cyclo::Cyclotomic;
use crate::linalg::ExactMatrix;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

/// Errors from corpus-generator construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("cyclic factor {value} at position {index} must be at least 2")]
    InvalidFactor { index: usize, value: u64 },
}

/// A finite abelian group presented as a product of cyclic factors, e.g.
/// `[2, 2, 3]` for the product of two 2-cycles and a 3-cycle.  The empty
/// product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    factors: Vec<u64>,
}

impl AbelianGroupSpec {
    /// Validates that every cyclic factor is at least 2.
    pub fn new(factors: Vec<u64>) -> Result<Self, GenError> {
        if let Some((index, &value)) =
            factors.iter().enumerate().find(|(_, &f)| f < 2)
        {
            return Err(GenError::InvalidFactor { index, value });
        }
        Ok(AbelianGroupSpec { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroupSpec { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// The group order: the product of the cyclic factors.
    pub fn order(&self) -> u64 {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &f| acc.checked_mul(f))
            .expect("group order overflows u64")
    }

    /// The group's invariant factors in canonical ascending form.
    pub fn invariant_factors(&self) -> Vec<u64> {
        canonical_invariant_factors(&self.factors)
    }

    /// Digits of element `index` in the mixed-radix system of the
    /// factors, most significant first (lexicographic enumeration).
    fn digits(&self, mut index: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.factors.len()];
        for (slot, &f) in self.factors.iter().enumerate().rev() {
            digits[slot] = index % f;
            index /= f;
        }
        digits
    }
}

/// The character table of a finite abelian group as a `P`-matrix: entry
/// (a, b) is the product over factors f of ζ_{n_f}^{a_f·b_f}, with
/// elements and characters enumerated lexicographically.  Row and column
/// 0 are all ones and the table is symmetric.
pub fn abelian_character_table(spec: &AbelianGroupSpec) -> ExactMatrix {
    let order = spec.order() as usize;
    let rows: Vec<Vec<Cyclotomic>> = (0..order)
        .map(|a| {
            let a_digits = spec.digits(a as u64);
            (0..order)
                .map(|b| {
                    let b_digits = spec.digits(b as u64);
                    spec.factors
                        .iter()
                        .zip(a_digits.iter().zip(&b_digits))
                        .fold(Cyclotomic::one(), |acc, (&f, (&af, &bf))| {
                            &acc * &Cyclotomic::root_of_unity(f, (af * bf) as i64)
                        })
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).expect("rows are uniform")
}

/// Kronecker product: entry ((i·rows(B)+k), (j·cols(B)+l)) is
/// A(i,j)·B(k,l).  Preserves symmetry, unitarity, positive first column,
/// and integral structure constants, so products of Fourier matrices are
/// Fourier matrices.
pub fn tensor_product(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ExactMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, a.at(i, j) * b.at(k, l));
                }
            }
        }
    }
    out
}

/// The rank-2 `P`-matrix family [[1, n], [1, −1]] for positive rational
/// n: always a C-algebra (b₁² = n·b₀ + (n−1)·b₁), a Fourier matrix only
/// for n = 1.
///
/// # Panics
/// If `n` is not positive.
pub fn rank2_family(n: &BigRational) -> ExactMatrix {
    assert!(n.is_positive(), "the rank-2 family requires a positive parameter");
    ExactMatrix::from_rows(vec![
        vec![Cyclotomic::one(), Cyclotomic::from_rational(n.clone())],
        vec![Cyclotomic::one(), Cyclotomic::from_integer(-1)],
    ])
    .expect("fixed shape")
}

/// All descending partitions of `n` (standard recursive enumeration,
/// deterministic order).
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn extend(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            extend(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every isomorphism type of abelian group of order 1..=`max_order`,
/// one spec per type, in deterministic order (by order, then by the
/// prime-power partition enumeration).  The factor lists use prime-power
/// cyclic factors grouped by prime, e.g. order 12 yields [4, 3] and
/// [2, 2, 3].
pub fn all_abelian_specs_up_to(max_order: u64) -> Vec<AbelianGroupSpec> {
    let mut specs = Vec::new();
    for n in 1..=max_order {
        // One choice of partition per prime; the cross product of those
        // choices enumerates the isomorphism types of order n.
        let prime_partitions: Vec<(u64, Vec<Vec<u32>>)> = factorize(n)
            .into_iter()
            .map(|(p, e)| (p, partitions(e)))
            .collect();
        let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
        for (p, parts) in &prime_partitions {
            combos = combos
                .into_iter()
                .flat_map(|base| {
                    parts.iter().map(move |partition| {
                        let mut next = base.clone();
                        next.extend(partition.iter().map(|&e| p.pow(e)));
                        next
                    })
                })
                .collect();
        }
        for factors in combos {
            specs.push(AbelianGroupSpec::new(factors).expect("prime powers are ≥ 2"));
        }
    }
    specs
}

/// Canonical invariant factors of the abelian group defined by an
/// arbitrary cyclic-factor list: ascending, each dividing the next,
/// trivial factors dropped.  Computed by merging the per-prime exponent
/// partitions positionally — independent of any Cayley-table analysis,
/// which is what makes it a useful oracle.
pub fn canonical_invariant_factors(factors: &[u64]) -> Vec<u64> {
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &f in factors {
        for (p, e) in factorize(f) {
            match per_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, es)) => es.push(e),
                None => per_prime.push((p, vec![e])),
            }
        }
    }
    for (_, es) in &mut per_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
    }
    let width = per_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    let mut merged: Vec<u64> = (0..width)
        .map(|t| {
            per_prime
                .iter()
                .map(|(p, es)| p.pow(es.get(t).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    merged.reverse();
    merged.retain(|&f| f != 1);
    merged
}
