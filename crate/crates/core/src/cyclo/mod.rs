//! Exact cyclotomic numbers: rational linear combinations of roots of
//! unity, the scalar type underneath every matrix in this crate.
//!
//! Values are kept in canonical form at all times:
//!
//! * the stored order is the conductor — the least `n` with the value in
//!   ℚ(ζ_n) (rational values have order 1);
//! * coefficients are coordinates over a fixed basis of ℚ(ζ_n) (see
//!   [`basis`]), sorted by exponent with zeros dropped.
//!
//! Equality of canonical forms is therefore equality of values, and `==`
//! is both exact and cheap.  Arithmetic between different orders embeds
//! both operands into ℚ(ζ_lcm) and re-canonicalizes.
//!
//! Square roots of nonnegative rationals are produced exactly through
//! quadratic Gauss sums, and the sign of a real value is decided by a
//! certified interval refinement (see [`RealInterval`]) that starts at 128
//! bits and doubles up to a configurable cap.

pub(crate) mod basis;
mod interval;

pub use basis::basis_exponents;
pub use interval::{RealInterval, Sign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use thiserror::Error;

/// Errors from scalar arithmetic and sign determination.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact square root requested for a negative rational")]
    NegativeRadicand,
    #[error("sign requested for a value that is not real")]
    NotReal,
    #[error("sign undecided after refining to {bits} bits; raise the precision cap")]
    PrecisionExhausted { bits: u32 },
}

/// Process-wide cap for sign-refinement precision, adjustable once at
/// startup (for example from a command-line flag).
static SIGN_PRECISION_CAP: AtomicU32 = AtomicU32::new(4096);

/// Sets the maximum interval precision, in bits, that [`Cyclotomic::sign_real`]
/// may use before giving up.
pub fn set_sign_precision_cap(bits: u32) {
    SIGN_PRECISION_CAP.store(bits.max(1), Ordering::Relaxed);
}

/// Current maximum interval precision for sign refinement.
pub fn sign_precision_cap() -> u32 {
    SIGN_PRECISION_CAP.load(Ordering::Relaxed)
}

/// An element of a cyclotomic field ℚ(ζ_n), in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<(u64, BigRational)>,
}

fn lcm_checked(a: u64, b: u64) -> u64 {
    let g = a.gcd(&b);
    (a / g).checked_mul(b).expect("cyclotomic order overflow")
}

// ---- Constructors ---------------------------------------------------------

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Cyclotomic::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Cyclotomic::zero()
        } else {
            Cyclotomic { order: 1, coeffs: vec![(0, q)] }
        }
    }

    /// The root of unity e^{2πi·exp/order}; negative exponents wrap.
    pub fn root_of_unity(order: u64, exp: i64) -> Self {
        assert!(order >= 1, "root of unity needs a positive order");
        let e = (exp.rem_euclid(order as i64)) as u64;
        Cyclotomic::from_terms(order, [(e as i64, BigRational::one())])
    }

    /// Builds Σ coeff·ζ_order^exp from arbitrary raw terms and
    /// canonicalizes.  This is the general entry point; all arithmetic
    /// funnels through the same canonicalization.
    pub fn from_terms(
        order: u64,
        terms: impl IntoIterator<Item = (i64, BigRational)>,
    ) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let raw: Vec<(u64, BigRational)> = terms
            .into_iter()
            .map(|(e, c)| ((e.rem_euclid(order as i64)) as u64, c))
            .collect();
        let (order, coeffs) = basis::canonicalize(order, raw);
        Cyclotomic { order, coeffs }
    }
}

// ---- Queries --------------------------------------------------------------

impl Cyclotomic {
    /// The conductor: the least n with this value in ℚ(ζ_n).
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Basis coordinates (exponent, coefficient), sorted by exponent.
    pub fn coefficients(&self) -> &[(u64, BigRational)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs[0].1.is_one()
    }

    /// Exact rational value, when the conductor is 1.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.order, self.coeffs.len()) {
            (1, 0) => Some(BigRational::zero()),
            (1, 1) => Some(self.coeffs[0].1.clone()),
            _ => None,
        }
    }

    /// Exact integer value, when the value is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().and_then(|q| q.is_integer().then(|| q.to_integer()))
    }

    pub fn is_rational_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    /// True when the value equals its own complex conjugate.
    pub fn is_real(&self) -> bool {
        self == &self.conj()
    }
}

// ---- Arithmetic -----------------------------------------------------------

impl Cyclotomic {
    /// Multiplies every coefficient by a nonzero rational (the conductor
    /// and basis support are unchanged by rational scaling).
    fn scale(&self, q: &BigRational) -> Cyclotomic {
        debug_assert!(!q.is_zero());
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    fn add_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.order == 1 && other.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0].1 + &other.coeffs[0].1);
        }
        let n = lcm_checked(self.order, other.order);
        let (fa, fb) = (n / self.order, n / other.order);
        let embed = |coeffs: &[(u64, BigRational)], f: u64| {
            coeffs
                .iter()
                .map(|(e, c)| (((*e as u128 * f as u128) % n as u128) as u64, c.clone()))
                .collect::<Vec<_>>()
        };
        let mut terms = embed(&self.coeffs, fa);
        terms.extend(embed(&other.coeffs, fb));
        let (order, coeffs) = basis::canonicalize(n, terms);
        Cyclotomic { order, coeffs }
    }

    fn mul_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.order == 1 {
            return other.scale(&self.coeffs[0].1);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0].1);
        }
        Cyclotomic::dot([(self, other)])
    }

    /// Exact Σ xᵢ·yᵢ with a single canonicalization at the end; the
    /// workhorse for matrix products and structure-constant sums.
    pub fn dot<'a, I>(pairs: I) -> Cyclotomic
    where
        I: IntoIterator<Item = (&'a Cyclotomic, &'a Cyclotomic)>,
    {
        let pairs: Vec<_> = pairs
            .into_iter()
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .collect();
        if pairs.is_empty() {
            return Cyclotomic::zero();
        }
        if pairs.iter().all(|(a, b)| a.order == 1 && b.order == 1) {
            let mut sum = BigRational::zero();
            for (a, b) in pairs {
                sum += &a.coeffs[0].1 * &b.coeffs[0].1;
            }
            return Cyclotomic::from_rational(sum);
        }
        let n = pairs
            .iter()
            .fold(1u64, |acc, (a, b)| lcm_checked(acc, lcm_checked(a.order, b.order)));
        let mut terms = Vec::new();
        for (a, b) in pairs {
            let (fa, fb) = ((n / a.order) as u128, (n / b.order) as u128);
            for (ea, ca) in &a.coeffs {
                for (eb, cb) in &b.coeffs {
                    let e = ((*ea as u128 * fa + *eb as u128 * fb) % n as u128) as u64;
                    terms.push((e, ca * cb));
                }
            }
        }
        let (order, coeffs) = basis::canonicalize(n, terms);
        Cyclotomic { order, coeffs }
    }

    /// Applies the field automorphism ζ_n ↦ ζ_n^t (t must be a unit mod
    /// the conductor).
    pub(crate) fn galois(&self, t: u64) -> Cyclotomic {
        assert!(
            t.gcd(&self.order) == 1,
            "galois exponent {t} is not a unit modulo {}",
            self.order
        );
        let n = self.order;
        let terms: Vec<(u64, BigRational)> = self
            .coeffs
            .iter()
            .map(|(e, c)| (((*e as u128 * t as u128) % n as u128) as u64, c.clone()))
            .collect();
        let (order, coeffs) = basis::canonicalize(n, terms);
        Cyclotomic { order, coeffs }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclotomic {
        if self.order == 1 {
            self.clone()
        } else {
            self.galois(self.order - 1)
        }
    }

    /// |x|² = x·conj(x), always real and nonnegative.
    pub fn abs_sq(&self) -> Cyclotomic {
        self.mul_ref(&self.conj())
    }

    /// x^k by binary exponentiation (k ≥ 0).
    pub fn pow(&self, k: u64) -> Cyclotomic {
        let mut result = Cyclotomic::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Exact multiplicative inverse.
    ///
    /// # Errors
    /// [`CycloError::DivisionByZero`] when the value is zero.
    pub fn inv(&self) -> Result<Cyclotomic, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclotomic::from_rational(q.recip()));
        }
        if self.coeffs.len() == 1 {
            // c·ζ^e inverts to c⁻¹·ζ^{−e} without touching the norm.
            let (e, c) = (self.coeffs[0].0, &self.coeffs[0].1);
            let root = Cyclotomic::root_of_unity(self.order, -(e as i64));
            return Ok(root.scale(&c.recip()));
        }
        // When x·conj(x) is rational — true of square roots of rationals
        // and of most unitary-matrix entries — the inverse is
        // conj(x)/|x|², avoiding the full Galois-orbit product whose
        // intermediates blow up on dense values like Gauss sums.
        let conjugate = self.conj();
        if let Some(q) = self.mul_ref(&conjugate).as_rational() {
            assert!(!q.is_zero(), "|x|² of a nonzero value is nonzero");
            return Ok(conjugate.scale(&q.recip()));
        }
        // General case: solve x·y = 1 as a rational linear system.  The
        // coordinates of x·ζ^b for each basis exponent b form the columns
        // of the multiplication-by-x matrix; Gaussian elimination costs
        // O(φ(n)³) rational operations, with polynomial coefficient
        // growth — unlike a Galois-orbit product, whose intermediate
        // coefficients compound multiplicatively on dense values.
        Ok(self.inv_by_linear_solve())
    }

    fn inv_by_linear_solve(&self) -> Cyclotomic {
        let n = self.order;
        let od = basis::OrderData::new(n);
        let exps = basis::basis_exponents(n);
        let dim = exps.len();
        let slot_of: std::collections::HashMap<u64, usize> =
            exps.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        // Augmented system rows: [ M | coords(1) ] with M[:, j] the basis
        // coordinates of x·ζ^{exps[j]}.
        let mut rows = vec![vec![BigRational::zero(); dim + 1]; dim];
        for (j, &bj) in exps.iter().enumerate() {
            let shifted = self
                .coeffs
                .iter()
                .map(|(e, c)| (((*e as u128 + bj as u128) % n as u128) as u64, c.clone()));
            for (exp, coeff) in basis::to_basis(&od, shifted) {
                rows[slot_of[&exp]][j] = coeff;
            }
        }
        for (exp, coeff) in basis::to_basis(&od, [(0u64, BigRational::one())]) {
            rows[slot_of[&exp]][dim] = coeff;
        }

        for k in 0..dim {
            let pivot_row = (k..dim)
                .find(|&r| !rows[r][k].is_zero())
                .expect("multiplication by a nonzero cyclotomic is invertible");
            rows.swap(k, pivot_row);
            let pivot = rows[k][k].clone();
            for cell in &mut rows[k][k..] {
                *cell /= &pivot;
            }
            let pivot_tail: Vec<BigRational> = rows[k][k..].to_vec();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == k || row[k].is_zero() {
                    continue;
                }
                let factor = row[k].clone();
                for (cell, pivot_cell) in row[k..].iter_mut().zip(&pivot_tail) {
                    *cell -= &factor * pivot_cell;
                }
            }
        }

        let terms: Vec<(i64, BigRational)> = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| (e as i64, rows[i][dim].clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Cyclotomic::from_terms(n, terms)
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(&-rhs)
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

// ---- Exact square roots ---------------------------------------------------

/// Splits n = a²·m with m squarefree, by trial division.
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut rem = n.clone();
    let mut a = BigUint::one();
    let mut m = BigUint::one();
    let two = BigUint::from(2u32);
    let mut p = two.clone();
    while &p * &p <= rem {
        let mut e = 0u32;
        while (&rem % &p).is_zero() {
            rem /= &p;
            e += 1;
        }
        if e > 0 {
            a *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= &p;
            }
        }
        p += if p == two { 1u32 } else { 2u32 };
    }
    if rem > BigUint::one() {
        m *= rem;
    }
    (a, m)
}

/// The quadratic Gauss sum Σ_{k=0}^{m−1} ζ_m^{k²}, which evaluates to √m
/// for m ≡ 1 (mod 4) and to i·√m for m ≡ 3 (mod 4).
fn gauss_sum(m: u64) -> Cyclotomic {
    Cyclotomic::from_terms(
        m,
        (0..m).map(|k| (((k as u128 * k as u128) % m as u128) as i64, BigRational::one())),
    )
}

/// √m for squarefree m ≥ 1, as an exact cyclotomic with positive real
/// evaluation.
fn sqrt_squarefree(m: u64) -> Cyclotomic {
    let mut root = Cyclotomic::one();
    let modd = if m.is_multiple_of(2) {
        // √2 = ζ₈ − ζ₈³
        root = &Cyclotomic::root_of_unity(8, 1) - &Cyclotomic::root_of_unity(8, 3);
        m / 2
    } else {
        m
    };
    if modd > 1 {
        let g = gauss_sum(modd);
        let factor = if modd % 4 == 1 {
            g
        } else {
            // g = i·√m, so √m = ζ₄³·g.
            &Cyclotomic::root_of_unity(4, 3) * &g
        };
        root = &root * &factor;
    }
    root
}

impl Cyclotomic {
    /// The exact nonnegative square root of a nonnegative rational, as a
    /// cyclotomic number (via quadratic Gauss sums).  The result `x`
    /// satisfies x² = q exactly and evaluates to the nonnegative real root.
    ///
    /// # Errors
    /// [`CycloError::NegativeRadicand`] when `q < 0`.
    pub fn sqrt_nonneg_rational(q: &BigRational) -> Result<Cyclotomic, CycloError> {
        if q.is_negative() {
            return Err(CycloError::NegativeRadicand);
        }
        if q.is_zero() {
            return Ok(Cyclotomic::zero());
        }
        let (a_num, m_num) = split_square(q.numer().magnitude());
        let (a_den, m_den) = split_square(q.denom().magnitude());
        // √(N/D) = (a_N·a_D/D)·√(m_N·m_D); the radicand stays squarefree
        // because N and D are coprime.
        let m: u64 = (&m_num * &m_den)
            .to_u64()
            .expect("squarefree part too large for a cyclotomic order");
        let coeff = BigRational::new(BigInt::from(a_num * a_den), q.denom().clone());
        Ok(sqrt_squarefree(m).scale(&coeff))
    }
}

// ---- Numeric enclosures and signs ------------------------------------------

impl Cyclotomic {
    /// Certified enclosures of the real and imaginary parts, with roughly
    /// `precision_bits` bits of absolute precision.  The true value always
    /// lies inside both intervals.
    pub fn eval_interval(&self, precision_bits: u32) -> (RealInterval, RealInterval) {
        interval::eval_terms(self.order, &self.coeffs, precision_bits)
    }

    /// Exact sign of a real value, refining interval precision from 128
    /// bits up to the process-wide cap (see [`set_sign_precision_cap`]).
    ///
    /// # Errors
    /// [`CycloError::NotReal`] when the value differs from its conjugate;
    /// [`CycloError::PrecisionExhausted`] when the cap is reached without
    /// a decision (only possible for nonzero values extremely close to 0).
    pub fn sign_real(&self) -> Result<Sign, CycloError> {
        self.sign_real_with_cap(sign_precision_cap())
    }

    /// As [`Cyclotomic::sign_real`], with an explicit precision cap.
    pub fn sign_real_with_cap(&self, max_bits: u32) -> Result<Sign, CycloError> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        if !self.is_real() {
            return Err(CycloError::NotReal);
        }
        // The value is exactly nonzero (its canonical form is nonempty), so
        // a shrinking enclosure must eventually exclude zero.
        let mut bits: u32 = 128;
        loop {
            let (re, _) = self.eval_interval(bits);
            if re.lo().is_positive() {
                return Ok(Sign::Positive);
            }
            if re.hi().is_negative() {
                return Ok(Sign::Negative);
            }
            if bits >= max_bits {
                return Err(CycloError::PrecisionExhausted { bits });
            }
            bits = bits.saturating_mul(2).min(max_bits);
        }
    }
}

// ---- Formatting -----------------------------------------------------------

/// Canonical textual form: `0`, a plain rational for conductor 1, and
/// otherwise a signed sum of `coeff*E(n)^k` terms in ascending exponent
/// order.  The expression parser accepts exactly this shape, so printing
/// and parsing round-trip.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0].1);
        }
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "E({})", self.order)?;
                if *e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
