//! Certified enclosures for the real and imaginary parts of cyclotomic
//! values.
//!
//! All decisions in this crate are exact; interval arithmetic is used for
//! exactly one purpose, deciding the sign of a value already known to be
//! real and nonzero.  Enclosures are computed in fixed-point dyadic
//! arithmetic (big integers scaled by 2^−W) with directed rounding, so an
//! enclosure is a mathematical guarantee, not an estimate: the true value
//! always lies inside the returned interval, and widths shrink
//! geometrically as the requested precision grows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval with exact rational endpoints, guaranteed to contain
/// the real number it encloses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RealInterval {
    /// Builds an interval; panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

/// Sign of a real value, decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

// ---- Dyadic fixed-point intervals ----------------------------------------
//
// A `Dy` holds integer endpoints at an implicit scale 2^−W shared by the
// whole computation; [lo, hi] encloses value·2^W.

#[derive(Debug, Clone)]
pub(crate) struct Dy {
    lo: BigInt,
    hi: BigInt,
}

impl Dy {
    fn zero() -> Self {
        Dy { lo: BigInt::zero(), hi: BigInt::zero() }
    }

    fn add(&self, other: &Dy) -> Dy {
        Dy { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    /// Widens both endpoints outward by `ulps` units in the last place.
    fn widen(&self, ulps: u64) -> Dy {
        let d = BigInt::from(ulps);
        Dy { lo: &self.lo - &d, hi: &self.hi + &d }
    }
}

/// floor(x / 2^s) — BigInt shr is an arithmetic shift, i.e. floor division.
fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    x >> s
}

fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

/// Product of two dyadic intervals at scale `s`.
fn dy_mul(a: &Dy, b: &Dy, s: u32) -> Dy {
    let cands = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = cands.iter().min().unwrap();
    let hi = cands.iter().max().unwrap();
    Dy { lo: shr_floor(lo, s), hi: shr_ceil(hi, s) }
}

/// Product of a dyadic interval with an exact rational (scale preserved).
fn dy_mul_rational(a: &Dy, q: &BigRational) -> Dy {
    let c1 = &a.lo * q.numer();
    let c2 = &a.hi * q.numer();
    let (plo, phi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
    Dy { lo: plo.div_floor(q.denom()), hi: phi.div_ceil(q.denom()) }
}

/// Division of a dyadic interval by an exact positive integer.
fn dy_div_int(a: &Dy, d: &BigInt, _s: u32) -> Dy {
    debug_assert!(d.is_positive());
    Dy { lo: a.lo.div_floor(d), hi: a.hi.div_ceil(d) }
}

/// Enclosure of arctan(1/x) at scale `s` for integer x ≥ 2, by the
/// alternating Taylor series (terms decrease monotonically, so the
/// truncation error is bounded by the first omitted term).
fn atan_recip(x: u64, s: u32) -> Dy {
    let unit = BigInt::one() << s;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut xpow = BigInt::from(x); // x^{2k+1}
    let mut k: u64 = 0;
    let mut acc = Dy::zero();
    loop {
        let denom = BigInt::from(2 * k + 1) * &xpow;
        let t_lo = unit.div_floor(&denom);
        let t_hi = unit.div_ceil(&denom);
        if t_hi.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            acc.lo += &t_lo;
            acc.hi += &t_hi;
        } else {
            acc.lo -= &t_hi;
            acc.hi -= &t_lo;
        }
        if t_hi <= BigInt::one() {
            break;
        }
        xpow *= &x2;
        k += 1;
    }
    // Truncation remainder is at most the next term, itself below one ulp
    // at the stopping point; widen generously.
    acc.widen(2)
}

/// Enclosure of π at scale `s` (Machin's formula).
pub(crate) fn pi_dy(s: u32) -> Dy {
    let a = atan_recip(5, s + 8);
    let b = atan_recip(239, s + 8);
    let sixteen_a = Dy { lo: &a.lo * 16, hi: &a.hi * 16 };
    let four_b = Dy { lo: &b.lo * 4, hi: &b.hi * 4 };
    let pi = sixteen_a.add(&Dy { lo: -&four_b.hi, hi: -&four_b.lo });
    Dy { lo: shr_floor(&pi.lo, 8), hi: shr_ceil(&pi.hi, 8) }.widen(1)
}

/// Enclosures of cos θ and sin θ for θ enclosed by `theta` ⊆ [0, 0.8],
/// where the alternating series' terms decrease from the first.
fn cos_sin_taylor(theta: &Dy, s: u32) -> (Dy, Dy) {
    debug_assert!(!theta.lo.is_negative());
    let theta2 = dy_mul(theta, theta, s);
    let unit = BigInt::one() << s;

    let sum_alternating = |first_denom_step: u64| -> Dy {
        // cos: denominators (2k)!  (step base 0); sin reduced: (2k+1)!
        let mut acc = Dy { lo: unit.clone(), hi: unit.clone() };
        let mut pow = Dy { lo: unit.clone(), hi: unit.clone() };
        let mut fact = BigInt::one();
        let mut m: u64 = first_denom_step; // factorial argument so far
        let mut k: u64 = 0;
        loop {
            pow = dy_mul(&pow, &theta2, s);
            fact *= BigInt::from(m + 1) * BigInt::from(m + 2);
            m += 2;
            k += 1;
            let term = dy_div_int(&pow, &fact, s);
            if k % 2 == 1 {
                acc.lo -= &term.hi;
                acc.hi -= &term.lo;
            } else {
                acc.lo += &term.lo;
                acc.hi += &term.hi;
            }
            if term.hi <= BigInt::one() {
                break;
            }
        }
        acc.widen(2)
    };

    let cos = sum_alternating(0);
    let sin_reduced = sum_alternating(1); // Σ (−θ²)^k/(2k+1)!
    let sin = dy_mul(theta, &sin_reduced, s);
    (cos, sin)
}

/// Enclosures of cos(2π·t) and sin(2π·t) for an exact rational t ∈ [0, 1).
pub(crate) fn trig_of_turn(t: &BigRational, s: u32) -> (Dy, Dy) {
    debug_assert!(!t.is_negative() && t < &BigRational::one());
    let four = BigRational::from_integer(BigInt::from(4));
    let q: u8 = (t * &four).floor().to_integer().to_u8().expect("turn fraction in [0,1)");
    let frac = t - BigRational::new(BigInt::from(q), BigInt::from(4));
    // frac ∈ [0, 1/4); mirror across 1/8 so the series argument stays ≤ π/4.
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let (arg, mirrored) = if frac > eighth { (&quarter - &frac, true) } else { (frac, false) };
    let pi = pi_dy(s);
    let theta = dy_mul_rational(&pi, &(&arg * BigRational::from_integer(BigInt::from(2))));
    let (c, sn) = cos_sin_taylor(&theta, s);
    let (c, sn) = if mirrored { (sn, c) } else { (c, sn) };
    match q {
        0 => (c, sn),
        1 => (Dy { lo: -&sn.hi, hi: -&sn.lo }, c),
        2 => (Dy { lo: -&c.hi, hi: -&c.lo }, Dy { lo: -&sn.hi, hi: -&sn.lo }),
        _ => (sn, Dy { lo: -&c.hi, hi: -&c.lo }),
    }
}

/// Evaluates Σ coeff·e^{2πi·exp/order} to certified real and imaginary
/// enclosures with roughly `bits` bits of absolute precision.
pub(crate) fn eval_terms(
    order: u64,
    terms: &[(u64, BigRational)],
    bits: u32,
) -> (RealInterval, RealInterval) {
    let s = bits + 32;
    let mut re = Dy::zero();
    let mut im = Dy::zero();
    for (exp, coeff) in terms {
        let t = BigRational::new(BigInt::from(*exp), BigInt::from(order));
        let (c, sn) = trig_of_turn(&t, s);
        re = re.add(&dy_mul_rational(&c, coeff));
        im = im.add(&dy_mul_rational(&sn, coeff));
    }
    let denom = BigInt::one() << s;
    let to_iv = |d: Dy| RealInterval::new(
        BigRational::new(d.lo, denom.clone()),
        BigRational::new(d.hi, denom.clone()),
    );
    (to_iv(re), to_iv(im))
}
