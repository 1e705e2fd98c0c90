//! Canonical bases for cyclotomic fields.
//!
//! Values of [`crate::cyclo::Cyclotomic`] are stored over a root-of-unity
//! basis with two properties that make structural equality meaningful:
//!
//! * for fixed order `n` the admitted exponents form a ℚ-vector-space basis
//!   of ℚ(ζ_n), so coefficient vectors are unique, and
//! * a value that lies in a smaller cyclotomic field is rewritten over that
//!   field, so the stored order is always the conductor.
//!
//! The basis is the classical one used by computer-algebra systems for
//! cyclotomic arithmetic (Zumbroich's basis).  For each prime power
//! q = p^e dividing n exactly, associate to an exponent `i` its digit
//! α = i·(n/q)⁻¹ mod q (the exponent of the ζ_q factor in the product
//! decomposition ζ_n^i = Π_q ζ_q^α).  The exponent is admitted when every
//! digit lies in a local index set J_q:
//!
//! * p = 2: J_q = {0, …, q/2 − 1};
//! * p odd: write α = p^{e−1}·hi + lo, where lo is the balanced
//!   representative of α mod p^{e−1} (base-p digits in
//!   [−(p−1)/2, (p−1)/2]); then J_q requires hi ≠ 0.
//!
//! |J_q| = φ(q), so the admitted exponents number φ(n); rewriting shows
//! they span, hence they are a basis.  Rewriting uses two exact identities
//! only: orbit sums of p-th roots vanish (applied as an exponent shift by
//! n/p, which moves the digit at p by p^{e−1} and no other digit), and
//! ζ_n^{n/2} = −1.  Conductor reduction descends one prime at a time; in
//! digit coordinates each descent carries basis exponents to basis
//! exponents, so no re-expansion is needed afterwards.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Prime factorization by trial division, smallest prime first.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Modular inverse of `a` modulo `m` (requires gcd(a, m) = 1, m ≥ 1).
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "inv_mod: {a} is not a unit modulo {m}");
    t0.rem_euclid(m as i128) as u64
}

/// One prime-power component q = p^e of an order, with the cofactor data
/// needed to extract digits.
#[derive(Debug, Clone, Copy)]
struct Component {
    p: u64,
    e: u32,
    q: u64,
    /// (order/q)⁻¹ mod q — converts a residue into the digit at this prime.
    cof_inv: u64,
}

/// Factorization of an order together with digit accessors.
#[derive(Debug, Clone)]
pub(crate) struct OrderData {
    order: u64,
    comps: Vec<Component>,
}

impl OrderData {
    pub(crate) fn new(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let comps = factorize(order)
            .into_iter()
            .map(|(p, e)| {
                let q = p.pow(e);
                let cof = (order / q) % q;
                Component { p, e, q, cof_inv: inv_mod(cof, q) }
            })
            .collect();
        OrderData { order, comps }
    }

    /// Digit of exponent `i` at component `c`: i·(order/q)⁻¹ mod q.
    fn digit(&self, c: &Component, i: u64) -> u64 {
        (((i % c.q) as u128 * c.cof_inv as u128) % c.q as u128) as u64
    }

    /// Global exponent with the given digits (one per component, in order).
    fn exponent(&self, digits: &[u64]) -> u64 {
        let mut acc: u128 = 0;
        for (c, &d) in self.comps.iter().zip(digits) {
            acc += (self.order / c.q) as u128 * d as u128;
        }
        (acc % self.order as u128) as u64
    }
}

/// The `hi` part of an odd-prime digit: α = p^{e−1}·hi + lo with balanced
/// lo.  The digit is admitted exactly when hi ≠ 0.
fn odd_digit_hi(alpha: u64, p: u64, e: u32) -> u64 {
    let pe1 = p.pow(e - 1) as i128;
    let p_i = p as i128;
    let mut x = alpha as i128 % pe1;
    let mut lo = 0i128;
    let mut scale = 1i128;
    for _ in 0..(e - 1) {
        let mut d = x % p_i;
        if d > (p_i - 1) / 2 {
            d -= p_i;
        }
        lo += d * scale;
        x = (x - d) / p_i;
        scale *= p_i;
    }
    ((alpha as i128 - lo) / pe1).rem_euclid(p_i) as u64
}

/// Rewrite raw terms over order `n` into basis coefficients (exponent →
/// coefficient, zero coefficients dropped).  The order itself is not
/// reduced here.
pub(crate) fn to_basis(
    od: &OrderData,
    terms: impl IntoIterator<Item = (u64, BigRational)>,
) -> BTreeMap<u64, BigRational> {
    let n = od.order;
    let mut work: Vec<(u64, BigRational)> = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i % n, c))
        .collect();
    for c in &od.comps {
        let mut next: Vec<(u64, BigRational)> = Vec::with_capacity(work.len());
        if c.p == 2 {
            let top = c.q / 2;
            let half = n / 2;
            for (i, coeff) in work.drain(..) {
                if od.digit(c, i) < top {
                    next.push((i, coeff));
                } else {
                    next.push((((i as u128 + half as u128) % n as u128) as u64, -coeff));
                }
            }
        } else {
            let shift = n / c.p;
            for (i, coeff) in work.drain(..) {
                if odd_digit_hi(od.digit(c, i), c.p, c.e) != 0 {
                    next.push((i, coeff));
                } else {
                    for j in 1..c.p {
                        let i2 = ((i as u128 + j as u128 * shift as u128) % n as u128) as u64;
                        next.push((i2, -coeff.clone()));
                    }
                }
            }
        }
        work = next;
    }
    let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (i, coeff) in work {
        let slot = map.entry(i).or_insert_with(BigRational::zero);
        *slot += coeff;
    }
    map.retain(|_, coeff| !coeff.is_zero());
    map
}

/// Try to rewrite basis coefficients over a single-prime-smaller order.
/// Returns the new order and coefficients (still in basis form) on success.
fn reduce_once(
    od: &OrderData,
    coeffs: &BTreeMap<u64, BigRational>,
) -> Option<(u64, BTreeMap<u64, BigRational>)> {
    let n = od.order;
    for (idx, c) in od.comps.iter().enumerate() {
        // Transcribe every exponent's digits, with the digit at `c`
        // transformed or removed, onto the smaller order.
        let descend = |new_order: u64,
                       map_digit: &dyn Fn(u64) -> Option<u64>,
                       items: &mut dyn Iterator<Item = (u64, BigRational)>|
         -> (u64, BTreeMap<u64, BigRational>) {
            let nd = OrderData::new(new_order);
            let out = items
                .map(|(i, coeff)| {
                    let digits: Vec<u64> = od
                        .comps
                        .iter()
                        .enumerate()
                        .filter_map(|(k, ck)| {
                            if k == idx {
                                map_digit(od.digit(ck, i))
                            } else {
                                Some(od.digit(ck, i))
                            }
                        })
                        .collect();
                    (nd.exponent(&digits), coeff)
                })
                .collect();
            (new_order, out)
        };

        if c.p == 2 {
            if c.e == 1 {
                // ℚ(ζ_n) = ℚ(ζ_{n/2}) for n ≡ 2 (mod 4); the digit at 2 is
                // always 0, so the component simply drops.
                let mut items = coeffs.iter().map(|(&i, co)| (i, co.clone()));
                return Some(descend(n / 2, &|_| None, &mut items));
            } else if c.e == 2 {
                if coeffs.keys().all(|&i| od.digit(c, i) == 0) {
                    let mut items = coeffs.iter().map(|(&i, co)| (i, co.clone()));
                    return Some(descend(n / 4, &|_| None, &mut items));
                }
            } else if coeffs.keys().all(|&i| od.digit(c, i).is_multiple_of(2)) {
                let mut items = coeffs.iter().map(|(&i, co)| (i, co.clone()));
                return Some(descend(n / 2, &|d| Some(d / 2), &mut items));
            }
        } else if c.e >= 2 {
            if coeffs.keys().all(|&i| od.digit(c, i).is_multiple_of(c.p)) {
                let mut items = coeffs.iter().map(|(&i, co)| (i, co.clone()));
                return Some(descend(n / c.p, &|d| Some(d / c.p), &mut items));
            }
        } else {
            // p odd, e = 1: the value descends exactly when, in every class
            // of exponents sharing all other digits, the p−1 conjugate
            // roots appear with one shared coefficient (their sum is the
            // negated class root).
            let rest = n / c.p;
            let mut groups: BTreeMap<u64, Vec<(u64, &BigRational)>> = BTreeMap::new();
            for (&i, coeff) in coeffs {
                groups.entry(i % rest).or_default().push((i, coeff));
            }
            let ok = groups.values().all(|g| {
                g.len() == (c.p - 1) as usize && g.windows(2).all(|w| w[0].1 == w[1].1)
            });
            if ok {
                let mut items = groups
                    .values()
                    .map(|g| (g[0].0, -g[0].1.clone()));
                return Some(descend(rest, &|_| None, &mut items));
            }
        }
    }
    None
}

/// Full canonicalization: rewrite raw terms over order `n` into the basis
/// of the conductor.  Returns the conductor and the sorted coefficient
/// vector.
pub(crate) fn canonicalize(
    order: u64,
    terms: impl IntoIterator<Item = (u64, BigRational)>,
) -> (u64, Vec<(u64, BigRational)>) {
    let mut od = OrderData::new(order);
    let mut coeffs = to_basis(&od, terms);
    loop {
        if coeffs.is_empty() {
            return (1, Vec::new());
        }
        if od.order == 1 {
            break;
        }
        match reduce_once(&od, &coeffs) {
            Some((new_order, new_coeffs)) => {
                od = OrderData::new(new_order);
                coeffs = new_coeffs;
            }
            None => break,
        }
    }
    (od.order, coeffs.into_iter().collect())
}

/// The admitted exponent set for order `n`, sorted ascending.  The set has
/// φ(n) elements; it is exposed for tests and diagnostics.
pub fn basis_exponents(n: u64) -> Vec<u64> {
    let od = OrderData::new(n);
    let mut exps: Vec<Vec<u64>> = vec![Vec::new()];
    for c in &od.comps {
        let locals: Vec<u64> = if c.p == 2 {
            (0..c.q / 2).collect()
        } else {
            (0..c.q).filter(|&a| odd_digit_hi(a, c.p, c.e) != 0).collect()
        };
        let mut next = Vec::with_capacity(exps.len() * locals.len());
        for ds in &exps {
            for &l in &locals {
                let mut d = ds.clone();
                d.push(l);
                next.push(d);
            }
        }
        exps = next;
    }
    let mut out: Vec<u64> = exps.into_iter().map(|d| od.exponent(&d)).collect();
    out.sort_unstable();
    out
}
