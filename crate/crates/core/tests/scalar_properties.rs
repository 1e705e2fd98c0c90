//! Randomized algebraic laws for the exact scalar type: field axioms,
//! conjugation, inversion, square roots, cross-order canonicalization,
//! and soundness of the certified interval evaluator.

use fourier_core::Cyclotomic;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn rational(num: i64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.max(1)))
}

/// Arbitrary small cyclotomic values: a handful of terms over a modest
/// root order, with small rational coefficients.
fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    let order = 1u64..=24;
    let term = (any::<i64>(), -40i64..=40, 1u64..=6);
    (order, proptest::collection::vec(term, 0..=3)).prop_map(|(n, terms)| {
        Cyclotomic::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, num, den)| (e % 64, rational(num, den))),
        )
    })
}

fn nonzero_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    cyclotomic().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes_and_associates(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes_and_associates(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn neutral_elements(a in cyclotomic()) {
        prop_assert_eq!(&a + &Cyclotomic::zero(), a.clone());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn squared_modulus_is_real_and_nonnegative(a in cyclotomic()) {
        let m = a.abs_sq();
        prop_assert!(m.is_real());
        let (re, _) = m.eval_interval(64);
        prop_assert!(!re.hi().is_negative() || m.is_zero());
    }

    #[test]
    fn inverse_round_trips(a in nonzero_cyclotomic()) {
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    // The radicand range is kept small: the square root of p/q lives in a
    // cyclotomic field whose conductor scales with the squarefree part of
    // p·q, and squaring a dense Gauss sum costs quadratically in it.
    fn square_roots_square_back(num in 0i64..=60, den in 1u64..=16) {
        let q = rational(num, den);
        let root = Cyclotomic::sqrt_nonneg_rational(&q).unwrap();
        prop_assert_eq!(&root * &root, Cyclotomic::from_rational(q));
    }

    #[test]
    fn roots_of_unity_have_the_advertised_order(n in 1u64..=30, k in 0i64..=60) {
        let z = Cyclotomic::root_of_unity(n, k);
        prop_assert!(z.pow(n).is_one());
    }

    #[test]
    fn cross_order_representations_collapse(n in 1u64..=15, k in 0i64..=29, m in 1u64..=4) {
        // ζ_n^k written over the order m·n must canonicalize identically.
        let direct = Cyclotomic::root_of_unity(n, k);
        let inflated = Cyclotomic::root_of_unity(n * m, k * m as i64);
        prop_assert_eq!(direct, inflated);
    }

    #[test]
    fn interval_refinement_is_sound(a in cyclotomic()) {
        // Both enclosures contain the true value, so they must intersect,
        // and the high-precision one must be far tighter.
        let (re64, im64) = a.eval_interval(64);
        let (re512, im512) = a.eval_interval(512);
        prop_assert!(re512.lo() <= re64.hi() && re64.lo() <= re512.hi());
        prop_assert!(im512.lo() <= im64.hi() && im64.lo() <= im512.hi());
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(2).pow(256));
        prop_assert!(re512.width() <= tiny.clone());
        prop_assert!(im512.width() <= tiny);
    }

    #[test]
    fn real_values_have_decidable_sign(num in -50i64..=50, den in 1u64..=9, n in 1u64..=12, k in 0i64..=11) {
        // c·(ζ + conj(ζ)) is always real; sign_real must decide it.
        let z = Cyclotomic::root_of_unity(n, k);
        let real = &(&z + &z.conj()) * &Cyclotomic::from_rational(rational(num, den));
        prop_assert!(real.is_real());
        prop_assert!(real.sign_real().is_ok());
    }
}

#[test]
fn display_round_trips_through_equality_of_reparse_fixtures() {
    // Display is exercised for parseability in the CLI crate; here we
    // pin a few canonical shapes.
    let sqrt2 = Cyclotomic::sqrt_nonneg_rational(&rational(2, 1)).unwrap();
    assert_eq!(sqrt2.to_string(), "E(8) - E(8)^3");
    assert_eq!(Cyclotomic::from_rational(rational(-3, 2)).to_string(), "-3/2");
    assert_eq!(Cyclotomic::zero().to_string(), "0");
}
