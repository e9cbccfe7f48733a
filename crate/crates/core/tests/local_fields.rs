mod common;

use chatelet::arith::FactorConfig;
use chatelet::arith::{Prime, Rational};
use chatelet::local::{
    hensel_lift_sqrt, hilbert_symbol, hilbert_symbol_p, is_square_in_qp, is_sum_of_two_squares_u64,
    sum_of_two_squares, Place,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn places_of(a: &Rational, b: &Rational) -> Vec<Place> {
    let mut n: u64 = 2;
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let x: i64 = x.try_into().unwrap();
        n = n.checked_mul(x.unsigned_abs()).unwrap();
    }
    let mut out = vec![Place::Real];
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            out.push(Place::finite(p));
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (-300i64..=300, 1i64..=60).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| r(n, d)))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Real),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_map(Place::finite)
    ]
}

proptest! {
    #[test]
    fn hilbert_symmetric(a in nonzero(), b in nonzero(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &b, &v), hilbert_symbol(&b, &a, &v));
    }

    #[test]
    fn hilbert_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero(), v in place()) {
        prop_assert_eq!(
            hilbert_symbol(&a, &(&b * &c), &v),
            hilbert_symbol(&a, &b, &v) * hilbert_symbol(&a, &c, &v)
        );
    }

    #[test]
    fn hilbert_a_minus_a(a in nonzero(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &-a.clone(), &v), 1);
        if a != 1 {
            prop_assert_eq!(hilbert_symbol(&a, &(Rational::from(1) - &a), &v), 1);
        }
    }

    #[test]
    fn hilbert_squares_are_trivial(a in nonzero(), c in nonzero(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &c.square(), &v), 1);
    }

    /// A square class that is a local square pairs trivially with everything.
    #[test]
    fn local_square_pairs_trivially(a in nonzero(), b in nonzero(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let prime = Prime::small(p);
        if is_square_in_qp(&a, &prime) {
            prop_assert_eq!(hilbert_symbol_p(&a, &b, &prime), 1);
        }
    }

    /// Each lift squares to `c` and reduces to the lift at lower precision.
    #[test]
    fn hensel_lifts_are_compatible(root in 1i64..5000, k in 1u32..12, p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let prime = Prime::small(p);
        prop_assume!(root % p as i64 != 0);
        let c = Rational::from(root * root) * Rational::from(if p == 2 { 17 } else { 1 });
        prop_assume!(is_square_in_qp(&c, &prime));
        let hi = hensel_lift_sqrt(&c, &prime, k + 3).unwrap();
        prop_assert!(hi.verifies_sqrt_of(&c));
        let lo = hensel_lift_sqrt(&c, &prime, k).unwrap();
        prop_assert!(lo.verifies_sqrt_of(&c));
        prop_assert_eq!(hi.truncate(k), lo);
    }

    #[test]
    fn two_squares_rational(n in 0i64..50_000, d in 1i64..500) {
        let q = r(n, d);
        match sum_of_two_squares(&q).unwrap() {
            Some((y, z)) => prop_assert_eq!(y.square() + z.square(), q),
            // n/d is a sum of two squares iff n*d is.
            None => prop_assert!(!common::two_squares_brute((n * d) as u64)),
        }
    }
}

#[test]
fn product_formula_500_samples() {
    let mut rng = common::rng(0x5eed);
    for _ in 0..500 {
        let mut draw = || loop {
            let n: i64 = rng.gen_range(-5000..=5000);
            let d: i64 = rng.gen_range(1..=300);
            if n != 0 {
                return r(n, d);
            }
        };
        let (a, b) = (draw(), draw());
        let product: i8 = places_of(&a, &b)
            .iter()
            .map(|v| hilbert_symbol(&a, &b, v))
            .product();
        assert_eq!(product, 1, "({a}, {b})");
    }
}

#[test]
fn hilbert_agrees_with_brute_force_mod_p5() {
    let mut rng = common::rng(7);
    let mut seen = [0usize; 2];
    for p in [2u64, 3, 5, 7] {
        let prime = Prime::small(p);
        let samples = if p == 7 { 12 } else { 40 };
        for _ in 0..samples {
            let a = common::small_valuation(&mut rng, p);
            let b = common::small_valuation(&mut rng, p);
            let expected = common::hilbert_brute(a, b, p, 5);
            seen[(expected > 0) as usize] += 1;
            assert_eq!(
                hilbert_symbol_p(&Rational::from(a), &Rational::from(b), &prime),
                expected,
                "({a}, {b})_{p}"
            );
        }
    }
}

#[test]
fn two_squares_exhaustive_to_10k() {
    let config = FactorConfig::default();
    for n in 0..=10_000u64 {
        let expected = common::two_squares_brute(n);
        let got = sum_of_two_squares(&Rational::from(BigInt::from(n))).unwrap();
        assert_eq!(got.is_some(), expected, "{n}");
        if let Some((y, z)) = got {
            assert_eq!(y.square() + z.square(), Rational::from(BigInt::from(n)));
        }
        assert_eq!(
            is_sum_of_two_squares_u64(n, &config).unwrap(),
            expected,
            "{n}"
        );
    }
}
