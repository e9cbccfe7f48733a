mod common;

use chatelet::arith::Rational;
use chatelet::quartic::{
    factorization_oracle, irreducibility_verdict, isolate_real_roots, positive_point,
    real_root_count, BiquadraticQuartic, Poly, QuarticPoly,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// The classical closed form for `a x^4 + b x^3 + c x^2 + d x + e`.
fn quartic_discriminant(a: i64, b: i64, c: i64, d: i64, e: i64) -> BigInt {
    let [a, b, c, d, e] = [a, b, c, d, e].map(BigInt::from);
    let t = |k: i64, f: &[&BigInt]| f.iter().fold(BigInt::from(k), |acc, x| acc * *x);
    t(256, &[&a, &a, &a, &e, &e, &e])
        - t(192, &[&a, &a, &b, &d, &e, &e])
        - t(128, &[&a, &a, &c, &c, &e, &e])
        + t(144, &[&a, &a, &c, &d, &d, &e])
        - t(27, &[&a, &a, &d, &d, &d, &d])
        + t(144, &[&a, &b, &b, &c, &e, &e])
        - t(6, &[&a, &b, &b, &d, &d, &e])
        - t(80, &[&a, &b, &c, &c, &d, &e])
        + t(18, &[&a, &b, &c, &d, &d, &d])
        + t(16, &[&a, &c, &c, &c, &c, &e])
        - t(4, &[&a, &c, &c, &c, &d, &d])
        - t(27, &[&b, &b, &b, &b, &e, &e])
        + t(18, &[&b, &b, &b, &c, &d, &e])
        - t(4, &[&b, &b, &b, &d, &d, &d])
        - t(4, &[&b, &b, &c, &c, &c, &e])
        + t(1, &[&b, &b, &c, &c, &d, &d])
}

fn mul(f: &[i64], g: &[i64]) -> Vec<i64> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn separable_iff_discriminant_nonzero() {
    let mut rng = common::rng(200);
    let mut repeated = 0;
    for i in 0..200 {
        // Every third sample gets a forced double root.
        let c: Vec<i64> = if i % 3 == 0 {
            let r: i64 = rng.gen_range(-5..=5);
            let q = [
                rng.gen_range(-9..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(1..=4),
            ];
            mul(&mul(&[-r, 1], &[-r, 1]), &q)
        } else {
            (0..5)
                .map(|k| {
                    if k == 4 {
                        rng.gen_range(1..=9)
                    } else {
                        rng.gen_range(-20..=20)
                    }
                })
                .collect()
        };
        let q = QuarticPoly::from_i64([c[0], c[1], c[2], c[3], c[4]]);
        let expected = quartic_discriminant(c[4], c[3], c[2], c[1], c[0]);
        assert_eq!(q.discriminant(), Rational::from(expected.clone()), "{q}");
        assert_eq!(q.is_separable(), expected != BigInt::from(0), "{q}");
        repeated += (expected == BigInt::from(0)) as usize;
    }
    assert!(repeated >= 66);
}

fn rational_root_brute(c: &[i64; 5]) -> bool {
    // Roots p/q with p | c0 and q | lead, both bounded by the coefficients.
    let lead = c.iter().rposition(|&x| x != 0).unwrap();
    let lo = c.iter().position(|&x| x != 0).unwrap();
    if lo > 0 {
        return true;
    }
    let (c0, cl) = (c[0].abs(), c[lead].abs());
    for p in 1..=c0 {
        for q in 1..=cl {
            if c0 % p == 0 && cl % q == 0 {
                for s in [p, -p] {
                    let v: i128 = c
                        .iter()
                        .enumerate()
                        .map(|(i, &a)| {
                            a as i128
                                * (s as i128).pow(i as u32)
                                * (q as i128).pow((lead - i) as u32)
                        })
                        .sum();
                    if v == 0 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn oracle_product_and_splitting(
        f in prop::array::uniform3(-6i64..=6),
        g in prop::array::uniform3(-6i64..=6),
    ) {
        prop_assume!(f[2] != 0 && g[2] != 0);
        let c = mul(&f, &g);
        let q = QuarticPoly::from_i64([c[0], c[1], c[2], c[3], c[4]]);
        let fac = factorization_oracle(&q).unwrap();
        prop_assert_eq!(QuarticPoly::from_poly(&fac.product()).unwrap(), q);
        prop_assert!(fac.factors.len() >= 2);
    }

    #[test]
    fn oracle_irreducible_means_no_rational_root(c in prop::array::uniform5(-12i64..=12)) {
        prop_assume!(c[4] != 0);
        let q = QuarticPoly::from_i64(c);
        let fac = factorization_oracle(&q).unwrap();
        prop_assert_eq!(QuarticPoly::from_poly(&fac.product()).unwrap(), q.clone());
        if fac.is_irreducible() {
            prop_assert!(!rational_root_brute(&c));
        }
        if rational_root_brute(&c) {
            prop_assert!(fac.factors.iter().any(|f| f.len() == 2));
        }
    }

    /// The criterion is a sufficient condition, so it may only ever claim
    /// irreducibility when the oracle agrees.
    #[test]
    fn criterion_never_contradicts_oracle(a in -40i64..=40, b in -40i64..=40, c in -40i64..=40) {
        prop_assume!(a != 0);
        let bq = BiquadraticQuartic::from_i64(a, b, c);
        let crit = bq.criterion();
        let oracle = factorization_oracle(&bq.to_quartic()).unwrap().is_irreducible();
        if crit.proves_irreducible() {
            prop_assert!(oracle);
        }
        prop_assert_eq!(irreducibility_verdict(&bq).unwrap().irreducible, oracle);
    }

    /// Distinct rational roots times a definite quadratic: the count is
    /// known in advance.
    #[test]
    fn real_roots_counted(roots in prop::collection::btree_set(-30i64..=30, 0..=2), k in 1i64..=5) {
        let mut c = vec![k, 0, 1];
        for r in &roots {
            c = mul(&c, &[-r, 1]);
        }
        let p = Poly::from_i64(&c);
        prop_assert_eq!(real_root_count(&p), roots.len());
        let isolated = isolate_real_roots(&p);
        prop_assert_eq!(isolated.len(), roots.len());
        for (iv, r) in isolated.iter().zip(&roots) {
            let r = Rational::from(*r);
            prop_assert!(iv.0 < r && r < iv.1);
        }
    }

    #[test]
    fn positive_point_is_positive(c in prop::array::uniform5(-10i64..=10)) {
        let p = Poly::from_i64(&c);
        prop_assume!(!p.is_zero());
        match positive_point(&p) {
            Some(x) => prop_assert!(p.eval(&x).is_positive()),
            None => {
                for n in -400..=400 {
                    let x = Rational::new(n, 20);
                    prop_assert!(!p.eval(&x).is_positive(), "{} at {}", p, x);
                }
            }
        }
    }
}
