//! Real roots by Sturm sequences, and rational points where a polynomial is
//! positive.

use num_bigint::BigInt;

use crate::arith::Rational;

use super::Poly;

/// `p, p', -rem(p, p'), ...` ending at the last nonzero remainder.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone()];
    let mut next = p.derivative();
    while !next.is_zero() {
        let rem = seq.last().unwrap().div_rem(&next).1.neg();
        seq.push(next);
        next = rem;
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[Poly], x: &Rational) -> usize {
    variations(seq.iter().map(|q| q.eval(x).signum()))
}

fn variations_at_infinity(seq: &[Poly], positive: bool) -> usize {
    variations(seq.iter().map(|q| {
        let s = q.leading().signum();
        let odd = q.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots.
pub fn real_root_count(p: &Poly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Every real root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_default();
    max + Rational::one()
}

/// Disjoint open intervals `(a, b)`, in increasing order, each containing
/// exactly one distinct real root, with `p(a) != 0` and `p(b) != 0`.
pub fn isolate_real_roots(p: &Poly) -> Vec<(Rational, Rational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let bound = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        // roots in (a, b] = roots in (a, b) since p(b) != 0
        let n = variations_at(&seq, &a) - variations_at(&seq, &b);
        match n {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = split_point(p, &a, &b);
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort();
    out
}

/// A point of `(a, b)` that is not a root of `p`.
fn split_point(p: &Poly, a: &Rational, b: &Rational) -> Rational {
    let width = b - a;
    (2i64..)
        .flat_map(|d| (1..d).map(move |n| (n, d)))
        .map(|(n, d)| a + &width * Rational::from(n) / Rational::from(d))
        .find(|m| !p.eval(m).is_zero())
        .expect("finitely many roots")
}

/// Shrinks an isolating interval to width at most `tol`.
pub fn refine(p: &Poly, mut a: Rational, mut b: Rational, tol: &Rational) -> (Rational, Rational) {
    let sa = p.eval(&a).signum();
    while &(&b - &a) > tol {
        let m = split_point(p, &a, &b);
        if p.eval(&m).signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    (a, b)
}

/// The rational of least height in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = Rational::from(lo.floor());
    if fl == *lo {
        return lo.clone();
    }
    let up = &fl + Rational::one();
    if up <= *hi {
        return up;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// A rational `x` of small height with `p(x) > 0`, or `None` when `p <= 0`
/// on all of R.
///
/// The sign of `p` is constant between consecutive distinct roots, so one
/// sample per gap decides. Within a gap the simplest rational is taken.
pub fn positive_point(p: &Poly) -> Option<Rational> {
    if p.is_zero() {
        return None;
    }
    let roots = isolate_real_roots(p);
    if roots.is_empty() {
        let x = Rational::zero();
        return p.eval(&x).is_positive().then_some(x);
    }
    let tol = Rational::new(BigInt::from(1u32), BigInt::from(1u64 << 20));
    let refined: Vec<_> = roots
        .into_iter()
        .map(|(a, b)| refine(p, a, b, &tol))
        .collect();
    let mut candidates = Vec::with_capacity(refined.len() + 1);
    let first = &refined[0].0;
    candidates.push(simplest_between(
        &Rational::from(first.floor()).min(Rational::zero()),
        first,
    ));
    for w in refined.windows(2) {
        candidates.push(simplest_between(&w[0].1, &w[1].0));
    }
    let last = &refined[refined.len() - 1].1;
    candidates.push(simplest_between(
        last,
        &Rational::from(last.ceil()).max(Rational::zero()),
    ));
    candidates
        .into_iter()
        .filter(|x| p.eval(x).is_positive())
        .min_by(|x, y| {
            (x.height(), x.abs(), x.is_negative()).cmp(&(y.height(), y.abs(), y.is_negative()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn counts() {
        assert_eq!(real_root_count(&Poly::from_i64(&[-6, 0, 5, 0, -1])), 4);
        assert_eq!(real_root_count(&Poly::from_i64(&[-1, 0, 3, 0, 2])), 2);
        assert_eq!(real_root_count(&Poly::from_i64(&[1, 0, 0, 0, 1])), 0);
        assert_eq!(real_root_count(&Poly::from_i64(&[1, 0, -2, 0, 1])), 2);
        assert_eq!(real_root_count(&Poly::from_i64(&[0, -1, 0, 1])), 3);
    }

    #[test]
    fn isolation() {
        let p = Poly::from_i64(&[-6, 0, 5, 0, -1]);
        let iv = isolate_real_roots(&p);
        assert_eq!(iv.len(), 4);
        for w in iv.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
        for (a, b) in &iv {
            assert!(p.eval(a).signum() * p.eval(b).signum() < 0);
        }
    }

    #[test]
    fn simplest() {
        assert_eq!(simplest_between(&rat(141, 100), &rat(173, 100)), rat(3, 2));
        assert_eq!(simplest_between(&rat(-1, 3), &rat(1, 2)), rat(0, 1));
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(-7, 3), &rat(-9, 4)), rat(-7, 3));
        assert_eq!(simplest_between(&rat(5, 2), &rat(5, 2)), rat(5, 2));
    }

    #[test]
    fn positive_points() {
        assert_eq!(
            positive_point(&Poly::from_i64(&[-6, 0, 5, 0, -1])),
            Some(rat(3, 2))
        );
        assert_eq!(positive_point(&Poly::from_i64(&[-1, 0, 0, 0, -1])), None);
        assert_eq!(
            positive_point(&Poly::from_i64(&[-1, 0, 3, 0, 2])),
            Some(rat(1, 1))
        );
        assert_eq!(
            positive_point(&Poly::from_i64(&[1, 0, -2, 0, 1])),
            Some(rat(0, 1))
        );
        assert_eq!(positive_point(&Poly::from_i64(&[0, 0, -1])), None);
        // -(x^2 - 2)^2 + 1/100 is positive only near +-sqrt 2
        let p = Poly::from_i64(&[-4, 0, 4, 0, -1]).add(&Poly::new(vec![rat(1, 100)]));
        let x = positive_point(&p).unwrap();
        assert!(p.eval(&x).is_positive());
    }
}
