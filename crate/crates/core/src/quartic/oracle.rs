//! Complete factorization over Q for polynomials of degree at most four.
//!
//! Denominators and content are cleared first (Gauss's lemma). Then
//! linear factors are removed by the rational root theorem. Whatever
//! remains is irreducible unless it is a quartic that splits into two
//! integer quadratics. For each choice of leading and constant
//! coefficients, the two middle coefficients are pinned down by the `x^3`
//! and `x` equations. So the search is over pairs of divisors, not a box.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, QuarticPoly};
use crate::arith::{divisors, exact_sqrt, Rational};
use crate::error::{Error, Result};

/// `P = unit * prod(factors)`, every factor primitive over Z with positive
/// leading coefficient and irreducible over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    pub unit: Rational,
    /// Ascending integer coefficients, sorted by (degree, coefficients).
    pub factors: Vec<Vec<BigInt>>,
}

impl PolyFactorization {
    /// A single factor of positive degree.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn factor_polys(&self) -> Vec<Poly> {
        self.factors.iter().map(|f| int_poly(f)).collect()
    }

    pub fn product(&self) -> Poly {
        self.factor_polys()
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, f| acc.mul(f))
    }
}

impl fmt::Display for PolyFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for p in self.factor_polys() {
            write!(f, " * ({p})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn int_poly(c: &[BigInt]) -> Poly {
    Poly::new(c.iter().cloned().map(Rational::from).collect())
}

fn degree(c: &[BigInt]) -> usize {
    c.len() - 1
}

/// Exact division of integer polynomials; `None` if the remainder is nonzero
/// or a quotient coefficient is not an integer.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dn = degree(den);
    let lead = den.last().unwrap();
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let (q, r) = rem[k + dn].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &q * d;
        }
        quot[k] = q;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// `(q x - p)` dividing `f`, with `q > 0` and `gcd(p, q) = 1`.
fn find_linear_factor(f: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let c0 = &f[0];
    let lead = f.last().unwrap();
    if c0.is_zero() {
        return Ok(Some(vec![BigInt::zero(), BigInt::one()]));
    }
    let ps = divisors(c0)?;
    let qs = divisors(lead)?;
    for q in &qs {
        for p in &ps {
            if !p.gcd(q).is_one() {
                continue;
            }
            for p in [p.clone(), -p] {
                let cand = vec![-p, q.clone()];
                if exact_div(f, &cand).is_some() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// `f = (a2 x^2 + a1 x + a0)(b2 x^2 + b1 x + b0)` over Z with `f` a primitive
/// quartic, positive leading coefficient, and no rational root.
fn find_quadratic_factor(f: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let (e, d, c, b, a) = (&f[0], &f[1], &f[2], &f[3], &f[4]);
    let lead_divs = divisors(a)?;
    let const_divs = divisors(e)?;
    for a2 in &lead_divs {
        let b2 = a / a2;
        for a0_abs in &const_divs {
            for a0 in [a0_abs.clone(), -a0_abs] {
                let b0 = e / &a0;
                for (a1, b1) in middle_coefficients(a2, &a0, &b2, &b0, b, c, d) {
                    let cand = vec![a0.clone(), a1, a2.clone()];
                    let other = [b0.clone(), b1, b2.clone()];
                    let mut prod = vec![BigInt::zero(); 5];
                    for (i, x) in cand.iter().enumerate() {
                        for (j, y) in other.iter().enumerate() {
                            prod[i + j] += x * y;
                        }
                    }
                    if prod == f {
                        return Ok(Some(cand));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Integer `(a1, b1)` with `a2 b1 + a1 b2 = B` and `a0 b1 + a1 b0 = D`;
/// when those are dependent, the `x^2` equation decides.
fn middle_coefficients(
    a2: &BigInt,
    a0: &BigInt,
    b2: &BigInt,
    b0: &BigInt,
    big_b: &BigInt,
    big_c: &BigInt,
    big_d: &BigInt,
) -> Vec<(BigInt, BigInt)> {
    let det = b2 * a0 - a2 * b0;
    if !det.is_zero() {
        let n1 = big_b * a0 - a2 * big_d;
        let n2 = b2 * big_d - b0 * big_b;
        if n1.is_multiple_of(&det) && n2.is_multiple_of(&det) {
            return vec![(n1 / &det, n2 / &det)];
        }
        return Vec::new();
    }
    // b1 = (B - a1 b2) / a2 and a1 b1 = K give b2 a1^2 - B a1 + a2 K = 0.
    let k = big_c - a2 * b0 - a0 * b2;
    let disc = big_b * big_b - BigInt::from(4) * b2 * a2 * &k;
    let Some(s) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let two_b2 = b2 * 2;
    let mut out = Vec::new();
    for num in [big_b + &s, big_b - &s] {
        if !num.is_multiple_of(&two_b2) {
            continue;
        }
        let a1 = num / &two_b2;
        let rest = big_b - &a1 * b2;
        if rest.is_multiple_of(a2) {
            out.push((a1, rest / a2));
        }
    }
    out
}

/// Complete factorization of a nonzero polynomial of degree at most four.
pub fn factorization_oracle(p: &QuarticPoly) -> Result<PolyFactorization> {
    if p.is_zero() {
        return Err(Error::PreconditionViolated(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let (_, ints) = p.primitive_integer_form();
    let mut rest: Vec<BigInt> = ints.to_vec();
    while rest.last().is_some_and(Zero::is_zero) {
        rest.pop();
    }
    let mut factors: Vec<Vec<BigInt>> = Vec::new();

    while degree(&rest) >= 1 {
        match find_linear_factor(&rest)? {
            Some(lin) => {
                rest = exact_div(&rest, &lin).expect("linear factor divides");
                factors.push(lin);
            }
            None => break,
        }
    }
    if degree(&rest) == 4 {
        if let Some(q) = find_quadratic_factor(&rest)? {
            let other = exact_div(&rest, &q).expect("quadratic factor divides");
            factors.push(q);
            rest = other;
        }
    }
    if degree(&rest) >= 1 {
        factors.push(rest);
    } else {
        debug_assert!(rest[0].abs().is_one());
    }

    for f in &mut factors {
        if f.last().unwrap().is_negative() {
            f.iter_mut().for_each(|c| *c = -&*c);
        }
    }
    factors.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    let bare = factors
        .iter()
        .fold(Poly::constant(Rational::one()), |acc, f| {
            acc.mul(&int_poly(f))
        });
    let out = PolyFactorization {
        unit: p.to_poly().leading() / bare.leading(),
        factors,
    };
    assert_eq!(
        out.product(),
        p.to_poly(),
        "factorization must reproduce input"
    );
    Ok(out)
}
