//! Arbitrary-precision integers and rationals, factorization, valuations and
//! square detection.

mod factor;
mod rational;

pub(crate) use factor::small_primes;
pub use factor::{
    divisors, factor, factor_u64, factor_with, is_prime, is_prime_u64, FactorConfig, Factorization,
};
pub use rational::{rat, Rational};

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A verified prime number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(BigInt);

impl Prime {
    pub fn new(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if is_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Panics if `p` is not prime; for literals.
    pub fn small(p: u64) -> Self {
        Prime::new(p).expect("not a prime")
    }

    pub fn get(&self) -> &BigInt {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigInt::from(2)
    }

    pub fn pow(&self, k: u32) -> BigInt {
        num_traits::pow(self.0.clone(), k as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let s = String::deserialize(d)?;
        let n: BigInt = s.parse().map_err(D::Error::custom)?;
        Prime::new(n).map_err(D::Error::custom)
    }
}

/// `v_p(n)` for a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// `v_p(r) = v_p(num) - v_p(den)`. Panics on zero.
pub fn padic_valuation(r: &Rational, p: &Prime) -> i64 {
    assert!(!r.is_zero(), "valuation of zero");
    int_valuation(r.numer(), p.get()) as i64 - int_valuation(r.denom(), p.get()) as i64
}

/// Splits `r = p^v * u` and returns `(v, u)` with `u` a `p`-adic unit.
pub fn split_valuation(r: &Rational, p: &Prime) -> (i64, Rational) {
    let v = padic_valuation(r, p);
    let pv = Rational::from_integer(p.get().clone()).pow(v as i32);
    (v, r / pv)
}

/// Legendre symbol `(a/p)` for odd prime `p`, by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: &Prime) -> i8 {
    let p = p.get();
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub(crate) fn exact_sqrt_u128(n: u128) -> Option<u128> {
    // Squares mod 64 occupy 12 residues; this rejects most inputs cheaply.
    const MOD64: u64 = 0x0202_0212_0203_0213;
    if (MOD64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let s = n.sqrt();
    (s * s == n).then_some(s)
}

/// Returns `s >= 0` with `s^2 = r` when `r` is the square of a rational.
pub fn is_rational_square(r: &Rational) -> Option<Rational> {
    let n = exact_sqrt(r.numer())?;
    let d = exact_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Writes `n = squarefree * cofactor^2` with `cofactor > 0`; the sign stays
/// with the squarefree part.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let f = factor(n)?;
    let mut sf = BigInt::from(f.sign);
    let mut co = BigInt::one();
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            sf *= p;
        }
        co *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    Ok((sf, co))
}

/// Squarefree integer representative of a nonzero rational modulo squares:
/// `r = s * c^2` with `s` a squarefree integer.
pub fn squarefree_representative(r: &Rational) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(squarefree_part(&(r.numer() * r.denom()))?.0)
}

/// Primes dividing the numerator or denominator.
pub fn rational_prime_support(r: &Rational) -> Result<Vec<BigInt>> {
    let mut out: Vec<BigInt> = Vec::new();
    if r.is_zero() {
        return Ok(out);
    }
    for part in [r.numer(), r.denom()] {
        for p in factor(part)?.primes() {
            out.push(p.clone());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Modular inverse for coprime `a`, `m`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// The residue of a `p`-integral rational modulo `m` (a power of `p`).
pub fn reduce_mod(r: &Rational, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(r.denom(), m)?;
    Some((r.numer() * inv).mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&rat(9, 2), &Prime::small(3)), 2);
        assert_eq!(padic_valuation(&rat(12, 1), &Prime::small(2)), 2);
        assert_eq!(padic_valuation(&rat(12, 5), &Prime::small(3)), 1);
        assert_eq!(padic_valuation(&rat(5, 12), &Prime::small(2)), -2);
        let (v, u) = split_valuation(&rat(-50, 3), &Prime::small(5));
        assert_eq!((v, u), (2, rat(-2, 3)));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&b(1), &Prime::small(7)), 1);
        assert_eq!(legendre_symbol(&b(14), &Prime::small(7)), 0);
        assert_eq!(legendre_symbol(&b(2), &Prime::small(5)), -1);
        assert_eq!(legendre_symbol(&b(-1), &Prime::small(13)), 1);
    }

    #[test]
    fn legendre_matches_power_residue() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            for a in 0..p {
                let e = (0..(p - 1) / 2).fold(1u64, |acc, _| acc * a % p);
                let expect = match e {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(legendre_symbol(&b(a as i64), &Prime::small(p)), expect);
            }
        }
    }

    #[test]
    fn rational_squares() {
        assert_eq!(is_rational_square(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(is_rational_square(&rat(2, 1)), None);
        assert_eq!(is_rational_square(&rat(17, 1)), None);
        assert_eq!(is_rational_square(&rat(-4, 1)), None);
        assert_eq!(
            is_rational_square(&Rational::zero()),
            Some(Rational::zero())
        );
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&b(12)).unwrap(), (b(3), b(2)));
        assert_eq!(squarefree_part(&b(-50)).unwrap(), (b(-2), b(5)));
        assert_eq!(squarefree_part(&b(526)).unwrap(), (b(526), b(1)));
        assert_eq!(squarefree_representative(&rat(-9, 8)).unwrap(), b(-2));
    }

    #[test]
    fn prime_newtype() {
        assert!(Prime::new(91).is_err());
        assert_eq!(Prime::new(97).unwrap().to_string(), "97");
        let json = serde_json::to_string(&Prime::small(13)).unwrap();
        assert_eq!(json, "\"13\"");
        assert!(serde_json::from_str::<Prime>("\"15\"").is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(reduce_mod(&rat(1, 3), &b(7)), Some(b(5)));
        assert_eq!(reduce_mod(&rat(1, 7), &b(7)), None);
        assert_eq!(exact_sqrt_u128(1 << 40), Some(1 << 20));
        assert_eq!(exact_sqrt_u128(99), None);
    }
}
