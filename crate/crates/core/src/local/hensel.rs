use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::is_square_in_qp;
use crate::arith::{legendre_symbol, mod_inverse, padic_valuation, reduce_mod, Prime, Rational};
use crate::error::{Error, Result};

/// The residue class `center mod p^precision`, with `0 <= center < p^precision`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicApproximation {
    pub prime: Prime,
    #[serde(with = "crate::json::bigint")]
    pub center: BigInt,
    pub precision: u32,
}

impl PAdicApproximation {
    pub fn modulus(&self) -> BigInt {
        self.prime.pow(self.precision)
    }

    /// Checks `center^2 = c (mod p^precision)`.
    pub fn verifies_sqrt_of(&self, c: &Rational) -> bool {
        let m = self.modulus();
        match reduce_mod(c, &m) {
            Some(c) => (&self.center * &self.center - c).mod_floor(&m).is_zero(),
            None => false,
        }
    }

    /// Reduces to a lower precision.
    pub fn truncate(&self, precision: u32) -> PAdicApproximation {
        assert!(precision <= self.precision);
        let m = self.prime.pow(precision);
        PAdicApproximation {
            prime: self.prime.clone(),
            center: self.center.mod_floor(&m),
            precision,
        }
    }
}

/// The least square root of `a` modulo an odd prime (Tonelli-Shanks), if any.
pub fn sqrt_mod_prime(a: &BigInt, p: &Prime) -> Option<BigInt> {
    let pn = p.get();
    let a = a.mod_floor(pn);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if p.is_two() {
        return Some(a);
    }
    if legendre_symbol(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let p_minus_1: BigInt = pn - &one;
    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    let mut z = BigInt::from(2);
    while legendre_symbol(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, pn);
    let mut t = a.modpow(&q, pn);
    let mut r = a.modpow(&((&q + &one) >> 1), pn);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % pn;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), pn);
        m = i;
        c = (&b * &b) % pn;
        t = (t * &c) % pn;
        r = (r * &b) % pn;
    }
    let other = pn - &r;
    Some(if other < r { other } else { r })
}

/// Lifts a square root of the `p`-adic unit `c` to precision `p^k`.
///
/// The branch is fixed at the bottom level (the least root mod `p` for odd
/// `p`, the root congruent to 1 mod 4 for `p = 2`) and then carried up, so
/// the output at `k + 1` reduces to the output at `k`.
pub fn hensel_lift_sqrt(c: &Rational, p: &Prime, k: u32) -> Result<PAdicApproximation> {
    let not_square = || Error::NotALocalSquare {
        value: c.to_string(),
        prime: p.get().clone(),
    };
    if k == 0 {
        return Err(Error::PreconditionViolated(
            "precision must be positive".into(),
        ));
    }
    if c.is_zero() || padic_valuation(c, p) != 0 || !is_square_in_qp(c, p) {
        return Err(not_square());
    }

    let modulus = p.pow(k);
    let center = if p.is_two() {
        // z^2 = c mod 2^(j+1) is kept from j = 3 up to j = k.
        let work = BigInt::one() << (k + 1).max(3);
        let c = reduce_mod(c, &work).ok_or_else(not_square)?;
        let mut z = BigInt::one();
        for j in 3..=k {
            let next = BigInt::one() << (j + 1);
            if !(&z * &z - &c).mod_floor(&next).is_zero() {
                z += BigInt::one() << (j - 1);
            }
        }
        z.mod_floor(&modulus)
    } else {
        let c = reduce_mod(c, &modulus).ok_or_else(not_square)?;
        let mut z = sqrt_mod_prime(&c, p).ok_or_else(not_square)?;
        let mut precision = 1;
        while precision < k {
            precision = (2 * precision).min(k);
            let m = p.pow(precision);
            let inv = mod_inverse(&(&z * 2), &m).ok_or_else(not_square)?;
            z = (&z - (&z * &z - &c) * inv).mod_floor(&m);
        }
        z.mod_floor(&modulus)
    };

    let approx = PAdicApproximation {
        prime: p.clone(),
        center,
        precision: k,
    };
    debug_assert!(approx.verifies_sqrt_of(c));
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn minus_seven_mod_32() {
        let z = hensel_lift_sqrt(&rat(-7, 1), &Prime::small(2), 5).unwrap();
        assert!(z.verifies_sqrt_of(&rat(-7, 1)));
        // The four roots mod 32, found by enumeration.
        let roots: Vec<i64> = (0..32).filter(|z| (z * z + 7) % 32 == 0).collect();
        assert_eq!(roots, vec![5, 11, 21, 27]);
        assert!(roots.contains(&num_traits::ToPrimitive::to_i64(&z.center).unwrap()));
        assert_eq!(z.center, BigInt::from(21));
    }

    #[test]
    fn exact_root_branch() {
        let z = hensel_lift_sqrt(&rat(4, 1), &Prime::small(5), 3).unwrap();
        assert_eq!(z.center, BigInt::from(2));
    }

    #[test]
    fn six_mod_625() {
        let z = hensel_lift_sqrt(&rat(6, 1), &Prime::small(5), 4).unwrap();
        assert!(z.verifies_sqrt_of(&rat(6, 1)));
        assert_eq!(z.center.mod_floor(&BigInt::from(5)), BigInt::from(1));
    }

    #[test]
    fn rejects_nonsquares_and_nonunits() {
        assert!(matches!(
            hensel_lift_sqrt(&rat(3, 1), &Prime::small(2), 4),
            Err(Error::NotALocalSquare { .. })
        ));
        assert!(hensel_lift_sqrt(&rat(2, 1), &Prime::small(5), 4).is_err());
        assert!(hensel_lift_sqrt(&rat(9, 1), &Prime::small(3), 4).is_err());
    }

    #[test]
    fn rational_units_lift() {
        let c = rat(17, 9);
        let z = hensel_lift_sqrt(&c, &Prime::small(2), 12).unwrap();
        assert!(z.verifies_sqrt_of(&c));
        let c = rat(2, 9);
        let z = hensel_lift_sqrt(&c, &Prime::small(17), 9).unwrap();
        assert!(z.verifies_sqrt_of(&c));
    }

    #[test]
    fn tonelli_shanks_small_primes() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 257] {
            let prime = Prime::small(p);
            for a in 0..p {
                let roots: Vec<u64> = (0..p).filter(|x| x * x % p == a).collect();
                let got = sqrt_mod_prime(&BigInt::from(a), &prime);
                match roots.first() {
                    Some(&r) => assert_eq!(got, Some(BigInt::from(r))),
                    None => assert_eq!(got, None),
                }
            }
        }
    }
}
