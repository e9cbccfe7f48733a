//! Explicit representations `N = y^2 + z^2` over Q.
//!
//! Each prime `p = 1 mod 4` is split as `a^2 + b^2` by Cornacchia's algorithm
//! and the pieces are multiplied as Gaussian integers. Among all the
//! representations this produces, the one returned has `y > 0`, `z >= 0`,
//! the smallest `max(y, z)`, and then the smallest `y`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factor, factor_u64, small_primes, FactorConfig, Rational};
use crate::error::Result;

/// Caps the number of conjugate choices examined when picking the most
/// balanced representation.
const MAX_COMBINATIONS: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Gaussian {
    re: BigInt,
    im: BigInt,
}

impl Gaussian {
    fn one() -> Self {
        Gaussian {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn mul(&self, o: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn conj(&self) -> Gaussian {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn pow(&self, e: u32) -> Gaussian {
        (0..e).fold(Gaussian::one(), |acc, _| acc.mul(self))
    }

    /// Rotates by a unit into `re > 0, im >= 0`.
    fn first_quadrant(self) -> Gaussian {
        let mut g = self;
        for _ in 0..4 {
            if g.re.is_positive() && !g.im.is_negative() {
                return g;
            }
            // multiply by -i
            g = Gaussian {
                re: g.im.clone(),
                im: -g.re,
            };
        }
        g
    }
}

/// `p = a^2 + b^2` with `a > b > 0` for a prime `p = 1 mod 4`.
fn cornacchia(p: &BigInt) -> (BigInt, BigInt) {
    // sqrt(-1) = c^((p-1)/4) for any quadratic nonresidue c.
    let e = (p - 1u32) >> 2;
    let mut c = BigInt::from(2);
    let r = loop {
        let r = c.modpow(&e, p);
        if (&r * &r + 1u32).mod_floor(p).is_zero() {
            break r;
        }
        c += 1;
    };
    let (mut a, mut b) = (p.clone(), r);
    while &b * &b > *p {
        let t = a.mod_floor(&b);
        a = b;
        b = t;
    }
    let rest = p - &b * &b;
    let other = rest.sqrt();
    debug_assert_eq!(&other * &other, rest);
    if b > other {
        (b, other)
    } else {
        (other, b)
    }
}

/// Integer version of [`sum_of_two_squares`]; `m >= 0`.
pub fn two_squares_integer(m: &BigInt) -> Result<Option<(BigInt, BigInt)>> {
    if m.is_negative() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some((BigInt::zero(), BigInt::zero())));
    }
    let f = factor(m)?;
    let mut base = Gaussian::one();
    let mut split: Vec<(Gaussian, u32)> = Vec::new();
    let four = BigInt::from(4);
    for (p, e) in &f.factors {
        match p.mod_floor(&four).to_u8().unwrap() {
            2 => {
                let one_plus_i = Gaussian {
                    re: BigInt::one(),
                    im: BigInt::one(),
                };
                base = base.mul(&one_plus_i.pow(*e));
            }
            3 => {
                if e % 2 == 1 {
                    return Ok(None);
                }
                let scale = num_traits::pow(p.clone(), (*e / 2) as usize);
                base.re *= &scale;
                base.im *= &scale;
            }
            _ => {
                let (a, b) = cornacchia(p);
                split.push((Gaussian { re: a, im: b }, *e));
            }
        }
    }

    // Every representation comes from choosing, per split prime, how many of
    // its e factors use pi versus conj(pi).
    let mut candidates = vec![base];
    for (pi, e) in &split {
        let mut next = Vec::with_capacity(candidates.len() * (*e as usize + 1));
        for g in &candidates {
            for j in 0..=*e {
                next.push(g.mul(&pi.pow(j)).mul(&pi.conj().pow(e - j)));
            }
        }
        if next.len() > MAX_COMBINATIONS {
            next.truncate(MAX_COMBINATIONS);
        }
        candidates = next;
    }
    let best = candidates
        .into_iter()
        .map(|g| g.first_quadrant())
        .min_by(|a, b| {
            let ka = (a.re.clone().max(a.im.clone()), a.re.clone());
            let kb = (b.re.clone().max(b.im.clone()), b.re.clone());
            ka.cmp(&kb)
        })
        .expect("at least one candidate");
    debug_assert_eq!(&best.re * &best.re + &best.im * &best.im, *m);
    Ok(Some((best.re, best.im)))
}

/// Writes a nonnegative rational as `y^2 + z^2` with `y, z` rational, or
/// returns `None` when no such representation exists. Zero gives `(0, 0)`.
pub fn sum_of_two_squares(n: &Rational) -> Result<Option<(Rational, Rational)>> {
    if n.is_negative() {
        return Ok(None);
    }
    // n = (num * den) / den^2
    let den = n.denom();
    let m = n.numer() * den;
    Ok(two_squares_integer(&m)?.map(|(y, z)| {
        let y = Rational::new(y, den.clone());
        let z = Rational::new(z, den.clone());
        debug_assert_eq!(&y * &y + &z * &z, *n);
        (y, z)
    }))
}

/// Existence test without constructing the witness.
pub fn is_sum_of_two_squares(n: &Rational) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    if n.is_zero() {
        return Ok(true);
    }
    let m = n.numer() * n.denom();
    if let Some(small) = m.to_u64() {
        return is_sum_of_two_squares_u64(small, &FactorConfig::default());
    }
    let f = factor(&m)?;
    let four = BigInt::from(4);
    let three = BigInt::from(3);
    Ok(f.factors
        .iter()
        .all(|(p, e)| e % 2 == 0 || p.mod_floor(&four) != three))
}

/// Machine-word existence test used by the point searches.
///
/// Rejection usually happens early: half of all odd inputs are 3 mod 4,
/// and most of the rest carry a small prime 3 mod 4 to an odd power.
pub fn is_sum_of_two_squares_u64(m: u64, config: &FactorConfig) -> Result<bool> {
    if m == 0 {
        return Ok(true);
    }
    let mut m = m >> m.trailing_zeros();
    if m % 4 == 3 {
        return Ok(false);
    }
    for &p in small_primes().iter().skip(1).take_while(|&&p| p < 1000) {
        if p * p > m {
            // m is 1 or a prime
            return Ok(m % 4 == 1);
        }
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if p % 4 == 3 && e % 2 == 1 {
                return Ok(false);
            }
        }
    }
    // Every prime factor of m is 1 mod 4 or appears squared iff m is a sum
    // of two squares; in particular m = 3 mod 4 fails.
    if m % 4 == 3 {
        return Ok(false);
    }
    Ok(factor_u64(m, config)?
        .iter()
        .all(|(p, e)| e % 2 == 0 || p % 4 != 3))
}
