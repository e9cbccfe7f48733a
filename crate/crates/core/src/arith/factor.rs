//! Integer factorization: trial division, then Pollard-Brent rho under an
//! iteration budget. Primality is deterministic Miller-Rabin on machine words.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trial-division and rho limits for [`factor_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Primes below this bound are removed by trial division.
    pub trial_bound: u64,
    /// Total Pollard rho iterations allowed per cofactor.
    pub rho_budget: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_budget: 4_000_000,
        }
    }
}

/// `sign * prod(p^e)`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    #[serde(with = "crate::json::bigint_pairs")]
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= num_traits::pow(p.clone(), *e as usize);
        }
        n
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

const SIEVE_LIMIT: u64 = 1_000_000;

pub(crate) fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

const BIG_BASES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

/// Primality test. Exact for `n < 2^64`; above that, a strong-pseudoprime
/// test to the first 24 prime bases.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &small_primes()[..200] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for a in BIG_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None` if
/// the budget runs out. `budget` is decremented by the iterations used.
fn rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let m = 128u64;
        let mut g = 1;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            ys = y;
            while k < r && g == 1 {
                ys = y;
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                *budget = budget.checked_sub(lim)?;
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
        *budget = budget.checked_sub(1)?;
    }
    None
}

fn push_factor(out: &mut Vec<(u64, u32)>, p: u64) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    }
}

/// Factors a machine word. Trial division is capped at 4096 for speed;
/// rho plus deterministic Miller-Rabin take it from there.
pub fn factor_u64(mut n: u64, config: &FactorConfig) -> Result<Vec<(u64, u32)>> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        out.push((2, tz));
        n >>= tz;
    }
    let limit = config.trial_bound.min(4096);
    for &p in &small_primes()[1..] {
        if p >= limit || p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![n];
    let mut budget = config.rho_budget;
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push_factor(&mut out, m);
            continue;
        }
        // Cofactors here have no prime below 4096, so at most five factors.
        if let Some((root, k)) = (2..=5u32)
            .map(|k| (m.nth_root(k), k))
            .find(|&(r, k)| r > 1 && r.checked_pow(k) == Some(m))
        {
            stack.extend(std::iter::repeat_n(root, k as usize));
            continue;
        }
        match rho_u64(m, &mut budget) {
            Some(d) => {
                stack.push(d);
                stack.push(m / d);
            }
            None => {
                return Err(Error::FactoringExceededBudget {
                    cofactor: BigInt::from(m),
                })
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn rho_big(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1u64.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut q = one.clone();
        let mut steps = 0u64;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            q = (q * (&x - &y).abs()) % n;
            steps += 1;
            if steps.is_multiple_of(64) {
                d = q.gcd(n);
            }
            *budget = budget.checked_sub(1)?;
        }
        if &d != n {
            return Some(d);
        }
        // Batched product overshot; redo stepwise for this c.
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let g = (&x - &y).abs().gcd(n);
            *budget = budget.checked_sub(1)?;
            if g.is_one() {
                continue;
            }
            if &g != n {
                return Some(g);
            }
            break;
        }
    }
    None
}

/// Factors a nonzero integer with the default budget.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with(n, &FactorConfig::default())
}

pub fn factor_with(n: &BigInt, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    if let Some(small) = m.to_u64() {
        let factors = factor_u64(small, config)?
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
        return Ok(Factorization { sign, factors });
    }

    let mut found: Vec<(BigInt, u32)> = Vec::new();
    for &p in small_primes() {
        if p >= config.trial_bound {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            found.push((pb, e));
        }
    }

    let mut budget = config.rho_budget;
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if let Some(small) = c.to_u64() {
            for (p, e) in factor_u64(small, config)? {
                add_factor(&mut found, BigInt::from(p), e);
            }
            continue;
        }
        if is_prime(&c) {
            add_factor(&mut found, c, 1);
            continue;
        }
        if let Some((root, k)) = perfect_power(&c) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        match rho_big(&c, &mut budget) {
            Some(d) => {
                let rest = &c / &d;
                stack.push(d);
                stack.push(rest);
            }
            None => return Err(Error::FactoringExceededBudget { cofactor: c }),
        }
    }
    found.sort();
    Ok(Factorization {
        sign,
        factors: found,
    })
}

/// `n = root^k` with the largest such `k >= 2`, if any.
fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits.max(2)).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

fn add_factor(found: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    match found.iter_mut().find(|(q, _)| *q == p) {
        Some((_, k)) => *k += e,
        None => found.push((p, e)),
    }
}

/// All positive divisors, ascending.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let f = factor(n)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}
