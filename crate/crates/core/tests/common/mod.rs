//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's number theory.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(a, b)_p` from primitive solutions of `z^2 = a x^2 + b y^2 (mod p^k)`.
///
/// Valid when `v_p(a), v_p(b) <= 1` and `k >= 5`: a primitive solution mod
/// `p^5` then lifts (Hensel on a unit coordinate, mod 8 for squares at 2).
/// Works on square residues only, so the cost is `(p^k / 2)^2`.
pub fn hilbert_brute(a: i64, b: i64, p: u64, k: u32) -> i8 {
    let m = p.pow(k);
    let mut is_square = vec![false; m as usize];
    let mut is_unit_square = vec![false; m as usize];
    // (residue, comes from a unit)
    let mut squares: Vec<(u64, bool)> = Vec::new();
    for x in 0..m {
        let s = (x * x % m) as usize;
        let unit = x % p != 0;
        if unit {
            if !is_unit_square[s] {
                squares.push((s as u64, true));
            }
            is_unit_square[s] = true;
        } else if !is_square[s] {
            squares.push((s as u64, false));
        }
        is_square[s] = true;
    }
    squares.sort_unstable();
    squares.dedup();
    let am = a.rem_euclid(m as i64) as u64;
    let bm = b.rem_euclid(m as i64) as u64;
    for &(sx, ux) in &squares {
        let ax = am * sx % m;
        for &(sy, uy) in &squares {
            let v = ((ax + bm * sy % m) % m) as usize;
            if (ux || uy) && is_square[v] || is_unit_square[v] {
                return 1;
            }
        }
    }
    -1
}

/// `n = y^2 + z^2` over the integers, by search.
pub fn two_squares_brute(n: u64) -> bool {
    let mut y = 0u64;
    while y * y <= n {
        let r = n - y * y;
        let z = (r as f64).sqrt() as u64;
        if (z.saturating_sub(1)..=z + 1).any(|z| z * z == r) {
            return true;
        }
        y += 1;
    }
    false
}

/// `p`-primes below 100 by trial division.
pub fn primes_below(n: u64) -> Vec<u64> {
    (2..n)
        .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

/// A nonzero integer with `v_p <= 1`.
pub fn small_valuation(rng: &mut ChaCha8Rng, p: u64) -> i64 {
    loop {
        let n: i64 = rng.gen_range(-2000..=2000);
        if n != 0 && n % (p * p) as i64 != 0 {
            return n;
        }
    }
}
