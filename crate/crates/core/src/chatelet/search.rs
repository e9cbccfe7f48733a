//! Global point search.
//!
//! `x` runs over `P^1(Q)` in the canonical height order, and each fiber conic
//! `y^2 - alpha z^2 = P(x)` is solved exactly. Heights are processed in
//! batches. Within a batch, heights are checked in parallel and the lowest
//! height with a point wins, so the answer does not depend on the worker
//! count.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{ChateletSurface, GlobalPoint, Witness};
use crate::arith::{exact_sqrt, factor, FactorConfig, Rational};
use crate::error::Result;
use crate::height::{projective_of_height, Slot};
use crate::local::{hilbert_symbol, is_sum_of_two_squares_u64, sum_of_two_squares, Place};

/// Box size for the norm-form search when `alpha` is not `+-1` times a square.
pub const NORM_SEARCH_BOUND: i64 = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest naive height of `x`.
    pub height_bound: u64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl SearchOptions {
    pub fn new(height_bound: u64) -> Self {
        SearchOptions {
            height_bound,
            workers: None,
        }
    }
}

/// Solves `y^2 - alpha z^2 = n` over Q.
///
/// Exact when `alpha` is a square or minus a square. Otherwise the local
/// conditions are checked exactly and a solution is sought in a box, so
/// `None` then means "not found".
pub fn represent_by_norm_form(
    s: &ChateletSurface,
    n: &Rational,
) -> Result<Option<(Rational, Rational)>> {
    let d = s.alpha_squarefree();
    let r = s.alpha_scale();
    let one = BigInt::from(1);
    if n.is_zero() {
        // Only the split conic has points besides the vertex.
        return Ok((d == &one).then(|| (r.clone(), Rational::one())));
    }
    // With Z = r z the form is y^2 - d Z^2.
    let yz = if d == &one {
        let two = Rational::from(2);
        Some(((n + Rational::one()) / &two, (n - Rational::one()) / &two))
    } else if d == &-one {
        sum_of_two_squares(n)?
    } else {
        general_norm_form(d, n)?
    };
    Ok(yz.map(|(y, big_z)| (y, big_z / r)))
}

fn general_norm_form(d: &BigInt, n: &Rational) -> Result<Option<(Rational, Rational)>> {
    let dr = Rational::from(d.clone());
    if hilbert_symbol(&dr, n, &Place::Real) == -1 {
        return Ok(None);
    }
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for part in [d.clone(), n.numer().clone(), n.denom().clone()] {
        primes.extend(factor(&part)?.primes().cloned());
    }
    primes.sort();
    primes.dedup();
    for p in primes {
        let place = Place::Finite(crate::arith::Prime::new(p)?);
        if hilbert_symbol(&dr, n, &place) == -1 {
            return Ok(None);
        }
    }
    // n = num/den: Y^2 - d Z^2 = num den W^2, ordered by max(W, Z).
    let m = n.numer() * n.denom();
    for k in 1..=NORM_SEARCH_BOUND {
        for (w, z) in (1..=k).map(|w| (w, k)).chain((0..k).map(|z| (k, z))) {
            let rhs = &m * BigInt::from(w * w) + d * BigInt::from(z * z);
            if let Some(y) = exact_sqrt(&rhs) {
                let scale = Rational::new(n.denom() * BigInt::from(w), BigInt::from(1));
                return Ok(Some((
                    Rational::from(y) / &scale,
                    Rational::from(z) / &scale,
                )));
            }
        }
    }
    Ok(None)
}

/// Integer data for the machine-word filter, available when `alpha` is
/// minus a square and the cleared coefficients are small.
struct FastFilter {
    /// `P(x) = lambda H(p, q) / q^4`; this is `num(lambda) den(lambda)`.
    lambda_class: i128,
    /// Ascending coefficients of `H`.
    coeffs: [i128; 5],
}

impl FastFilter {
    fn new(s: &ChateletSurface) -> Option<FastFilter> {
        if s.alpha_squarefree() != &BigInt::from(-1) {
            return None;
        }
        let (lambda, q) = s.poly().primitive_integer_form();
        let limit = 1i128 << 60;
        let lambda_class = (lambda.numer() * lambda.denom())
            .to_i128()
            .filter(|v| v.abs() < limit)?;
        let coeffs: Vec<i128> = q
            .iter()
            .map(|c| c.to_i128().filter(|v| v.abs() < limit))
            .collect::<Option<_>>()?;
        Some(FastFilter {
            lambda_class,
            coeffs: coeffs.try_into().ok()?,
        })
    }

    /// `Some(false)` when `P(p/q)` is certainly not a sum of two squares,
    /// `Some(true)` when it certainly is, `None` when undecided here.
    fn check(&self, p: i64, q: u64) -> Result<Option<bool>> {
        let (p, q) = (p as i128, q as i128);
        let mut h: i128 = 0;
        let mut pp: i128 = 1;
        let mut qp = [1i128; 5];
        for i in 1..5 {
            qp[i] = match qp[i - 1].checked_mul(q) {
                Some(v) => v,
                None => return Ok(None),
            };
        }
        for i in 0..5 {
            let term = self.coeffs[i]
                .checked_mul(pp)
                .and_then(|t| t.checked_mul(qp[4 - i]));
            h = match term.and_then(|t| h.checked_add(t)) {
                Some(v) => v,
                None => return Ok(None),
            };
            if i < 4 {
                pp = match pp.checked_mul(p) {
                    Some(v) => v,
                    None => return Ok(None),
                };
            }
        }
        let Some(m) = h.checked_mul(self.lambda_class) else {
            return Ok(None);
        };
        if m < 0 {
            return Ok(Some(false));
        }
        match u64::try_from(m) {
            Ok(m) => Ok(Some(is_sum_of_two_squares_u64(
                m,
                &FactorConfig::default(),
            )?)),
            Err(_) => Ok(None),
        }
    }
}

fn point_at(s: &ChateletSurface, x: Witness) -> Result<Option<GlobalPoint>> {
    let n = s.conic_value(&x);
    Ok(represent_by_norm_form(s, &n)?.map(|(y, z)| {
        let pt = GlobalPoint::new(x, y, z);
        assert!(
            pt.is_valid_on(s),
            "constructed point must satisfy the surface equation"
        );
        pt
    }))
}

fn search_height(
    s: &ChateletSurface,
    filter: Option<&FastFilter>,
    h: u64,
) -> Result<Option<GlobalPoint>> {
    for slot in projective_of_height(h) {
        let x = match slot {
            Slot::Infinity => Witness::Infinity,
            Slot::Finite(f) => {
                if let Some(filter) = filter {
                    if filter.check(f.num, f.den)? == Some(false) {
                        continue;
                    }
                }
                Witness::Finite(f.to_rational())
            }
        };
        if let Some(pt) = point_at(s, x)? {
            return Ok(Some(pt));
        }
    }
    Ok(None)
}

/// First rational point with `x` of height at most `height_bound`, in the
/// canonical order.
pub fn find_rational_point(s: &ChateletSurface, height_bound: u64) -> Result<Option<GlobalPoint>> {
    find_rational_point_with(s, &SearchOptions::new(height_bound))
}

pub fn find_rational_point_with(
    s: &ChateletSurface,
    opts: &SearchOptions,
) -> Result<Option<GlobalPoint>> {
    let run = || -> Result<Option<GlobalPoint>> {
        let filter = FastFilter::new(s);
        let mut lo = 1u64;
        let mut width = 8u64;
        while lo <= opts.height_bound {
            let hi = (lo + width - 1).min(opts.height_bound);
            let found = (lo..=hi).into_par_iter().find_map_first(|h| {
                match search_height(s, filter.as_ref(), h) {
                    Ok(None) => None,
                    other => Some(other),
                }
            });
            if let Some(r) = found {
                return r;
            }
            lo = hi + 1;
            width = (width * 2).min(1024);
        }
        Ok(None)
    };
    crate::with_workers(opts.workers, run)
}
