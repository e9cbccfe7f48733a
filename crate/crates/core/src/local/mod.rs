//! Squares and norms over the completions of Q: local square tests, Hilbert
//! symbols, Hensel lifting of square roots, and explicit sums of two squares.

mod hensel;
mod hilbert;
mod two_squares;

pub use hensel::{hensel_lift_sqrt, sqrt_mod_prime, PAdicApproximation};
pub use hilbert::{hilbert_symbol, hilbert_symbol_p};
pub use two_squares::{
    is_sum_of_two_squares, is_sum_of_two_squares_u64, sum_of_two_squares, two_squares_integer,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{legendre_symbol, split_valuation, Prime, Rational};

/// A place of Q.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "prime", rename_all = "snake_case")]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn finite(p: u64) -> Place {
        Place::Finite(Prime::small(p))
    }

    pub fn prime(&self) -> Option<&Prime> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// For a `p`-adic unit `u = n/d`, the residue `n * d` has the same class
/// mod 8 (p = 2) and the same Legendre symbol (odd p) as `u`.
pub(crate) fn unit_residue_proxy(u: &Rational) -> BigInt {
    u.numer() * u.denom()
}

/// Whether `r` is a nonzero square in `Q_p`.
pub fn is_square_in_qp(r: &Rational, p: &Prime) -> bool {
    if r.is_zero() {
        return true;
    }
    let (v, u) = split_valuation(r, p);
    if v % 2 != 0 {
        return false;
    }
    let proxy = unit_residue_proxy(&u);
    if p.is_two() {
        proxy.mod_floor(&BigInt::from(8)) == BigInt::from(1)
    } else {
        legendre_symbol(&proxy, p) == 1
    }
}

pub fn is_square_in_r(r: &Rational) -> bool {
    !r.is_negative()
}

/// Square test at an arbitrary place.
pub fn is_local_square(r: &Rational, place: &Place) -> bool {
    match place {
        Place::Real => is_square_in_r(r),
        Place::Finite(p) => is_square_in_qp(r, p),
    }
}
