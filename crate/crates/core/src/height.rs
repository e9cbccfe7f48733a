//! Rationals and points of `P^1(Q)` listed by naive height.
//!
//! The canonical order is by height, then `|num|`, then `den`, positive
//! before negative. The point at infinity `(1 : 0)` has height 1 and comes
//! right after the height-1 rationals. Every search in the crate visits
//! candidates in this order, so the first hit is reproducible.

use num_integer::Integer;

/// `num / den` in lowest terms with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    pub num: i64,
    pub den: u64,
}

impl Fraction {
    pub fn height(&self) -> u64 {
        self.num.unsigned_abs().max(self.den)
    }

    pub fn to_rational(self) -> crate::Rational {
        crate::Rational::new(self.num, self.den)
    }
}

/// Sort key of a rational in the canonical order.
pub fn order_key(num: i64, den: u64) -> (u64, u64, u64, bool) {
    let a = num.unsigned_abs();
    (a.max(den), a, den, num < 0)
}

/// Every rational of height exactly `h`, in canonical order.
pub fn rationals_of_height(h: u64) -> Vec<Fraction> {
    assert!(h >= 1 && h <= i64::MAX as u64);
    if h == 1 {
        return [0, 1, -1]
            .into_iter()
            .map(|num| Fraction { num, den: 1 })
            .collect();
    }
    let mut out = Vec::new();
    let mut push_pm = |a: u64, den: u64| {
        out.push(Fraction { num: a as i64, den });
        out.push(Fraction {
            num: -(a as i64),
            den,
        });
    };
    // |num| < den = h
    for a in 1..h {
        if a.gcd(&h) == 1 {
            push_pm(a, h);
        }
    }
    // |num| = h > den
    for den in 1..h {
        if den.gcd(&h) == 1 {
            push_pm(h, den);
        }
    }
    out
}

/// A point of `P^1(Q)` in enumeration order: a rational or infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Slot {
    Finite(Fraction),
    Infinity,
}

/// Points of `P^1(Q)` of height exactly `h`, infinity included at `h = 1`.
pub fn projective_of_height(h: u64) -> Vec<Slot> {
    let mut out: Vec<Slot> = rationals_of_height(h)
        .into_iter()
        .map(Slot::Finite)
        .collect();
    if h == 1 {
        out.push(Slot::Infinity);
    }
    out
}

/// Points of `P^1(Q)` of height at most `bound`, in canonical order.
pub fn projective_up_to(bound: u64) -> impl Iterator<Item = Slot> {
    (1..=bound).flat_map(projective_of_height)
}
