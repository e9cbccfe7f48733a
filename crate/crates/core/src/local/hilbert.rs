use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{unit_residue_proxy, Place};
use crate::arith::{legendre_symbol, split_valuation, Prime, Rational};

/// Hilbert symbol `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial
/// solution over the completion at `v`. Panics if `a` or `b` is zero.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => hilbert_symbol_p(a, b, p),
    }
}

pub fn hilbert_symbol_p(a: &Rational, b: &Rational, p: &Prime) -> i8 {
    let (alpha, u) = split_valuation(a, p);
    let (beta, w) = split_valuation(b, p);
    let u = unit_residue_proxy(&u);
    let w = unit_residue_proxy(&w);

    if p.is_two() {
        let eight = BigInt::from(8);
        let u = u.mod_floor(&eight).to_u8().unwrap();
        let w = w.mod_floor(&eight).to_u8().unwrap();
        let eps = |x: u8| ((x - 1) / 2) % 2;
        let omega = |x: u8| ((x as u32 * x as u32 - 1) / 8) % 2;
        let e = (eps(u) * eps(w)) as i64
            + alpha.rem_euclid(2) * omega(w) as i64
            + beta.rem_euclid(2) * omega(u) as i64;
        return if e % 2 == 0 { 1 } else { -1 };
    }

    let p_mod_4 = p.get().mod_floor(&BigInt::from(4)).to_u8().unwrap();
    let eps_p = ((p_mod_4 as i64) - 1) / 2;
    let mut sign = if (alpha * beta).rem_euclid(2) * eps_p % 2 == 0 {
        1
    } else {
        -1
    };
    if beta.rem_euclid(2) == 1 {
        sign *= legendre_symbol(&u, p);
    }
    if alpha.rem_euclid(2) == 1 {
        sign *= legendre_symbol(&w, p);
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn examples() {
        let two = Place::finite(2);
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), &two), -1);
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(2, 1), &two), 1);
        for v in [
            Place::Real,
            Place::finite(2),
            Place::finite(3),
            Place::finite(7),
        ] {
            assert_eq!(hilbert_symbol(&rat(1, 1), &rat(-21, 5), &v), 1);
        }
        assert_eq!(hilbert_symbol(&rat(-1, 1), &rat(-1, 1), &Place::Real), -1);
        assert_eq!(
            hilbert_symbol(&rat(-1, 1), &rat(3, 1), &Place::finite(3)),
            -1
        );
        assert_eq!(
            hilbert_symbol(&rat(-1, 1), &rat(5, 1), &Place::finite(5)),
            1
        );
    }

    #[test]
    fn minus_one_minus_one_at_2_by_exhaustion() {
        // x^2 + y^2 + z^2 = 0 mod 8 only when all three are even.
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    if (x * x + y * y + z * z) % 8 == 0 {
                        assert!(x % 2 == 0 && y % 2 == 0 && z % 2 == 0);
                    }
                }
            }
        }
    }
}
