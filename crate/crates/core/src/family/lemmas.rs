//! Exact checks of the algebraic and local facts behind the bundle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{ab_parameters, fiber_at, fiber_polynomial, ProjectivePoint};
use crate::arith::{int_valuation, is_rational_square, padic_valuation, Prime, Rational};
use crate::chatelet::{Coordinate, Evidence, LocalCertificate, SquareLift, Witness};
use crate::error::{Error, Result};
use crate::height::projective_up_to;
use crate::local::{hilbert_symbol, Place};
use crate::quartic::QuarticPoly;

/// Precision `2^k` of the 2-adic lift.
pub const TWO_ADIC_PRECISION: u32 = 6;

/// `a^2 P0 + b^2 Pinf` equals `(2b^2 - a^2) x^4 + (3b^2 + 5a^2) x^2 - (6a^2 + b^2)`.
pub fn fiber_identity_holds(a: &BigInt, b: &BigInt) -> bool {
    let (a2, b2) = (a * a, b * b);
    let closed = QuarticPoly::new([
        Rational::from(-(BigInt::from(6) * &a2 + &b2)),
        Rational::zero(),
        Rational::from(BigInt::from(3) * &b2 + BigInt::from(5) * &a2),
        Rational::zero(),
        Rational::from(BigInt::from(2) * &b2 - &a2),
    ]);
    fiber_polynomial(a, b) == closed
}

/// `4(2b^2 - a^2)(-6a^2 - b^2) - (3b^2 + 5a^2)^2 = -17b^4 - 74a^2b^2 - a^4`.
pub fn real_point_identity_check(a: &BigInt, b: &BigInt) -> bool {
    let (a2, b2) = (a * a, b * b);
    let lhs = BigInt::from(4) * (BigInt::from(2) * &b2 - &a2) * (-BigInt::from(6) * &a2 - &b2)
        - (BigInt::from(3) * &b2 + BigInt::from(5) * &a2).pow(2);
    let rhs = -BigInt::from(17) * &b2 * &b2 - BigInt::from(74) * &a2 * &b2 - &a2 * &a2;
    lhs == rhs
}

fn affine_ab(pt: &ProjectivePoint) -> Result<(BigInt, BigInt)> {
    if !pt.is_affine() {
        return Err(Error::PreconditionViolated(format!("{pt} is not affine")));
    }
    Ok(ab_parameters(pt))
}

/// `v_3(b/a) >= 1`. If `3 | v` then `v_3(a) = 1` and `v_3(b) >= 3`;
/// otherwise `3 !| a` and `v_3(b) = 1`.
pub fn valuation_lemma_v3(pt: &ProjectivePoint) -> Result<u32> {
    let (a, b) = affine_ab(pt)?;
    let three = BigInt::from(3);
    let (va, vb) = (int_valuation(&a, &three), int_valuation(&b, &three));
    let predicted = if pt.v().is_multiple_of(&three) {
        va == 1 && vb >= 3
    } else {
        va == 0 && vb == 1
    };
    if !predicted || vb <= va {
        return Err(Error::LemmaViolation(format!(
            "v_3(b/a) at {pt}: v_3(a) = {va}, v_3(b) = {vb}"
        )));
    }
    Ok(vb - va)
}

/// `v_2(b/a) >= 2`. If `v` is odd then `a` is odd and `v_2(b) = 2`;
/// otherwise `v_2(a) = 1` and `v_2(b) >= 4`.
pub fn valuation_lemma_v2(pt: &ProjectivePoint) -> Result<u32> {
    let (a, b) = affine_ab(pt)?;
    let two = BigInt::from(2);
    let (va, vb) = (int_valuation(&a, &two), int_valuation(&b, &two));
    let predicted = if pt.v().is_odd() {
        va == 0 && vb == 2
    } else {
        va == 1 && vb >= 4
    };
    if !predicted || vb < va + 2 {
        return Err(Error::LemmaViolation(format!(
            "v_2(b/a) at {pt}: v_2(a) = {va}, v_2(b) = {vb}"
        )));
    }
    Ok(vb - va)
}

/// The 2-adic point at `x = 0`: `y = a` and
/// `z^2 = -7a^2 - b^2 = a^2 (-7 - (b/a)^2)`, where `-7 - (b/a)^2 = 1 mod 8`
/// because `v_2(b/a) >= 2`.
pub fn two_adic_lemma(pt: &ProjectivePoint) -> Result<LocalCertificate> {
    let s = fiber_at(pt)?;
    let (a, _) = ab_parameters(pt);
    let x = Witness::finite(0);
    let value = s.conic_value(&x);
    let a = Rational::from(a);
    let lift = SquareLift::new(
        &s,
        &value,
        Coordinate::Z,
        a.clone(),
        a,
        &Prime::small(2),
        TWO_ADIC_PRECISION,
    )
    .map_err(|e| Error::LemmaViolation(format!("2-adic lift at {pt}: {e}")))?;
    let cert = LocalCertificate {
        place: Place::finite(2),
        witness: x,
        conic_value: value,
        evidence: Evidence::HenselLift(lift),
    };
    debug_assert!(cert.replay(&s));
    Ok(cert)
}

/// The 3-adic point at `x = 3^-n`: `v_3(P(x)) = -4n + 2 v_3(a)` is even and
/// the unit part is a unit, so `(-1, P(x))_3 = 1`. Returns the least `n`.
pub fn three_adic_lemma(pt: &ProjectivePoint) -> Result<LocalCertificate> {
    let s = fiber_at(pt)?;
    let (a, _) = ab_parameters(pt);
    let three = Prime::small(3);
    let va = int_valuation(&a, three.get()) as i64;
    let place = Place::Finite(three.clone());
    for n in 1..=8i32 {
        let x = Witness::Finite(Rational::from(3).pow(-n));
        let value = s.conic_value(&x);
        if padic_valuation(&value, &three) == -4 * n as i64 + 2 * va
            && hilbert_symbol(s.alpha(), &value, &place) == 1
        {
            let cert = LocalCertificate {
                place,
                witness: x,
                conic_value: value,
                evidence: Evidence::HilbertSymbolPlusOne,
            };
            debug_assert!(cert.replay(&s));
            return Ok(cert);
        }
    }
    Err(Error::LemmaViolation(format!(
        "no 3-adic witness 3^-n at {pt}"
    )))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DegenerateLocusReport {
    pub height_bound: u64,
    pub fibers_checked: u64,
    /// Points whose fiber is inseparable or drops degree.
    pub degenerate: Vec<ProjectivePoint>,
    /// The `x^4` coefficient `2b^2 - a^2` vanishes only if `t^2 = 2`.
    pub t_squared_two_excluded: bool,
    /// `disc = 16 (2b^2 - a^2)(-6a^2 - b^2)(17b^4 + 74a^2b^2 + a^4)^2`, which
    /// vanishes only when the degree drops.
    pub discriminant_factor_positive: bool,
}

impl DegenerateLocusReport {
    pub fn holds(&self) -> bool {
        self.degenerate.is_empty()
            && self.t_squared_two_excluded
            && self.discriminant_factor_positive
    }
}

/// Scans every `(u : v)` of height at most `height_bound`.
pub fn degenerate_locus_check(height_bound: u64) -> DegenerateLocusReport {
    let mut degenerate = Vec::new();
    let mut fibers_checked = 0;
    let mut factor_positive = true;
    for slot in projective_up_to(height_bound) {
        let pt = ProjectivePoint::from_slot(slot);
        fibers_checked += 1;
        let (a, b) = ab_parameters(&pt);
        let (a2, b2) = (&a * &a, &b * &b);
        let f = BigInt::from(17) * &b2 * &b2 + BigInt::from(74) * &a2 * &b2 + &a2 * &a2;
        factor_positive &= f.is_positive();
        if fiber_at(&pt).is_err() {
            degenerate.push(pt);
        }
    }
    DegenerateLocusReport {
        height_bound,
        fibers_checked,
        degenerate,
        t_squared_two_excluded: is_rational_square(&Rational::from(2)).is_none(),
        discriminant_factor_positive: factor_positive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(u: i64, v: i64) -> ProjectivePoint {
        ProjectivePoint::new(u, v).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation_lemma_v3(&pt(1, 1)).unwrap(), 1);
        assert_eq!(valuation_lemma_v3(&pt(1, 3)).unwrap(), 2);
        assert_eq!(valuation_lemma_v3(&pt(2, 1)).unwrap(), 1);
        assert_eq!(valuation_lemma_v2(&pt(1, 1)).unwrap(), 2);
        assert_eq!(valuation_lemma_v2(&pt(1, 2)).unwrap(), 3);
        assert_eq!(valuation_lemma_v2(&pt(0, 1)).unwrap(), 2);
        assert!(valuation_lemma_v2(&ProjectivePoint::infinity()).is_err());
    }

    #[test]
    fn identities() {
        for (a, b) in [(1, 0), (0, 1), (5, 12), (-7, 3)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            assert!(fiber_identity_holds(&a, &b));
            assert!(real_point_identity_check(&a, &b));
        }
    }

    #[test]
    fn adic_certificates() {
        let s = fiber_at(&pt(1, 1)).unwrap();
        let c = three_adic_lemma(&pt(1, 1)).unwrap();
        assert_eq!(c.witness, Witness::Finite(Rational::new(1, 3)));
        assert_eq!(padic_valuation(&c.conic_value, &Prime::small(3)), -4);
        assert!(c.replay(&s));
        let c = two_adic_lemma(&pt(0, 1)).unwrap();
        assert!(c.replay(&fiber_at(&pt(0, 1)).unwrap()));
        // The (1:0) fiber also passes: z^2 = -7 * 36.
        let inf = ProjectivePoint::infinity();
        assert!(two_adic_lemma(&inf)
            .unwrap()
            .replay(&fiber_at(&inf).unwrap()));
    }

    #[test]
    fn degenerate_locus_small() {
        let r = degenerate_locus_check(12);
        assert!(r.holds());
        assert!(r.fibers_checked > 100);
    }
}
