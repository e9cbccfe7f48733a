//! The surface bundle
//!
//! ```text
//! y^2 + z^2 = a^2 P0(x) + b^2 Pinf(x),   a = 6u^2 - v^2,  b = 12 v^2,
//! P0 = (x^2 - 2)(3 - x^2),  Pinf = 2x^4 + 3x^2 - 1,
//! ```
//!
//! over `(u : v)` in `P^1`. The fiber polynomial is
//! `(2b^2 - a^2) x^4 + (3b^2 + 5a^2) x^2 - (6a^2 + b^2)`. The fiber at
//! `(1 : 0)` is `36 P0`, a scaled copy of the Iskovskikh surface. Every
//! other rational fiber is irreducible and has a rational point.

mod lemmas;
mod scan;

pub use lemmas::{
    degenerate_locus_check, fiber_identity_holds, real_point_identity_check, three_adic_lemma,
    two_adic_lemma, valuation_lemma_v2, valuation_lemma_v3, DegenerateLocusReport,
    TWO_ADIC_PRECISION,
};
pub use scan::{theorem_one_scan, FiberEntry, InfinityEntry, ScanOptions, ScanReport, ScanStatus};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::chatelet::ChateletSurface;
use crate::error::{Error, Result};
use crate::height::Slot;
use crate::quartic::{
    irreducibility_verdict, BiquadraticQuartic, IrreducibilityVerdict, QuarticPoly,
};

/// `(x^2 - 2)(3 - x^2) = -x^4 + 5x^2 - 6`.
pub fn p0() -> QuarticPoly {
    QuarticPoly::from_i64([-6, 0, 5, 0, -1])
}

/// `2x^4 + 3x^2 - 1`.
pub fn p_inf() -> QuarticPoly {
    QuarticPoly::from_i64([-1, 0, 3, 0, 2])
}

/// `(u : v)` with `gcd(u, v) = 1` and `v > 0`, or `(1 : 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct ProjectivePoint {
    u: BigInt,
    v: BigInt,
}

#[derive(Serialize, Deserialize)]
struct RawPoint {
    #[serde(with = "crate::json::bigint")]
    u: BigInt,
    #[serde(with = "crate::json::bigint")]
    v: BigInt,
}

impl TryFrom<RawPoint> for ProjectivePoint {
    type Error = Error;

    fn try_from(r: RawPoint) -> Result<Self> {
        let p = ProjectivePoint::new(r.u.clone(), r.v.clone())?;
        if p.u != r.u || p.v != r.v {
            return Err(Error::Parse(format!(
                "({} : {}) is not canonical",
                r.u, r.v
            )));
        }
        Ok(p)
    }
}

impl From<ProjectivePoint> for RawPoint {
    fn from(p: ProjectivePoint) -> Self {
        RawPoint { u: p.u, v: p.v }
    }
}

impl ProjectivePoint {
    /// Canonical representative of `(u : v)`.
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let (mut u, mut v) = (u.into(), v.into());
        if u.is_zero() && v.is_zero() {
            return Err(Error::PreconditionViolated("(0 : 0) is not a point".into()));
        }
        let g = u.gcd(&v);
        u /= &g;
        v /= &g;
        if v.is_negative() || (v.is_zero() && u.is_negative()) {
            u = -u;
            v = -v;
        }
        Ok(ProjectivePoint { u, v })
    }

    pub fn infinity() -> Self {
        ProjectivePoint {
            u: BigInt::one(),
            v: BigInt::zero(),
        }
    }

    /// `(r : 1)`.
    pub fn affine(r: &Rational) -> Self {
        ProjectivePoint {
            u: r.numer().clone(),
            v: r.denom().clone(),
        }
    }

    pub fn from_slot(s: Slot) -> Self {
        match s {
            Slot::Finite(f) => ProjectivePoint {
                u: f.num.into(),
                v: f.den.into(),
            },
            Slot::Infinity => ProjectivePoint::infinity(),
        }
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn is_affine(&self) -> bool {
        !self.v.is_zero()
    }

    pub fn height(&self) -> BigInt {
        self.u.abs().max(self.v.clone())
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;

    /// `inf`, or a rational `u` meaning `(u : 1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(ProjectivePoint::infinity());
        }
        Ok(ProjectivePoint::affine(&s.parse::<Rational>()?))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.u, self.v)
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a = 6u^2 - v^2`, `b = 12v^2`. Never both zero since 6 is not a square.
pub fn ab_parameters(pt: &ProjectivePoint) -> (BigInt, BigInt) {
    let (u, v) = (pt.u(), pt.v());
    (BigInt::from(6) * u * u - v * v, BigInt::from(12) * v * v)
}

/// `a^2 P0 + b^2 Pinf`, built from the two summands.
pub fn fiber_polynomial(a: &BigInt, b: &BigInt) -> QuarticPoly {
    let (a2, b2) = (Rational::from(a * a), Rational::from(b * b));
    let sum = p0().to_poly().scale(&a2).add(&p_inf().to_poly().scale(&b2));
    QuarticPoly::from_poly(&sum).expect("degree at most 4")
}

/// The fiber `y^2 + z^2 = a^2 P0(x) + b^2 Pinf(x)` over `pt`.
pub fn fiber_at(pt: &ProjectivePoint) -> Result<ChateletSurface> {
    let (a, b) = ab_parameters(pt);
    let poly = fiber_polynomial(&a, &b);
    if poly.degree() != Some(4) || !poly.is_separable() {
        return Err(Error::DegenerateFiber(format!("fiber over {pt} is {poly}")));
    }
    ChateletSurface::sum_of_squares(poly)
}

/// `P_t = Pinf + t^2 P0 = (2 - t^2) x^4 + (3 + 5t^2) x^2 - (6t^2 + 1)`.
pub fn p_t_polynomial(t: &Rational) -> BiquadraticQuartic {
    let t2 = t.square();
    BiquadraticQuartic::new(
        Rational::from(2) - &t2,
        Rational::from(3) + Rational::from(5) * &t2,
        -(Rational::from(6) * &t2 + Rational::one()),
    )
}

/// `t = a / b` for an affine point.
pub fn t_parameter(pt: &ProjectivePoint) -> Result<Rational> {
    let (a, b) = ab_parameters(pt);
    if b.is_zero() {
        return Err(Error::PreconditionViolated("t = a/b needs v != 0".into()));
    }
    Ok(Rational::new(a, b))
}

/// Irreducibility of the fiber polynomial over an affine point.
pub fn verify_fiber_irreducible(pt: &ProjectivePoint) -> Result<IrreducibilityVerdict> {
    if !pt.is_affine() {
        return Err(Error::PreconditionViolated(
            "the fiber over (1:0) is 36 P0, reducible by construction".into(),
        ));
    }
    let poly = fiber_at(pt)?.poly().clone();
    irreducibility_verdict(&poly.as_biquadratic().expect("even quartic"))
}

/// `b^2 - 4ac` for `P_t`, equal to `t^4 + 74t^2 + 17`.
pub fn discriminant_curve_value(t: &Rational) -> Rational {
    p_t_polynomial(t).criterion().discriminant
}

/// `ac = (-6t^2 - 1)(2 - t^2)` for `P_t`.
pub fn ac_curve_value(t: &Rational) -> Rational {
    p_t_polynomial(t).criterion().product
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn pt(u: i64, v: i64) -> ProjectivePoint {
        ProjectivePoint::new(u, v).unwrap()
    }

    #[test]
    fn canonical_points() {
        assert_eq!(pt(-2, -4), pt(1, 2));
        assert_eq!(pt(-3, 0), ProjectivePoint::infinity());
        assert!(ProjectivePoint::new(0, 0).is_err());
        assert_eq!(
            "inf".parse::<ProjectivePoint>().unwrap(),
            ProjectivePoint::infinity()
        );
        assert_eq!("-3/6".parse::<ProjectivePoint>().unwrap(), pt(-1, 2));
        assert_eq!("1/1".parse::<ProjectivePoint>().unwrap(), pt(1, 1));
        let j = serde_json::to_string(&pt(-1, 2)).unwrap();
        assert_eq!(j, r#"{"u":"-1","v":"2"}"#);
        assert!(serde_json::from_str::<ProjectivePoint>(r#"{"u":"2","v":"4"}"#).is_err());
    }

    #[test]
    fn parameters() {
        let ab = |u, v| {
            let (a, b) = ab_parameters(&pt(u, v));
            (a.try_into().unwrap(), b.try_into().unwrap())
        };
        assert_eq!(ab(0, 1), (-1i64, 12i64));
        assert_eq!(ab(1, 0), (6, 0));
        assert_eq!(ab(1, 1), (5, 12));
    }

    #[test]
    fn fibers() {
        assert_eq!(
            fiber_at(&pt(0, 1)).unwrap().poly(),
            &QuarticPoly::from_i64([-150, 0, 437, 0, 287])
        );
        assert_eq!(
            fiber_at(&pt(1, 1)).unwrap().poly(),
            &QuarticPoly::from_i64([-294, 0, 557, 0, 263])
        );
        assert_eq!(
            fiber_at(&ProjectivePoint::infinity()).unwrap().poly(),
            &p0().scale(&rat(36, 1))
        );
        assert_eq!(
            fiber_at(&pt(1, 1)).unwrap().poly().to_string(),
            "263x^4 + 557x^2 - 294"
        );
    }

    #[test]
    fn t_family() {
        assert_eq!(
            p_t_polynomial(&rat(0, 1)),
            BiquadraticQuartic::from_i64(2, 3, -1)
        );
        assert_eq!(
            p_t_polynomial(&rat(1, 1)),
            BiquadraticQuartic::from_i64(1, 8, -7)
        );
        assert_eq!(
            p_t_polynomial(&rat(5, 12)).scale(&rat(144, 1)),
            BiquadraticQuartic::from_i64(263, 557, -294)
        );
        assert_eq!(t_parameter(&pt(1, 1)).unwrap(), rat(5, 12));
        assert_eq!(discriminant_curve_value(&rat(0, 1)), rat(17, 1));
        assert_eq!(discriminant_curve_value(&rat(1, 1)), rat(92, 1));
        assert_eq!(ac_curve_value(&rat(0, 1)), rat(-2, 1));
        assert_eq!(ac_curve_value(&rat(1, 1)), rat(-7, 1));
        // (-6*4 - 1)(2 - 4) = (-25)(-2)
        assert_eq!(ac_curve_value(&rat(2, 1)), rat(50, 1));
    }

    #[test]
    fn irreducible_fibers() {
        assert!(verify_fiber_irreducible(&pt(0, 1)).unwrap().irreducible);
        assert!(verify_fiber_irreducible(&pt(1, 1)).unwrap().irreducible);
        assert!(verify_fiber_irreducible(&ProjectivePoint::infinity()).is_err());
    }
}
