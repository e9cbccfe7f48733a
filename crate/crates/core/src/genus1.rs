//! Genus-one quartic curves `w^2 = f(t)`.
//!
//! Two of them decide irreducibility across the whole family:
//! `C: w^2 = t^4 + 74t^2 + 17` (the discriminant `b^2 - 4ac` of `P_t`) and
//! `C': w^2 = (-6t^2 - 1)(2 - t^2) = 6t^4 - 11t^2 - 2` (the product `ac`).
//! Their lack of rational points rests on Mordell-Weil computations that are
//! trusted here, not redone. This module supplies exhaustive searches to a
//! height bound and the exact parts of the argument.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    exact_sqrt, exact_sqrt_u128, is_rational_square, legendre_symbol, padic_valuation, reduce_mod,
    Prime, Rational,
};
use crate::error::{Error, Result};
use crate::height::{order_key, projective_of_height, Slot};
use crate::local::{is_square_in_qp, Place};
use crate::quartic::{positive_point, real_root_count, Poly, QuarticPoly};

/// `w^2 = f(t)` with `f` separable of degree 4; the smooth model lives in
/// weighted projective space `P(1, 1, 2)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuarticCurve {
    pub f: QuarticPoly,
}

impl QuarticCurve {
    pub fn new(f: QuarticPoly) -> Result<Self> {
        if f.degree() != Some(4) || !f.is_separable() {
            return Err(Error::InvalidSurface(format!(
                "{f} is not a separable quartic"
            )));
        }
        Ok(QuarticCurve { f })
    }

    /// `w^2 = t^4 + 74t^2 + 17`.
    pub fn c() -> Self {
        QuarticCurve::new(QuarticPoly::from_i64([17, 0, 74, 0, 1])).expect("separable")
    }

    /// `w^2 = (-6t^2 - 1)(2 - t^2) = 6t^4 - 11t^2 - 2`.
    pub fn c_prime() -> Self {
        QuarticCurve::new(QuarticPoly::from_i64([-2, 0, -11, 0, 6])).expect("separable")
    }

    fn is_even(&self) -> bool {
        self.f.coeff(1).is_zero() && self.f.coeff(3).is_zero()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t: Rational,
    pub w: Rational,
}

/// Integer form of the search: `w^2 = f(p/q)` iff `k H(p, q)` is an integer
/// square, where `H` is the primitive homogenization and `k` clears the
/// content.
struct Homogenized {
    k: BigInt,
    den: BigInt,
    coeffs: [BigInt; 5],
}

impl Homogenized {
    fn new(f: &QuarticPoly) -> Self {
        let (lambda, coeffs) = f.primitive_integer_form();
        Homogenized {
            k: lambda.numer() * lambda.denom(),
            den: lambda.denom().clone(),
            coeffs,
        }
    }

    fn value_big(&self, p: i64, q: u64) -> BigInt {
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        let mut h = BigInt::zero();
        for i in 0..5 {
            h += &self.coeffs[i] * p.pow(i as u32) * q.pow(4 - i as u32);
        }
        &self.k * h
    }

    /// `w = sqrt(k H) / (den q^2)`.
    fn w_from_root(&self, root: BigInt, q: u64) -> Rational {
        Rational::new(root, &self.den * BigInt::from(q) * BigInt::from(q))
    }

    /// Machine-word coefficients `k c_i`, when every value in the box fits.
    fn small(&self, bound: u64) -> Option<[i128; 5]> {
        let max = self.coeffs.iter().map(|c| (&self.k * c).abs()).max()?;
        let b4 = BigInt::from(bound).pow(4);
        if max * b4 * 5 >= BigInt::from(1u128 << 125) {
            return None;
        }
        let v: Vec<i128> = self
            .coeffs
            .iter()
            .map(|c| (&self.k * c).to_i128().unwrap())
            .collect();
        v.try_into().ok()
    }
}

/// Points over one denominator `q`, numerators `lo..=hi`.
fn search_column(
    h: &Homogenized,
    small: Option<&[i128; 5]>,
    q: u64,
    lo: i64,
    hi: i64,
) -> Vec<(i64, u64, BigInt)> {
    let mut out = Vec::new();
    match small {
        Some(c) => {
            let qi = q as i128;
            let q2 = qi * qi;
            let scaled = [c[0] * q2 * q2, c[1] * q2 * qi, c[2] * q2, c[3] * qi, c[4]];
            for p in lo..=hi {
                let pi = p as i128;
                let v = (((scaled[4] * pi + scaled[3]) * pi + scaled[2]) * pi + scaled[1]) * pi
                    + scaled[0];
                if v < 0 {
                    continue;
                }
                if let Some(r) = exact_sqrt_u128(v as u128) {
                    if p.unsigned_abs().gcd(&q) == 1 {
                        out.push((p, q, BigInt::from(r)));
                    }
                }
            }
        }
        None => {
            for p in lo..=hi {
                if p.unsigned_abs().gcd(&q) != 1 {
                    continue;
                }
                if let Some(r) = exact_sqrt(&h.value_big(p, q)) {
                    out.push((p, q, r));
                }
            }
        }
    }
    out
}

/// Every affine rational point with `height(t) <= height_bound`, ordered by
/// `t` in the canonical height order, `w >= 0` first.
pub fn affine_point_search(curve: &QuarticCurve, height_bound: u64) -> Vec<CurvePoint> {
    let h = Homogenized::new(&curve.f);
    let small = h.small(height_bound);
    let bound = height_bound as i64;
    let even = curve.is_even();
    let mut hits: Vec<(i64, u64, BigInt)> = (1..=height_bound)
        .into_par_iter()
        .flat_map_iter(|q| {
            let lo = if even { 0 } else { -bound };
            search_column(&h, small.as_ref(), q, lo, bound)
        })
        .collect();
    if even {
        let mirrored: Vec<_> = hits
            .iter()
            .filter(|(p, _, _)| *p != 0)
            .map(|(p, q, r)| (-p, *q, r.clone()))
            .collect();
        hits.extend(mirrored);
    }
    hits.sort_by_key(|(p, q, _)| order_key(*p, *q));
    let mut out = Vec::new();
    for (p, q, root) in hits {
        let t = Rational::new(p, q);
        let w = h.w_from_root(root, q);
        debug_assert_eq!(w.square(), curve.f.evaluate(&t));
        if !w.is_zero() {
            out.push(CurvePoint {
                t: t.clone(),
                w: w.clone(),
            });
        }
        out.push(CurvePoint { t, w: -w });
    }
    out
}

/// Reference search over the box `|num|, den <= bound`, with no shortcuts.
pub fn naive_point_search(curve: &QuarticCurve, bound: u64) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for h in 1..=bound {
        for slot in projective_of_height(h) {
            if let Slot::Finite(fr) = slot {
                let t = fr.to_rational();
                if let Some(w) = is_rational_square(&curve.f.evaluate(&t)) {
                    if !w.is_zero() {
                        out.push(CurvePoint {
                            t: t.clone(),
                            w: w.clone(),
                        });
                    }
                    out.push(CurvePoint { t, w: -w });
                }
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InfinityPoints {
    pub count: u32,
    /// The `w`-coordinates `+-sqrt(c4)` at `(t : s) = (1 : 0)`.
    pub w_values: Vec<Rational>,
}

/// At `s = 0` the model reads `w^2 = c4 t^4`: two points iff `c4` is a
/// nonzero square.
pub fn points_at_infinity(curve: &QuarticCurve) -> InfinityPoints {
    match is_rational_square(curve.f.coeff(4)) {
        Some(r) if !r.is_zero() => InfinityPoints {
            count: 2,
            w_values: vec![r.clone(), -r],
        },
        _ => InfinityPoints {
            count: 0,
            w_values: Vec::new(),
        },
    }
}

/// The two fixed loci of `(t, w) -> (+-t, +-w)` on an even curve.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymmetryAnalysis {
    /// `f(0)`; `t = 0` gives a point iff this is a square.
    pub t_zero_value: Rational,
    pub t_zero_has_point: bool,
    /// Roots `s` of `f = c4 s^2 + c2 s + c0` as a polynomial in `s = t^2`,
    /// when rational.
    pub w_zero_t_squared: Vec<Rational>,
    /// `w = 0` gives a point iff some root `s` is a rational square.
    pub w_zero_has_point: bool,
}

impl SymmetryAnalysis {
    /// Neither fixed locus carries a rational point.
    pub fn excludes_fixed_points(&self) -> bool {
        !self.t_zero_has_point && !self.w_zero_has_point
    }
}

pub fn symmetry_case_analysis(curve: &QuarticCurve) -> Result<SymmetryAnalysis> {
    if !curve.is_even() {
        return Err(Error::PreconditionViolated(
            "symmetry analysis needs an even quartic".into(),
        ));
    }
    let (a, b, c) = (curve.f.coeff(4), curve.f.coeff(2), curve.f.coeff(0));
    let t_zero_value = c.clone();
    let t_zero_has_point = is_rational_square(&t_zero_value).is_some();
    let disc = b.square() - Rational::from(4) * a * c;
    let roots = match is_rational_square(&disc) {
        Some(r) => {
            let two_a = Rational::from(2) * a;
            let mut v = vec![(-b + &r) / &two_a, (-b - &r) / &two_a];
            v.sort();
            v.dedup();
            v
        }
        None => Vec::new(),
    };
    let w_zero_has_point = roots.iter().any(|s| is_rational_square(s).is_some());
    Ok(SymmetryAnalysis {
        t_zero_value,
        t_zero_has_point,
        w_zero_t_squared: roots,
        w_zero_has_point,
    })
}

/// The case analysis on `C'`: `t = 0` gives `w^2 = -2`, and `w = 0` gives
/// `t^2 = 2` or `t^2 = -1/6`.
pub fn symmetry_case_analysis_cprime() -> SymmetryAnalysis {
    symmetry_case_analysis(&QuarticCurve::c_prime()).expect("even")
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LocalPointEvidence {
    pub place: Place,
    /// Exact at the real place and at odd primes; at 2 only `Some(true)`
    /// from a witness, or `None`.
    pub solvable: Option<bool>,
    /// `t`, or `None` for the point at infinity or when no witness was
    /// needed.
    pub witness_t: Option<Rational>,
}

/// Recursion cap for the residue-class descent. Separable input stops long
/// before this unless `p^20` divides the discriminant.
const DESCENT_DEPTH: u32 = 20;

/// Above this the descent would enumerate too many residues.
const DESCENT_PRIME_CAP: u64 = 10_000;

/// Whether `w^2 = g(t)` has a point with `t` in `Z_p`, for odd `p`.
///
/// Scale `g` to `p^c h` with `h` primitive. A residue `x` with `h(x) != 0`
/// settles its class: a square unit times `p^c` is a square iff `c` is
/// even. A simple root of `h mod p` lifts to a root of `g`. Only multiple
/// roots need `g(x + p u)`.
fn zp_soluble(g: &Poly, p: &Prime, depth: u32) -> Option<bool> {
    if g.is_zero() {
        return Some(true);
    }
    let c = g
        .coeffs()
        .iter()
        .filter(|a| !a.is_zero())
        .map(|a| padic_valuation(a, p))
        .min()?;
    let h = g.scale(&Rational::from(p.get().clone()).pow(-(c as i32)));
    let modulus = p.get();
    let reduced: Vec<BigInt> = h
        .coeffs()
        .iter()
        .map(|a| reduce_mod(a, modulus).expect("p-integral"))
        .collect();
    let eval = |coeffs: &[BigInt], x: &BigInt| -> BigInt {
        coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(modulus))
    };
    let deriv: Vec<BigInt> = reduced
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * BigInt::from(i))
        .collect();
    let mut unknown = false;
    let mut x = BigInt::zero();
    while &x < modulus {
        let v = eval(&reduced, &x);
        if !v.is_zero() {
            if c % 2 == 0 && legendre_symbol(&v, p) == 1 {
                return Some(true);
            }
        } else if !eval(&deriv, &x).is_zero() {
            return Some(true);
        } else if depth == 0 {
            unknown = true;
        } else {
            let shift = Poly::new(vec![
                Rational::from(x.clone()),
                Rational::from(modulus.clone()),
            ]);
            match zp_soluble(&g.compose(&shift), p, depth - 1) {
                Some(true) => return Some(true),
                None => unknown = true,
                Some(false) => {}
            }
        }
        x += 1;
    }
    if unknown {
        None
    } else {
        Some(false)
    }
}

/// Whether the smooth model of `w^2 = f(t)` has a `Q_p`-point, for odd `p`:
/// either `t` in `Z_p`, or `t = 1/s` with `s` in `pZ_p` on the reversed
/// quartic. `None` for `p = 2`, huge `p`, or an exhausted descent.
pub fn qp_points_exist(curve: &QuarticCurve, p: &Prime) -> Option<bool> {
    if p.is_two() || p.to_u64().is_none_or(|p| p > DESCENT_PRIME_CAP) {
        return None;
    }
    let f = curve.f.to_poly();
    let reversed = Poly::new(curve.f.coefficients.iter().rev().cloned().collect());
    let at_infinity = reversed.compose(&Poly::new(vec![
        Rational::zero(),
        Rational::from(p.get().clone()),
    ]));
    match (
        zp_soluble(&f, p, DESCENT_DEPTH),
        zp_soluble(&at_infinity, p, DESCENT_DEPTH),
    ) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

/// Real points decided exactly, `p`-adic points by a witness search over
/// `t = m p^e` and, for odd `p`, by [`qp_points_exist`].
pub fn local_points_evidence(curve: &QuarticCurve, prime_bound: u64) -> Vec<LocalPointEvidence> {
    let f = curve.f.to_poly();
    let c4 = curve.f.coeff(4).clone();
    let real = if c4.is_positive() {
        LocalPointEvidence {
            place: Place::Real,
            solvable: Some(true),
            witness_t: None,
        }
    } else {
        let x = positive_point(&f);
        LocalPointEvidence {
            place: Place::Real,
            solvable: Some(x.is_some() || real_root_count(&f) > 0),
            witness_t: x,
        }
    };
    let mut out = vec![real];
    for p in crate::arith::small_primes()
        .iter()
        .take_while(|&&p| p <= prime_bound)
    {
        let prime = Prime::small(*p);
        let is_point = |v: &Rational| v.is_zero() || is_square_in_qp(v, &prime);
        let pr = Rational::from(*p as i64);
        let mut witness: Option<Option<Rational>> = None;
        if is_point(&c4) {
            witness = Some(None);
        }
        'outer: for e in -4i32..=4 {
            if witness.is_some() {
                break;
            }
            let unit = pr.pow(e);
            for m in 0..(p.pow(2).min(512) as i64) {
                let t = Rational::from(m) * &unit;
                if is_point(&f.eval(&t)) {
                    witness = Some(Some(t));
                    break 'outer;
                }
            }
        }
        let solvable = match &witness {
            Some(_) => Some(true),
            None => qp_points_exist(curve, &prime),
        };
        out.push(LocalPointEvidence {
            place: Place::Finite(prime),
            solvable,
            witness_t: witness.flatten(),
        });
    }
    out
}

/// The two curves of the irreducibility argument.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedCurve {
    C,
    CPrime,
}

impl NamedCurve {
    pub fn curve(self) -> QuarticCurve {
        match self {
            NamedCurve::C => QuarticCurve::c(),
            NamedCurve::CPrime => QuarticCurve::c_prime(),
        }
    }

    /// The Mordell-Weil group, taken on trust from an external computation.
    pub fn trusted_input(self) -> TrustedInput {
        let (statement, consequence) = match self {
            NamedCurve::C => (
                "Jac(C)(Q) = Z/2Z",
                "the smooth model has 2 rational points at infinity, so it is its own Jacobian and C has no affine rational point",
            ),
            NamedCurve::CPrime => (
                "Jac(C')(Q) = Z/2Z",
                "C' has 0 or 2 rational points; the symmetries (t, w) -> (+-t, +-w) force any such pair to have t = 0 or w = 0",
            ),
        };
        TrustedInput {
            statement: statement.to_string(),
            consequence: consequence.to_string(),
        }
    }
}

/// A fact the argument depends on that is recorded here, not recomputed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TrustedInput {
    pub statement: String,
    pub consequence: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CurveEvidence {
    pub curve: NamedCurve,
    pub f: QuarticPoly,
    pub height_bound: u64,
    pub affine_points: Vec<CurvePoint>,
    pub at_infinity: InfinityPoints,
    /// Present for even curves.
    pub symmetry: Option<SymmetryAnalysis>,
    pub local: Vec<LocalPointEvidence>,
    pub trusted_input: TrustedInput,
}

impl CurveEvidence {
    /// Everything computed agrees with the curve having no affine point.
    pub fn consistent(&self) -> bool {
        self.affine_points.is_empty()
            && self.symmetry.as_ref().is_none_or(|s| match self.curve {
                NamedCurve::CPrime => s.excludes_fixed_points(),
                NamedCurve::C => true,
            })
    }
}

/// Bounded search, points at infinity, the symmetry cases and local
/// evidence at primes up to 50.
pub fn curve_evidence(which: NamedCurve, height_bound: u64) -> CurveEvidence {
    let curve = which.curve();
    CurveEvidence {
        curve: which,
        height_bound,
        affine_points: affine_point_search(&curve, height_bound),
        at_infinity: points_at_infinity(&curve),
        symmetry: symmetry_case_analysis(&curve).ok(),
        local: local_points_evidence(&curve, 50),
        trusted_input: which.trusted_input(),
        f: curve.f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn curves_have_no_small_points() {
        assert!(affine_point_search(&QuarticCurve::c(), 100).is_empty());
        assert!(affine_point_search(&QuarticCurve::c_prime(), 100).is_empty());
    }

    #[test]
    fn t4_plus_1() {
        let c = QuarticCurve::new(QuarticPoly::from_i64([1, 0, 0, 0, 1])).unwrap();
        let pts = affine_point_search(&c, 10);
        assert_eq!(
            pts,
            vec![
                CurvePoint {
                    t: rat(0, 1),
                    w: rat(1, 1)
                },
                CurvePoint {
                    t: rat(0, 1),
                    w: rat(-1, 1)
                }
            ]
        );
    }

    #[test]
    fn matches_naive_on_curves_with_points() {
        let samples = [
            QuarticPoly::from_i64([1, 4, -1, 2, 1]),
            QuarticPoly::from_i64([4, 0, -3, 0, 1]),
            QuarticPoly::new([rat(1, 4), rat(0, 1), rat(2, 1), rat(1, 1), rat(9, 1)]),
        ];
        for f in samples {
            let c = QuarticCurve::new(f).unwrap();
            let mut fast = affine_point_search(&c, 20);
            let mut slow = naive_point_search(&c, 20);
            fast.sort_by(|a, b| (&a.t, &a.w).cmp(&(&b.t, &b.w)));
            slow.sort_by(|a, b| (&a.t, &a.w).cmp(&(&b.t, &b.w)));
            assert_eq!(fast, slow);
            assert!(!fast.is_empty());
        }
    }

    #[test]
    fn infinity() {
        assert_eq!(points_at_infinity(&QuarticCurve::c()).count, 2);
        assert_eq!(points_at_infinity(&QuarticCurve::c_prime()).count, 0);
        let c = QuarticCurve::new(QuarticPoly::from_i64([1, 0, 0, 0, 3])).unwrap();
        assert_eq!(points_at_infinity(&c).count, 0);
    }

    #[test]
    fn cprime_cases() {
        let s = symmetry_case_analysis_cprime();
        assert_eq!(s.t_zero_value, rat(-2, 1));
        assert!(!s.t_zero_has_point);
        assert_eq!(s.w_zero_t_squared, vec![rat(-1, 6), rat(2, 1)]);
        assert!(s.excludes_fixed_points());
    }

    #[test]
    fn evidence_bundles() {
        for which in [NamedCurve::C, NamedCurve::CPrime] {
            let e = curve_evidence(which, 50);
            assert!(e.consistent());
        }
        // C' reduces to 6(t^2 - 2)^2 mod 13, and 2 and 6 are non-residues.
        let e = curve_evidence(NamedCurve::CPrime, 10);
        let bad: Vec<_> = e
            .local
            .iter()
            .filter(|l| l.solvable != Some(true))
            .map(|l| l.place.clone())
            .collect();
        assert_eq!(bad, vec![Place::finite(13)]);
        assert_eq!(
            e.local
                .iter()
                .find(|l| l.place == Place::finite(13))
                .unwrap()
                .solvable,
            Some(false)
        );
        let e = curve_evidence(NamedCurve::C, 10);
        assert!(e.local.iter().all(|l| l.solvable == Some(true)));
        for which in [NamedCurve::C, NamedCurve::CPrime] {
            assert!(curve_evidence(which, 1).affine_points.is_empty());
        }
    }

    #[test]
    fn descent_agrees_with_search() {
        // Exact decision against witness search on small curves.
        let mut decided = 0;
        for c0 in -6..=6i64 {
            for c2 in -3..=3 {
                for c4 in [-3i64, -1, 1, 2, 5] {
                    let Ok(curve) = QuarticCurve::new(QuarticPoly::from_i64([c0, 1, c2, 0, c4]))
                    else {
                        continue;
                    };
                    for p in [3u64, 5, 7] {
                        let prime = Prime::small(p);
                        let exact = qp_points_exist(&curve, &prime);
                        let found = (-200..=200).any(|m| {
                            (0..4).any(|e| {
                                let t = Rational::new(m, p.pow(e));
                                let v = curve.f.evaluate(&t);
                                v.is_zero() || is_square_in_qp(&v, &prime)
                            })
                        }) || is_square_in_qp(curve.f.coeff(4), &prime);
                        if found {
                            assert_eq!(exact, Some(true), "{} at {p}", curve.f);
                        }
                        if exact == Some(false) {
                            decided += 1;
                        }
                    }
                }
            }
        }
        assert!(decided > 0);
    }

    #[test]
    fn local_evidence() {
        let ev = local_points_evidence(&QuarticCurve::c(), 7);
        assert_eq!(ev[0].solvable, Some(true));
        let ev = local_points_evidence(&QuarticCurve::c_prime(), 7);
        assert_eq!(ev[0].place, Place::Real);
        assert_eq!(ev[0].solvable, Some(true));
        let neg = QuarticCurve::new(QuarticPoly::from_i64([-1, 0, 0, 0, -1])).unwrap();
        assert_eq!(local_points_evidence(&neg, 2)[0].solvable, Some(false));
    }
}
