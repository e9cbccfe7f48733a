//! Local solvability certificates.
//!
//! Every `Solvable` verdict carries a certificate that [`LocalCertificate::replay`]
//! re-checks from scratch. `NotSolvable` is only produced at the real place,
//! where the sign of `P` decides exactly. Search exhaustion is `Unknown`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ChateletSurface, Witness};
use crate::arith::{factor, legendre_symbol, padic_valuation, reduce_mod, Prime, Rational};
use crate::error::{Error, Result};
use crate::local::{hensel_lift_sqrt, hilbert_symbol, sqrt_mod_prime, PAdicApproximation, Place};
use crate::quartic::positive_point;

/// Depth used by [`everywhere_locally_solvable`] when the caller has no
/// preference.
pub const DEFAULT_DEPTH: u32 = 8;
/// Precision `p^3` for lifted smooth points.
pub const LIFT_PRECISION: u32 = 3;
/// Largest unit multiplier `m` tried in the grid `m p^e`.
pub const GRID_CAP: u64 = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    Y,
    Z,
}

/// One coordinate fixed, the other a `p`-adic square root.
///
/// `free^2 = target = scale^2 * unit`, and `approximation` is a square root
/// of the `p`-adic unit `unit` to the stated precision. Hensel's lemma
/// turns that into an exact `Q_p` coordinate.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SquareLift {
    pub free: Coordinate,
    pub fixed: Rational,
    pub target: Rational,
    pub scale: Rational,
    pub approximation: PAdicApproximation,
}

impl SquareLift {
    /// Solves for `free` given `fixed`, when the target is a unit square
    /// times `scale^2`.
    pub fn new(
        s: &ChateletSurface,
        value: &Rational,
        free: Coordinate,
        fixed: Rational,
        scale: Rational,
        p: &Prime,
        precision: u32,
    ) -> Result<SquareLift> {
        let target = lift_target(s, value, free, &fixed);
        let unit = &target / scale.square();
        let approximation = hensel_lift_sqrt(&unit, p, precision)?;
        Ok(SquareLift {
            free,
            fixed,
            target,
            scale,
            approximation,
        })
    }

    fn replay(&self, s: &ChateletSurface, value: &Rational, p: &Prime) -> bool {
        if self.target != lift_target(s, value, self.free, &self.fixed)
            || self.scale.is_zero()
            || &self.approximation.prime != p
            || self.approximation.precision == 0
        {
            return false;
        }
        let unit = &self.target / self.scale.square();
        // Mod 8 is the first level at which a 2-adic unit square is decided.
        let lift_ok = !p.is_two() || self.approximation.precision >= 3;
        !unit.is_zero()
            && padic_valuation(&unit, p) == 0
            && lift_ok
            && self.approximation.verifies_sqrt_of(&unit)
    }
}

/// `free^2` forced by `y^2 - alpha z^2 = value` and the fixed coordinate.
fn lift_target(
    s: &ChateletSurface,
    value: &Rational,
    free: Coordinate,
    fixed: &Rational,
) -> Rational {
    match free {
        Coordinate::Y => value + s.alpha() * fixed.square(),
        Coordinate::Z => (fixed.square() - value) / s.alpha(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// `alpha > 0`, or the conic value is positive.
    RealSign,
    /// `(alpha, P(x))_p = +1`, so the conic has a `Q_p` point.
    HilbertSymbolPlusOne,
    /// A point of the conic over `F_p` with nonzero value, lifted.
    SmoothFpPointLifted {
        #[serde(with = "crate::json::bigint")]
        y_residue: BigInt,
        #[serde(with = "crate::json::bigint")]
        z_residue: BigInt,
        lift: SquareLift,
    },
    /// An explicit square-root lift of one coordinate.
    HenselLift(SquareLift),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LocalCertificate {
    pub place: Place,
    pub witness: Witness,
    pub conic_value: Rational,
    pub evidence: Evidence,
}

impl LocalCertificate {
    /// Re-derives the evidence from the surface and the witness.
    pub fn replay(&self, s: &ChateletSurface) -> bool {
        let value = s.conic_value(&self.witness);
        if value != self.conic_value || value.is_zero() {
            return false;
        }
        match (&self.place, &self.evidence) {
            (Place::Real, Evidence::RealSign) => s.alpha().is_positive() || value.is_positive(),
            (place, Evidence::HilbertSymbolPlusOne) => {
                hilbert_symbol(s.alpha(), &value, place) == 1
            }
            (Place::Finite(p), Evidence::HenselLift(lift)) => lift.replay(s, &value, p),
            (
                Place::Finite(p),
                Evidence::SmoothFpPointLifted {
                    y_residue,
                    z_residue,
                    lift,
                },
            ) => {
                let pn = p.get();
                let (Some(v), Some(a)) = (reduce_mod(&value, pn), reduce_mod(s.alpha(), pn)) else {
                    return false;
                };
                let on_conic = (y_residue * y_residue - &a * z_residue * z_residue - &v)
                    .mod_floor(pn)
                    .is_zero();
                let residue_matches = match lift.free {
                    Coordinate::Y => reduce_mod(&lift.fixed, pn).as_ref() == Some(z_residue),
                    Coordinate::Z => reduce_mod(&lift.fixed, pn).as_ref() == Some(y_residue),
                };
                !v.is_zero() && on_conic && residue_matches && lift.replay(s, &value, p)
            }
            _ => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Obstruction {
    /// `alpha < 0` and `P < 0` on all of `P^1(R)`.
    RealNegative {
        leading_coefficient: Rational,
        /// `sup P` over R, when it is attained at a rational-expressible
        /// critical value (biquadratic `P`).
        supremum: Option<Rational>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
// Verdicts are few and short-lived; boxing the certificate buys nothing.
#[allow(clippy::large_enum_variant)]
pub enum SolvabilityVerdict {
    Solvable { certificate: LocalCertificate },
    NotSolvable { obstruction: Obstruction },
    Unknown { reason: String },
}

impl SolvabilityVerdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolvabilityVerdict::Solvable { .. })
    }

    pub fn is_not_solvable(&self) -> bool {
        matches!(self, SolvabilityVerdict::NotSolvable { .. })
    }

    pub fn certificate(&self) -> Option<&LocalCertificate> {
        match self {
            SolvabilityVerdict::Solvable { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub(crate) fn solvable(
        place: Place,
        witness: Witness,
        conic_value: Rational,
        evidence: Evidence,
    ) -> Self {
        SolvabilityVerdict::Solvable {
            certificate: LocalCertificate {
                place,
                witness,
                conic_value,
                evidence,
            },
        }
    }
}

/// Solvability over R, decided exactly.
pub fn real_solvability(s: &ChateletSurface) -> SolvabilityVerdict {
    let p = s.poly().to_poly();
    if s.alpha().is_positive() {
        // y^2 - alpha z^2 takes every real value; any x off the roots works.
        let x = (0i64..)
            .map(Rational::from)
            .find(|x| !p.eval(x).is_zero())
            .expect("at most four roots");
        let v = p.eval(&x);
        return SolvabilityVerdict::solvable(
            Place::Real,
            Witness::Finite(x),
            v,
            Evidence::RealSign,
        );
    }
    match positive_point(&p) {
        Some(x) => {
            let v = p.eval(&x);
            SolvabilityVerdict::solvable(Place::Real, Witness::Finite(x), v, Evidence::RealSign)
        }
        None => SolvabilityVerdict::NotSolvable {
            obstruction: Obstruction::RealNegative {
                leading_coefficient: p.leading(),
                supremum: s.poly().as_biquadratic().map(|q| {
                    // max of a t^2 + b t + c over t = x^2 >= 0, with a < 0
                    let vertex = -&q.b / (Rational::from(2) * &q.a);
                    if vertex.is_positive() {
                        &q.c - q.b.square() / (Rational::from(4) * &q.a)
                    } else {
                        q.c.clone()
                    }
                }),
            },
        },
    }
}

/// Solvability at a prime of good reduction via a smooth `F_p` point.
///
/// Over `F_p` the sets `{y^2}` and `{v + alpha z^2}` each have `(p + 1)/2`
/// elements, so they meet whenever `v != 0`. A nonzero `y` (or `z`) then
/// lifts by Hensel's lemma.
pub fn good_prime_solvability(s: &ChateletSurface, p: &Prime) -> Result<SolvabilityVerdict> {
    let pn = p.get();
    let bad = |why: &str| {
        Err(Error::PreconditionViolated(format!(
            "{p} is a bad prime: {why}"
        )))
    };
    if p.is_two() {
        return bad("p = 2");
    }
    if padic_valuation(s.alpha(), p) != 0 {
        return bad("p divides alpha");
    }
    let coeffs: Option<Vec<BigInt>> = s
        .poly()
        .coefficients
        .iter()
        .map(|c| reduce_mod(c, pn))
        .collect();
    let Some(coeffs) = coeffs else {
        return bad("P is not p-integral");
    };
    if coeffs.iter().all(Zero::is_zero) {
        return bad("P vanishes mod p");
    }
    let alpha_bar = reduce_mod(s.alpha(), pn).expect("p-adic unit");

    let eval_mod = |x: &BigInt| -> BigInt {
        coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(pn))
    };
    // x in F_p first, then infinity; at most four residues are roots.
    let finite =
        num_iter_bigint(pn).map(|x| (Witness::Finite(Rational::from(x.clone())), eval_mod(&x)));
    let at_inf = std::iter::once((Witness::Infinity, coeffs[4].clone()));
    let Some((witness, v_bar)) = finite.chain(at_inf).find(|(_, v)| !v.is_zero()) else {
        return Ok(SolvabilityVerdict::Unknown {
            reason: format!("P vanishes on all of P^1(F_{p})"),
        });
    };
    let value = s.conic_value(&witness);

    let mut z_bar = BigInt::zero();
    let y_bar = loop {
        let t = (&v_bar + &alpha_bar * &z_bar * &z_bar).mod_floor(pn);
        if t.is_zero() {
            break BigInt::zero();
        }
        if legendre_symbol(&t, p) == 1 {
            break sqrt_mod_prime(&t, p).expect("residue");
        }
        z_bar += 1;
        debug_assert!(&z_bar < pn, "pigeonhole guarantees a solution");
    };

    let lift = if y_bar.is_zero() {
        SquareLift::new(
            s,
            &value,
            Coordinate::Z,
            Rational::zero(),
            Rational::one(),
            p,
            LIFT_PRECISION,
        )?
    } else {
        SquareLift::new(
            s,
            &value,
            Coordinate::Y,
            Rational::from(z_bar.clone()),
            Rational::one(),
            p,
            LIFT_PRECISION,
        )?
    };
    Ok(SolvabilityVerdict::solvable(
        Place::Finite(p.clone()),
        witness,
        value,
        Evidence::SmoothFpPointLifted {
            y_residue: y_bar,
            z_residue: z_bar,
            lift,
        },
    ))
}

fn num_iter_bigint(n: &BigInt) -> impl Iterator<Item = BigInt> + '_ {
    let mut i = BigInt::zero();
    std::iter::from_fn(move || {
        if &i >= n {
            return None;
        }
        let out = i.clone();
        i += 1;
        Some(out)
    })
}

/// Candidate witnesses at `p`, in search order: `0`, then `p^-n` for
/// `n = 1..=depth`, then infinity, then `m p^e` for `1 <= m < min(p^depth,
/// GRID_CAP)` and `|e| <= depth`.
pub fn deep_candidates(p: &Prime, depth: u32) -> impl Iterator<Item = Witness> + '_ {
    let pr = Rational::from(p.get().clone());
    let head = std::iter::once(Witness::Finite(Rational::zero()))
        .chain((1..=depth as i32).map({
            let pr = pr.clone();
            move |n| Witness::Finite(pr.pow(-n))
        }))
        .chain(std::iter::once(Witness::Infinity));
    let cap = p.pow(depth).min(BigInt::from(GRID_CAP));
    let cap: u64 = cap.try_into().expect("bounded by GRID_CAP");
    let grid = (-(depth as i32)..=depth as i32).flat_map(move |e| {
        let unit = pr.pow(e);
        (1..cap).map(move |m| Witness::Finite(Rational::from(m as i64) * &unit))
    });
    head.chain(grid)
}

/// Searches for `x` with `(alpha, P(x))_p = +1`.
pub fn deep_local_search(s: &ChateletSurface, p: &Prime, depth: u32) -> SolvabilityVerdict {
    let place = Place::Finite(p.clone());
    for witness in deep_candidates(p, depth) {
        let value = s.conic_value(&witness);
        if value.is_zero() {
            continue;
        }
        if hilbert_symbol(s.alpha(), &value, &place) == 1 {
            return SolvabilityVerdict::solvable(
                place,
                witness,
                value,
                Evidence::HilbertSymbolPlusOne,
            );
        }
    }
    SolvabilityVerdict::Unknown {
        reason: format!("no witness at p = {p} within depth {depth}"),
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlaceEntry {
    pub place: Place,
    pub verdict: SolvabilityVerdict,
}

/// All primes outside the bad set, covered by one argument.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GoodPrimesBlanket {
    pub bad_primes: Vec<Prime>,
    pub justification: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregateStatus {
    Solvable,
    NotSolvable,
    Unknown,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ElsReport {
    pub status: AggregateStatus,
    pub entries: Vec<PlaceEntry>,
    pub good_primes: GoodPrimesBlanket,
}

impl ElsReport {
    pub fn entry(&self, place: &Place) -> Option<&PlaceEntry> {
        self.entries.iter().find(|e| &e.place == place)
    }

    pub fn first_obstruction(&self) -> Option<&PlaceEntry> {
        self.entries.iter().find(|e| e.verdict.is_not_solvable())
    }
}

/// `{2, 3}` together with the primes of `alpha`, of the scale and leading
/// coefficient of `P`, and of `disc(P)`, with `P` cleared to a primitive
/// integer polynomial.
pub fn bad_primes(s: &ChateletSurface) -> Result<Vec<Prime>> {
    let mut set: BTreeSet<BigInt> = [2, 3].into_iter().map(BigInt::from).collect();
    let mut add = |n: &BigInt| -> Result<()> {
        if !n.is_zero() {
            set.extend(factor(n)?.primes().cloned());
        }
        Ok(())
    };
    add(s.alpha().numer())?;
    add(s.alpha().denom())?;
    let (scale, q) = s.poly().primitive_integer_form();
    add(scale.numer())?;
    add(scale.denom())?;
    let lead = q
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .expect("nonzero")
        .clone();
    add(&lead)?;
    if q[1].is_zero() && q[3].is_zero() && !q[4].is_zero() {
        // disc = 16 a c (b^2 - 4ac)^2
        add(&q[4])?;
        add(&q[0])?;
        add(&(&q[2] * &q[2] - BigInt::from(4) * &q[4] * &q[0]))?;
    } else {
        let disc = crate::quartic::QuarticPoly::new(q.clone().map(Rational::from)).discriminant();
        add(disc.numer())?;
    }
    set.into_iter().map(Prime::new).collect()
}

/// Runs the real place and every bad prime; good primes are covered by
/// the pigeonhole argument of [`good_prime_solvability`].
pub fn everywhere_locally_solvable(s: &ChateletSurface, depth: u32) -> Result<ElsReport> {
    let bad = bad_primes(s)?;
    let mut entries = vec![PlaceEntry {
        place: Place::Real,
        verdict: real_solvability(s),
    }];
    for p in &bad {
        let mut verdict = deep_local_search(s, p, depth);
        if !verdict.is_solvable() && p.get() > &BigInt::from(3) {
            if let Ok(v) = good_prime_solvability(s, p) {
                verdict = v;
            }
        }
        entries.push(PlaceEntry {
            place: Place::Finite(p.clone()),
            verdict,
        });
    }
    let status = if entries.iter().any(|e| e.verdict.is_not_solvable()) {
        AggregateStatus::NotSolvable
    } else if entries.iter().all(|e| e.verdict.is_solvable()) {
        AggregateStatus::Solvable
    } else {
        AggregateStatus::Unknown
    };
    Ok(ElsReport {
        status,
        entries,
        good_primes: GoodPrimesBlanket {
            bad_primes: bad,
            justification: "for p outside the bad set, p is odd, alpha is a p-adic unit and P is \
                            nonzero mod p of degree at most 4 < p, so some x in P^1(F_p) has \
                            P(x) != 0; the value sets {y^2} and {P(x) + alpha z^2} each have \
                            (p+1)/2 elements and meet, and the nonzero coordinate lifts"
                .to_string(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::quartic::QuarticPoly;

    fn fiber(a: i64, b: i64) -> ChateletSurface {
        let (a2, b2) = (a * a, b * b);
        ChateletSurface::sum_of_squares(QuarticPoly::from_i64([
            -6 * a2 - b2,
            0,
            3 * b2 + 5 * a2,
            0,
            2 * b2 - a2,
        ]))
        .unwrap()
    }

    #[test]
    fn real_place() {
        let v = real_solvability(&ChateletSurface::iskovskikh());
        let c = v.certificate().unwrap();
        assert_eq!(c.witness, Witness::finite(rat(3, 2)));
        assert_eq!(c.conic_value, rat(3, 16));
        let pos =
            ChateletSurface::new(rat(1, 1), QuarticPoly::from_i64([-1, 0, 0, 0, -1])).unwrap();
        assert!(real_solvability(&pos).is_solvable());
        let neg =
            ChateletSurface::sum_of_squares(QuarticPoly::from_i64([-1, 0, 0, 0, -1])).unwrap();
        match real_solvability(&neg) {
            SolvabilityVerdict::NotSolvable {
                obstruction:
                    Obstruction::RealNegative {
                        supremum,
                        leading_coefficient,
                    },
            } => {
                assert_eq!(supremum, Some(rat(-1, 1)));
                assert_eq!(leading_coefficient, rat(-1, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn good_primes() {
        let s = ChateletSurface::iskovskikh();
        let v = good_prime_solvability(&s, &Prime::small(7)).unwrap();
        let c = v.certificate().unwrap();
        assert!(c.replay(&s));
        match &c.evidence {
            Evidence::SmoothFpPointLifted { lift, .. } => {
                assert_eq!(lift.approximation.modulus(), BigInt::from(343))
            }
            e => panic!("{e:?}"),
        }
        let s = ChateletSurface::sum_of_squares(QuarticPoly::from_i64([-1, 0, 3, 0, 2])).unwrap();
        assert!(good_prime_solvability(&s, &Prime::small(5))
            .unwrap()
            .certificate()
            .unwrap()
            .replay(&s));
        let s = ChateletSurface::sum_of_squares(QuarticPoly::from_i64([5, 0, 0, 0, 5])).unwrap();
        assert!(matches!(
            good_prime_solvability(&s, &Prime::small(5)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn deep_search_examples() {
        let s = fiber(5, 12);
        let v = deep_local_search(&s, &Prime::small(3), 6);
        let c = v.certificate().unwrap();
        assert!(c.replay(&s));
        let s = fiber(-1, 12);
        let v = deep_local_search(&s, &Prime::small(2), 6);
        assert!(v.certificate().unwrap().replay(&s));
        let s = ChateletSurface::new(rat(7, 1), QuarticPoly::from_i64([1, 0, 0, 2, 3])).unwrap();
        let c = deep_local_search(&s, &Prime::small(13), 2);
        assert_eq!(c.certificate().unwrap().witness, Witness::finite(0));
    }

    #[test]
    fn els() {
        let s = ChateletSurface::iskovskikh();
        let r = everywhere_locally_solvable(&s, DEFAULT_DEPTH).unwrap();
        assert_eq!(r.status, AggregateStatus::Solvable);
        for e in &r.entries {
            assert!(e.verdict.certificate().unwrap().replay(&s), "{:?}", e.place);
        }
        let primes: Vec<u64> = r
            .good_primes
            .bad_primes
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect();
        assert_eq!(primes, vec![2, 3]);

        let r = everywhere_locally_solvable(&fiber(-1, 12), DEFAULT_DEPTH).unwrap();
        assert_eq!(r.status, AggregateStatus::Solvable);

        let neg =
            ChateletSurface::sum_of_squares(QuarticPoly::from_i64([-1, 0, 0, 0, -1])).unwrap();
        let r = everywhere_locally_solvable(&neg, DEFAULT_DEPTH).unwrap();
        assert_eq!(r.status, AggregateStatus::NotSolvable);
        assert_eq!(r.first_obstruction().unwrap().place, Place::Real);
    }

    #[test]
    fn tampered_certificates_fail() {
        let s = ChateletSurface::iskovskikh();
        let v = good_prime_solvability(&s, &Prime::small(7)).unwrap();
        let mut c = v.certificate().unwrap().clone();
        c.conic_value = &c.conic_value + Rational::one();
        assert!(!c.replay(&s));
        let mut c = v.certificate().unwrap().clone();
        c.place = Place::finite(11);
        assert!(!c.replay(&s));
    }
}
