use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lemmas::{
    fiber_identity_holds, real_point_identity_check, three_adic_lemma, two_adic_lemma,
    valuation_lemma_v2, valuation_lemma_v3,
};
use super::{ab_parameters, fiber_at, p0, p_inf, p_t_polynomial, t_parameter, ProjectivePoint};
use crate::arith::{is_rational_square, Rational};
use crate::chatelet::{
    find_rational_point_with, hasse_violation_report, real_solvability, GlobalPoint, HasseReport,
    LocalCertificate, SearchOptions, SolvabilityVerdict, Witness,
};
use crate::error::Result;
use crate::height::projective_up_to;
use crate::quartic::{
    factorization_oracle, irreducibility_verdict, IrreducibilityVerdict, QuarticPoly,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Largest height of `(u : v)`.
    pub height_bound: u64,
    /// Largest height of `x` in each fiber's point search.
    pub search_bound: u64,
    pub depth: u32,
    pub workers: Option<usize>,
}

/// Per-`t` values of the two irreducibility quantities, and whether each is
/// a square for this particular `t`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CurveValues {
    pub t: Rational,
    pub discriminant_value: Rational,
    pub discriminant_is_square: bool,
    pub ac_value: Rational,
    pub ac_is_square: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberEntry {
    pub point: ProjectivePoint,
    #[serde(with = "crate::json::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub b: BigInt,
    pub polynomial: QuarticPoly,
    pub irreducibility: IrreducibilityVerdict,
    pub oracle_agrees: bool,
    pub curve_values: CurveValues,
    /// `b^2 P_t = a^2 P0 + b^2 Pinf` with `t = a/b`.
    pub t_parametrization_agrees: bool,
    pub closed_form_agrees: bool,
    pub real_identity_holds: bool,
    pub v3_of_b_over_a: u32,
    pub v2_of_b_over_a: u32,
    pub real: SolvabilityVerdict,
    pub two_adic: LocalCertificate,
    pub three_adic: LocalCertificate,
    pub rational_point: Option<GlobalPoint>,
    /// The point re-checked against `a^2 P0(x) + b^2 Pinf(x)`.
    pub point_verified_in_bundle_form: bool,
}

impl FiberEntry {
    /// Every check passed and a point was found.
    pub fn is_verified(&self) -> bool {
        self.checks_pass() && self.rational_point.is_some()
    }

    /// All exact checks hold (independent of the search).
    pub fn checks_pass(&self) -> bool {
        self.irreducibility.irreducible
            && self.oracle_agrees
            && !self.curve_values.discriminant_is_square
            && !self.curve_values.ac_is_square
            && self.t_parametrization_agrees
            && self.closed_form_agrees
            && self.real_identity_holds
            && self.real.is_solvable()
            && (self.rational_point.is_none() || self.point_verified_in_bundle_form)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InfinityEntry {
    pub point: ProjectivePoint,
    pub polynomial: QuarticPoly,
    /// The fiber polynomial is exactly `36 P0`.
    pub is_36_p0: bool,
    /// `P0` factors over Q, as the oracle confirms.
    pub oracle_factors: Vec<QuarticPoly>,
    pub report: HasseReport,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    /// Every affine fiber has a point and `(1:0)` is a candidate violation.
    Verified,
    /// Some search ran out of bound and no exact check failed.
    Undecided,
    /// A check failed or `(1:0)` has a point.
    Contradiction,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub status: ScanStatus,
    pub height_bound: u64,
    pub search_bound: u64,
    pub depth: u32,
    pub fibers: Vec<FiberEntry>,
    pub infinity: InfinityEntry,
    pub undecided: Vec<ProjectivePoint>,
    pub failures: Vec<String>,
}

fn scan_fiber(pt: &ProjectivePoint, opts: &ScanOptions) -> Result<FiberEntry> {
    let (a, b) = ab_parameters(pt);
    let surface = fiber_at(pt)?;
    let polynomial = surface.poly().clone();
    let biquadratic = polynomial.as_biquadratic().expect("even quartic");
    let irreducibility = irreducibility_verdict(&biquadratic)?;
    let oracle_agrees =
        factorization_oracle(&polynomial)?.is_irreducible() == irreducibility.irreducible;

    let t = t_parameter(pt)?;
    let p_t = p_t_polynomial(&t);
    let criterion = p_t.criterion();
    let b2 = Rational::from(&b * &b);
    let t_parametrization_agrees = p_t.scale(&b2).to_quartic() == polynomial;

    let search = SearchOptions {
        height_bound: opts.search_bound,
        workers: None,
    };
    let rational_point = find_rational_point_with(&surface, &search)?;
    let point_verified_in_bundle_form = rational_point.as_ref().is_some_and(|pt| {
        let (a2, b2) = (Rational::from(&a * &a), b2.clone());
        let rhs = match &pt.x {
            Witness::Finite(x) => &a2 * p0().evaluate(x) + &b2 * p_inf().evaluate(x),
            Witness::Infinity => {
                &a2 * p0().homogenize_value_at_infinity()
                    + &b2 * p_inf().homogenize_value_at_infinity()
            }
        };
        pt.y.square() + pt.z.square() == rhs
    });

    Ok(FiberEntry {
        point: pt.clone(),
        closed_form_agrees: fiber_identity_holds(&a, &b),
        real_identity_holds: real_point_identity_check(&a, &b),
        a,
        b,
        polynomial,
        irreducibility,
        oracle_agrees,
        curve_values: CurveValues {
            discriminant_is_square: is_rational_square(&criterion.discriminant).is_some(),
            discriminant_value: criterion.discriminant,
            ac_is_square: is_rational_square(&criterion.product).is_some(),
            ac_value: criterion.product,
            t,
        },
        t_parametrization_agrees,
        v3_of_b_over_a: valuation_lemma_v3(pt)?,
        v2_of_b_over_a: valuation_lemma_v2(pt)?,
        real: real_solvability(&surface),
        two_adic: two_adic_lemma(pt)?,
        three_adic: three_adic_lemma(pt)?,
        rational_point,
        point_verified_in_bundle_form,
    })
}

/// Verifies every affine fiber of height at most `height_bound`, then
/// classifies the fiber at `(1:0)`.
///
/// Lemma failures inside a fiber are errors. The report status is
/// `Contradiction` when an exact check fails or `(1:0)` has a point.
pub fn theorem_one_scan(opts: &ScanOptions) -> Result<ScanReport> {
    let run = || -> Result<ScanReport> {
        let points: Vec<ProjectivePoint> = projective_up_to(opts.height_bound)
            .map(ProjectivePoint::from_slot)
            .filter(ProjectivePoint::is_affine)
            .collect();
        let fibers: Vec<FiberEntry> = points
            .par_iter()
            .map(|pt| scan_fiber(pt, opts))
            .collect::<Result<_>>()?;

        let inf = ProjectivePoint::infinity();
        let surface = fiber_at(&inf)?;
        let polynomial = surface.poly().clone();
        let oracle = factorization_oracle(&polynomial)?;
        let infinity = InfinityEntry {
            point: inf,
            is_36_p0: polynomial == p0().scale(&Rational::from(36)),
            oracle_factors: oracle
                .factor_polys()
                .iter()
                .map(|f| QuarticPoly::from_poly(f).expect("degree at most 4"))
                .collect(),
            polynomial,
            report: hasse_violation_report(
                &surface,
                &SearchOptions::new(opts.search_bound),
                opts.depth,
            )?,
        };

        let mut failures = Vec::new();
        for f in &fibers {
            if !f.checks_pass() {
                failures.push(format!("exact check failed on fiber {}", f.point));
            }
        }
        if !infinity.is_36_p0 {
            failures.push("fiber over (1:0) is not 36 P0".to_string());
        }
        match &infinity.report {
            HasseReport::HasPoint { point, .. } => {
                failures.push(format!("fiber over (1:0) has a rational point {point}"))
            }
            HasseReport::LocallyObstructed { place, .. } => {
                failures.push(format!("fiber over (1:0) is obstructed at {place}"))
            }
            _ => {}
        }
        let mut undecided: Vec<ProjectivePoint> = fibers
            .iter()
            .filter(|f| f.rational_point.is_none())
            .map(|f| f.point.clone())
            .collect();
        if matches!(infinity.report, HasseReport::Undecided { .. }) {
            undecided.push(infinity.point.clone());
        }
        let status = if !failures.is_empty() {
            ScanStatus::Contradiction
        } else if !undecided.is_empty() {
            ScanStatus::Undecided
        } else {
            ScanStatus::Verified
        };
        Ok(ScanReport {
            status,
            height_bound: opts.height_bound,
            search_bound: opts.search_bound,
            depth: opts.depth,
            fibers,
            infinity,
            undecided,
            failures,
        })
    };
    crate::with_workers(opts.workers, run)
}
