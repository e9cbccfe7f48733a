//! Chatelet surfaces `y^2 - alpha z^2 = P(x)`.
//!
//! A surface is a conic bundle over the `x`-line. The fiber over `x` is the
//! conic `y^2 - alpha z^2 = P(x)`, and over `x = inf` it is
//! `y^2 - alpha z^2 = c4` (the `x^4` coefficient of the degree-4
//! homogenization). Local solvability is certified per place in
//! [`local`], and rational points are searched for in [`search`].

pub mod local;
pub mod report;
pub mod search;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{is_rational_square, squarefree_representative, Rational};
use crate::error::{Error, Result};
use crate::quartic::QuarticPoly;

pub use local::{
    bad_primes, deep_local_search, everywhere_locally_solvable, good_prime_solvability,
    real_solvability, AggregateStatus, Coordinate, ElsReport, Evidence, GoodPrimesBlanket,
    LocalCertificate, Obstruction, PlaceEntry, SolvabilityVerdict, SquareLift, DEFAULT_DEPTH,
};
pub use report::{hasse_violation_report, HasseReport};
pub use search::{
    find_rational_point, find_rational_point_with, represent_by_norm_form, SearchOptions,
};

/// `y^2 - alpha z^2 = P(x)` with `alpha != 0` and `P` separable of degree 3
/// or 4.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurfaceRepr", into = "SurfaceRepr")]
pub struct ChateletSurface {
    alpha: Rational,
    /// `alpha = alpha_squarefree * alpha_scale^2`
    alpha_squarefree: BigInt,
    alpha_scale: Rational,
    poly: QuarticPoly,
}

#[derive(Serialize, Deserialize)]
struct SurfaceRepr {
    alpha: Rational,
    #[serde(with = "crate::json::bigint")]
    alpha_squarefree: BigInt,
    poly: QuarticPoly,
}

impl TryFrom<SurfaceRepr> for ChateletSurface {
    type Error = Error;

    fn try_from(r: SurfaceRepr) -> Result<Self> {
        let s = ChateletSurface::new(r.alpha, r.poly)?;
        if s.alpha_squarefree != r.alpha_squarefree {
            return Err(Error::Parse("alpha_squarefree does not match alpha".into()));
        }
        Ok(s)
    }
}

impl From<ChateletSurface> for SurfaceRepr {
    fn from(s: ChateletSurface) -> Self {
        SurfaceRepr {
            alpha: s.alpha,
            alpha_squarefree: s.alpha_squarefree,
            poly: s.poly,
        }
    }
}

impl ChateletSurface {
    pub fn new(alpha: Rational, poly: QuarticPoly) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidSurface("alpha must be nonzero".into()));
        }
        match poly.degree() {
            Some(3) | Some(4) => {}
            d => {
                return Err(Error::InvalidSurface(format!(
                    "P must have degree 3 or 4, got {}",
                    d.map_or("-inf".to_string(), |d| d.to_string())
                )))
            }
        }
        if !poly.is_separable() {
            return Err(Error::InseparableInput(format!(
                "{poly} has a repeated root"
            )));
        }
        let alpha_squarefree = squarefree_representative(&alpha)?;
        let alpha_scale = is_rational_square(&(&alpha / Rational::from(alpha_squarefree.clone())))
            .expect("alpha / squarefree part is a square");
        Ok(ChateletSurface {
            alpha,
            alpha_squarefree,
            alpha_scale,
            poly,
        })
    }

    /// `y^2 + z^2 = P(x)`.
    pub fn sum_of_squares(poly: QuarticPoly) -> Result<Self> {
        ChateletSurface::new(Rational::from(-1), poly)
    }

    /// The surface `y^2 + z^2 = (x^2 - 2)(3 - x^2)`, with local points
    /// everywhere and no rational point.
    pub fn iskovskikh() -> Self {
        ChateletSurface::sum_of_squares(QuarticPoly::from_i64([-6, 0, 5, 0, -1]))
            .expect("valid surface")
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn alpha_squarefree(&self) -> &BigInt {
        &self.alpha_squarefree
    }

    pub fn alpha_scale(&self) -> &Rational {
        &self.alpha_scale
    }

    pub fn poly(&self) -> &QuarticPoly {
        &self.poly
    }

    /// `P(x)`, or `c4` at infinity.
    pub fn conic_value(&self, x: &Witness) -> Rational {
        match x {
            Witness::Finite(x) => self.poly.evaluate(x),
            Witness::Infinity => self.poly.homogenize_value_at_infinity(),
        }
    }

    /// `(alpha, c^2 P)`, the surface related by `(y, z) -> (c y, c z)`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        ChateletSurface::new(self.alpha.clone(), self.poly.scale(&c.square()))
    }
}

impl fmt::Display for ChateletSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 - ({})z^2 = {}", self.alpha, self.poly)
    }
}

impl fmt::Debug for ChateletSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of the base line `P^1_(x:w)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "x", rename_all = "snake_case")]
pub enum Witness {
    Finite(Rational),
    Infinity,
}

impl Witness {
    pub fn finite(x: impl Into<Rational>) -> Self {
        Witness::Finite(x.into())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Finite(x) => write!(f, "{x}"),
            Witness::Infinity => write!(f, "inf"),
        }
    }
}

/// A rational point: `y^2 - alpha z^2 = P(x)` (or `= c4` when `x = inf`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GlobalPoint {
    pub x: Witness,
    pub y: Rational,
    pub z: Rational,
}

impl GlobalPoint {
    pub fn new(x: Witness, y: Rational, z: Rational) -> Self {
        GlobalPoint { x, y, z }
    }

    /// Exact check of the surface equation.
    pub fn satisfies(&self, s: &ChateletSurface) -> bool {
        &self.y * &self.y - s.alpha() * &self.z * &self.z == s.conic_value(&self.x)
    }

    /// True when the point lies on a fiber with `P(x) = 0`.
    pub fn on_degenerate_fiber(&self, s: &ChateletSurface) -> bool {
        s.conic_value(&self.x).is_zero()
    }

    /// A point of the smooth model: satisfies the equation and is not the
    /// vertex `y = z = 0` of a degenerate fiber.
    pub fn is_valid_on(&self, s: &ChateletSurface) -> bool {
        self.satisfies(s) && !(self.y.is_zero() && self.z.is_zero())
    }

    /// `(x, c y, c z)`.
    pub fn scaled(&self, c: &Rational) -> Self {
        GlobalPoint::new(self.x.clone(), &self.y * c, &self.z * c)
    }
}

impl fmt::Display for GlobalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y, z) = ({}, {}, {})", self.x, self.y, self.z)
    }
}
