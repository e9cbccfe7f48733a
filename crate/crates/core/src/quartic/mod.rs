//! Polynomials of degree at most four over Q.
//!
//! [`QuarticPoly`] is the coefficient data of a Chatelet surface.
//! [`BiquadraticQuartic`] is the even special case `a x^4 + b x^2 + c`, for
//! which irreducibility has a cheap sufficient test: if neither `b^2 - 4ac`
//! nor `ac` is a square in Q, the polynomial is irreducible. The test is only
//! sufficient (`x^4 + 1` fails it), so the public verdict falls back to
//! [`factorization_oracle`], a complete factorizer for degree four.

mod oracle;
mod poly;
mod real;

pub use oracle::{factorization_oracle, PolyFactorization};
pub use poly::Poly;
pub use real::{isolate_real_roots, positive_point, real_root_count, sturm_sequence};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_rational_square, Rational};
use crate::error::{Error, Result};

/// `c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticPoly {
    /// Ascending order: `coefficients[i]` multiplies `x^i`.
    pub coefficients: [Rational; 5],
}

impl QuarticPoly {
    pub fn new(coefficients: [Rational; 5]) -> QuarticPoly {
        QuarticPoly { coefficients }
    }

    /// From ascending integer coefficients.
    pub fn from_i64(c: [i64; 5]) -> QuarticPoly {
        QuarticPoly::new(c.map(Rational::from))
    }

    /// From coefficients listed from `x^4` down to the constant (at most five).
    pub fn from_descending(c: &[Rational]) -> Result<QuarticPoly> {
        if c.is_empty() || c.len() > 5 {
            return Err(Error::Parse(format!(
                "expected 1 to 5 coefficients, got {}",
                c.len()
            )));
        }
        let mut out: [Rational; 5] = Default::default();
        for (i, v) in c.iter().rev().enumerate() {
            out[i] = v.clone();
        }
        Ok(QuarticPoly::new(out))
    }

    /// Degree-at-most-4 truncation of a general polynomial.
    pub fn from_poly(p: &Poly) -> Result<QuarticPoly> {
        if p.degree().is_some_and(|d| d > 4) {
            return Err(Error::InvalidSurface(format!("degree of {p} exceeds 4")));
        }
        Ok(QuarticPoly::new(std::array::from_fn(|i| p.coeff(i))))
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coefficients[i]
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coefficients.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Rational::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        (0..5).rev().find(|&i| !self.coefficients[i].is_zero())
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.to_poly().eval(x)
    }

    /// Value of `w^4 P(x/w)` at `(x : w) = (1 : 0)`, i.e. the `x^4`
    /// coefficient; zero for cubics.
    pub fn homogenize_value_at_infinity(&self) -> Rational {
        self.coefficients[4].clone()
    }

    pub fn scale(&self, c: &Rational) -> QuarticPoly {
        QuarticPoly::new(self.coefficients.clone().map(|a| a * c))
    }

    /// True iff `gcd(P, P')` is a nonzero constant.
    pub fn is_separable(&self) -> bool {
        let p = self.to_poly();
        if p.is_zero() {
            return false;
        }
        p.gcd(&p.derivative()).degree() == Some(0)
    }

    /// Discriminant of the polynomial at its actual degree (degree >= 1).
    pub fn discriminant(&self) -> Rational {
        discriminant(&self.to_poly())
    }

    /// `Some` when the odd coefficients vanish and `x^4` appears.
    pub fn as_biquadratic(&self) -> Option<BiquadraticQuartic> {
        let c = &self.coefficients;
        (c[1].is_zero() && c[3].is_zero() && !c[4].is_zero()).then(|| BiquadraticQuartic {
            a: c[4].clone(),
            b: c[2].clone(),
            c: c[0].clone(),
        })
    }

    /// Writes `P = scale * Q` with `Q` a primitive integer polynomial whose
    /// leading coefficient is positive. Returns `(scale, ascending Q)`.
    pub fn primitive_integer_form(&self) -> (Rational, [BigInt; 5]) {
        let lcm = self
            .coefficients
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coefficients
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return (Rational::zero(), Default::default());
        }
        let lead_negative = ints
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .unwrap()
            .is_negative();
        if lead_negative {
            content = -content;
        }
        let q: [BigInt; 5] = std::array::from_fn(|i| &ints[i] / &content);
        (Rational::new(content, lcm), q)
    }
}

impl fmt::Display for QuarticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

impl fmt::Debug for QuarticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Discriminant via the resultant `Res(P, P')`.
pub fn discriminant(p: &Poly) -> Rational {
    let n = p.degree().expect("discriminant of zero polynomial");
    if n == 0 {
        return Rational::zero();
    }
    let res = resultant(p, &p.derivative());
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    res * Rational::from(sign) / p.leading()
}

/// Sylvester-matrix resultant by fraction-exact Gaussian elimination.
pub fn resultant(f: &Poly, g: &Poly) -> Rational {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Rational::zero(),
    };
    if m == 0 && n == 0 {
        return Rational::one();
    }
    let size = m + n;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut().filter(|row| !row[col].is_zero()) {
            let factor = &row[col] / &p;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &(&factor * y);
            }
        }
    }
    det
}

/// `a x^4 + b x^2 + c`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BiquadraticQuartic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// The two quantities of the biquadratic irreducibility test and their
/// square roots, when they exist.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CriterionCheck {
    /// `b^2 - 4ac`
    pub discriminant: Rational,
    pub discriminant_sqrt: Option<Rational>,
    /// `a c`
    pub product: Rational,
    pub product_sqrt: Option<Rational>,
}

impl CriterionCheck {
    /// Both quantities are nonsquares, which proves irreducibility.
    pub fn proves_irreducible(&self) -> bool {
        self.discriminant_sqrt.is_none() && self.product_sqrt.is_none()
    }
}

impl BiquadraticQuartic {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        BiquadraticQuartic { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        BiquadraticQuartic::new(a.into(), b.into(), c.into())
    }

    pub fn to_quartic(&self) -> QuarticPoly {
        QuarticPoly::new([
            self.c.clone(),
            Rational::zero(),
            self.b.clone(),
            Rational::zero(),
            self.a.clone(),
        ])
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BiquadraticQuartic::new(&self.a * s, &self.b * s, &self.c * s)
    }

    pub fn criterion(&self) -> CriterionCheck {
        let disc = &self.b * &self.b - Rational::from(4) * &self.a * &self.c;
        let prod = &self.a * &self.c;
        CriterionCheck {
            discriminant_sqrt: is_rational_square(&disc),
            discriminant: disc,
            product_sqrt: is_rational_square(&prod),
            product: prod,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityMethod {
    /// Both `b^2 - 4ac` and `ac` are nonsquares.
    Criterion,
    /// The criterion was inconclusive; decided by complete factorization.
    FactorizationOracle,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    pub method: IrreducibilityMethod,
    pub criterion: CriterionCheck,
}

/// Criterion first, oracle when the criterion does not apply.
pub fn irreducibility_verdict(q: &BiquadraticQuartic) -> Result<IrreducibilityVerdict> {
    if q.a.is_zero() {
        return Err(Error::PreconditionViolated(
            "biquadratic with zero x^4 coefficient".into(),
        ));
    }
    let criterion = q.criterion();
    if criterion.proves_irreducible() {
        return Ok(IrreducibilityVerdict {
            irreducible: true,
            method: IrreducibilityMethod::Criterion,
            criterion,
        });
    }
    let f = factorization_oracle(&q.to_quartic())?;
    Ok(IrreducibilityVerdict {
        irreducible: f.is_irreducible(),
        method: IrreducibilityMethod::FactorizationOracle,
        criterion,
    })
}

pub fn biquadratic_irreducible(q: &BiquadraticQuartic) -> Result<bool> {
    Ok(irreducibility_verdict(q)?.irreducible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p0() -> QuarticPoly {
        QuarticPoly::from_i64([-6, 0, 5, 0, -1])
    }

    fn p_inf() -> QuarticPoly {
        QuarticPoly::from_i64([-1, 0, 3, 0, 2])
    }

    #[test]
    fn evaluation() {
        assert_eq!(p0().evaluate(&rat(3, 2)), rat(3, 16));
        assert_eq!(p_inf().evaluate(&Rational::zero()), rat(-1, 1));
        let q = QuarticPoly::from_i64([7, 1, 2, 3, 4]);
        assert_eq!(q.evaluate(&Rational::zero()), rat(7, 1));
    }

    #[test]
    fn value_at_infinity() {
        assert_eq!(p_inf().homogenize_value_at_infinity(), rat(2, 1));
        assert_eq!(p0().homogenize_value_at_infinity(), rat(-1, 1));
        let cubic = QuarticPoly::from_i64([1, 0, 0, 5, 0]);
        assert_eq!(cubic.homogenize_value_at_infinity(), Rational::zero());
        assert_eq!(cubic.degree(), Some(3));
    }

    #[test]
    fn separability() {
        assert!(p0().is_separable());
        assert!(p_inf().is_separable());
        assert!(!QuarticPoly::from_i64([1, 0, -2, 0, 1]).is_separable());
    }

    #[test]
    fn discriminants() {
        // x^2 - 2: disc 8; x^3 - x: disc 4
        assert_eq!(discriminant(&Poly::from_i64(&[-2, 0, 1])), rat(8, 1));
        assert_eq!(discriminant(&Poly::from_i64(&[0, -1, 0, 1])), rat(4, 1));
        // biquadratic: 16 a c (b^2 - 4ac)^2
        let b = BiquadraticQuartic::from_i64(2, 3, -1);
        let expect = rat(-(16 * 2) * 17 * 17, 1);
        assert_eq!(b.to_quartic().discriminant(), expect);
        assert_eq!(
            QuarticPoly::from_i64([1, 0, -2, 0, 1]).discriminant(),
            Rational::zero()
        );
    }

    #[test]
    fn criterion_examples() {
        assert!(biquadratic_irreducible(&BiquadraticQuartic::from_i64(2, 3, -1)).unwrap());
        assert!(!biquadratic_irreducible(&BiquadraticQuartic::from_i64(1, 0, -1)).unwrap());
        let fiber = BiquadraticQuartic::from_i64(287, 437, -150);
        let v = irreducibility_verdict(&fiber).unwrap();
        assert!(v.irreducible);
        assert_eq!(v.method, IrreducibilityMethod::Criterion);
        assert_eq!(v.criterion.discriminant, rat(437 * 437 + 4 * 287 * 150, 1));
        // x^4 + 1: criterion inconclusive (ac = 1), oracle says irreducible.
        let v = irreducibility_verdict(&BiquadraticQuartic::from_i64(1, 0, 1)).unwrap();
        assert!(v.irreducible);
        assert_eq!(v.method, IrreducibilityMethod::FactorizationOracle);
        assert!(irreducibility_verdict(&BiquadraticQuartic::from_i64(0, 1, 1)).is_err());
    }

    #[test]
    fn primitive_form() {
        let q = QuarticPoly::new([rat(-1, 2), rat(0, 1), rat(3, 4), rat(0, 1), rat(-1, 4)]);
        let (s, ints) = q.primitive_integer_form();
        assert_eq!(s, rat(-1, 4));
        let ints: Vec<i64> = ints.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![2, 0, -3, 0, 1]);
    }

    #[test]
    fn descending_input() {
        let q = QuarticPoly::from_descending(&[
            rat(-1, 1),
            rat(0, 1),
            rat(5, 1),
            rat(0, 1),
            rat(-6, 1),
        ])
        .unwrap();
        assert_eq!(q, p0());
        assert!(QuarticPoly::from_descending(&[]).is_err());
    }
}
