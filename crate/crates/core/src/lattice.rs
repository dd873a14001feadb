//! Exact two-dimensional integer linear algebra.
//!
//! Everything here is arbitrary precision: lattice vectors and matrices
//! carry [`BigInt`] entries and rational points carry [`BigRational`]
//! entries, so no operation can overflow or round.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for coordinates, coefficients and actions.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("matrix with determinant {0} is not unimodular")]
    NotUnimodular(BigInt),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// Builds a scalar from an integer.
pub fn scalar(n: impl Into<BigInt>) -> Scalar {
    BigRational::from_integer(n.into())
}

/// Builds the scalar `num/den`. Panics if `den` is zero.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Scalar {
    BigRational::new(num.into(), den.into())
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-2.75"`.
pub fn parse_scalar(text: &str) -> Result<Scalar, LatticeError> {
    let bad = || LatticeError::BadRational(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        return Ok(BigRational::new(num, den));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// An integer lattice vector `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec2Z {
    pub a: BigInt,
    pub b: BigInt,
}

impl Vec2Z {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Vec2Z { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Vec2Z::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Vec2Z {
        Vec2Z { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_rational(&self) -> Vec2Q {
        Vec2Q {
            a: BigRational::from_integer(self.a.clone()),
            b: BigRational::from_integer(self.b.clone()),
        }
    }

    /// Both coordinates non-negative, i.e. the vector lies in the closed
    /// standard quadrant.
    pub fn in_closed_quadrant(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative()
    }

    /// Pairing with a rational covector.
    pub fn pair(&self, covector: &Vec2Q) -> Scalar {
        &covector.a * BigRational::from_integer(self.a.clone())
            + &covector.b * BigRational::from_integer(self.b.clone())
    }
}

impl fmt::Display for Vec2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Add for &Vec2Z {
    type Output = Vec2Z;
    fn add(self, rhs: &Vec2Z) -> Vec2Z {
        Vec2Z { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &Vec2Z {
    type Output = Vec2Z;
    fn sub(self, rhs: &Vec2Z) -> Vec2Z {
        Vec2Z { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Neg for &Vec2Z {
    type Output = Vec2Z;
    fn neg(self) -> Vec2Z {
        Vec2Z { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Vec2Z {
    type Output = Vec2Z;
    fn neg(self) -> Vec2Z {
        Vec2Z { a: -self.a, b: -self.b }
    }
}

/// A rational point or covector `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2Q {
    pub a: Scalar,
    pub b: Scalar,
}

impl Default for Vec2Q {
    fn default() -> Self {
        Vec2Q::zero()
    }
}

impl Vec2Q {
    pub fn new(a: Scalar, b: Scalar) -> Self {
        Vec2Q { a, b }
    }

    pub fn from_ints(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Vec2Q { a: scalar(a), b: scalar(b) }
    }

    pub fn zero() -> Self {
        Vec2Q { a: Scalar::zero(), b: Scalar::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_integral(&self) -> Option<Vec2Z> {
        self.is_integral().then(|| Vec2Z {
            a: self.a.to_integer(),
            b: self.b.to_integer(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Vec2Q {
        Vec2Q { a: &self.a * k, b: &self.b * k }
    }

    pub fn dot(&self, other: &Vec2Q) -> Scalar {
        &self.a * &other.a + &self.b * &other.b
    }

    /// `p + t * v` for a lattice direction `v`.
    pub fn offset(&self, t: &Scalar, v: &Vec2Z) -> Vec2Q {
        Vec2Q {
            a: &self.a + t * BigRational::from_integer(v.a.clone()),
            b: &self.b + t * BigRational::from_integer(v.b.clone()),
        }
    }

    /// Smallest lattice vector positively proportional to `self`.
    pub fn primitive_direction(&self) -> Result<Vec2Z, LatticeError> {
        if self.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        let den = self.a.denom().lcm(self.b.denom());
        let scaled = Vec2Z {
            a: (&self.a * BigRational::from_integer(den.clone())).to_integer(),
            b: (&self.b * BigRational::from_integer(den)).to_integer(),
        };
        primitive_part(&scaled).map(|(u, _)| u)
    }
}

impl fmt::Display for Vec2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_scalar(&self.a), format_scalar(&self.b))
    }
}

impl Add for &Vec2Q {
    type Output = Vec2Q;
    fn add(self, rhs: &Vec2Q) -> Vec2Q {
        Vec2Q { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &Vec2Q {
    type Output = Vec2Q;
    fn sub(self, rhs: &Vec2Q) -> Vec2Q {
        Vec2Q { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

/// `v.a * w.b - v.b * w.a`.
pub fn wedge(v: &Vec2Z, w: &Vec2Z) -> BigInt {
    &v.a * &w.b - &v.b * &w.a
}

/// Rational version of [`wedge`].
pub fn wedge_q(v: &Vec2Q, w: &Vec2Q) -> Scalar {
    &v.a * &w.b - &v.b * &w.a
}

/// Splits `v` as `d * u` with `u` primitive and `d >= 1`.
pub fn primitive_part(v: &Vec2Z) -> Result<(Vec2Z, BigInt), LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let d = v.a.gcd(&v.b);
    Ok((Vec2Z { a: &v.a / &d, b: &v.b / &d }, d))
}

pub fn is_primitive(v: &Vec2Z) -> bool {
    !v.is_zero() && v.a.gcd(&v.b).is_one()
}

/// A 2x2 integer matrix, row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2Z {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Mat2Z { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Mat2Z::new(1, 0, 0, 1)
    }

    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Mat2Z {
        Mat2Z {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn apply(&self, v: &Vec2Z) -> Vec2Z {
        Vec2Z {
            a: &self.a * &v.a + &self.b * &v.b,
            b: &self.c * &v.a + &self.d * &v.b,
        }
    }

    pub fn apply_q(&self, v: &Vec2Q) -> Vec2Q {
        let [[a, b], [c, d]] = self.rows().map(|r| r.map(|x| BigRational::from_integer(x.clone())));
        Vec2Q {
            a: &a * &v.a + &b * &v.b,
            b: &c * &v.a + &d * &v.b,
        }
    }

    pub fn mul(&self, rhs: &Mat2Z) -> Mat2Z {
        Mat2Z {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Inverse over the integers; requires `|det| = 1`.
    pub fn inverse(&self) -> Result<Mat2Z, LatticeError> {
        let det = self.det();
        if !det.abs().is_one() {
            return Err(LatticeError::NotUnimodular(det));
        }
        // det is its own inverse when it is +-1
        Ok(Mat2Z {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2Z::identity()
    }
}

impl Mul for &Mat2Z {
    type Output = Mat2Z;
    fn mul(self, rhs: &Mat2Z) -> Mat2Z {
        Mat2Z::mul(self, rhs)
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
