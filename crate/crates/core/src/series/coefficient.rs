use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Tag naming the coefficient ring a series lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    Rational,
    Complex,
}

/// Absolute tolerance of the complex floating domain: values with modulus at
/// or below this are zero, and two values within it are equal.
pub const COMPLEX_TOLERANCE: f64 = 1e-12;

/// Ring operations a series coefficient must provide.
///
/// The integer and rational domains are exact. The complex domain is
/// approximate with absolute tolerance [`COMPLEX_TOLERANCE`].
pub trait Coefficient: Clone + Debug + Display + Send + Sync + 'static {
    const DOMAIN: Domain;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse, when it exists in the domain.
    fn inverse(&self) -> Option<Self>;
    /// Exact division by a nonzero integer, `None` if the quotient leaves the domain.
    fn div_exact(&self, d: i64) -> Option<Self>;
    fn from_integer(n: &BigInt) -> Self;
    /// Equality: exact for exact domains, tolerance-based for the complex one.
    fn same(&self, other: &Self) -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coefficient for BigInt {
    const DOMAIN: Domain = Domain::Integer;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (self.abs() == <BigInt as One>::one()).then(|| self.clone())
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        let d = BigInt::from(d);
        if Zero::is_zero(&d) {
            return None;
        }
        let (quot, rem) = self.div_rem(&d);
        Zero::is_zero(&rem).then_some(quot)
    }
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coefficient for BigRational {
    const DOMAIN: Domain = Domain::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        (d != 0).then(|| self / BigRational::from_integer(BigInt::from(d)))
    }
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coefficient for Complex64 {
    const DOMAIN: Domain = Domain::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() <= COMPLEX_TOLERANCE
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (!Coefficient::is_zero(self)).then(|| self.inv())
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        (d != 0).then(|| self / d as f64)
    }
    fn from_integer(n: &BigInt) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn same(&self, other: &Self) -> bool {
        (self - other).norm() <= COMPLEX_TOLERANCE
    }
}
