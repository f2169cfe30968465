use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::SeriesError;

/// Exact reduced rational used for q and y exponents.
pub type Rational = Ratio<i64>;

/// Shorthand for `n/d` as a reduced [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Exponent of a monomial `p^p q^q y^y`.
///
/// Ordering is lexicographic in `(p, q, y)`, which is also the storage order
/// of series terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub p: u32,
    pub q: Rational,
    pub y: Rational,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent {
        p: 0,
        q: Ratio::new_raw(0, 1),
        y: Ratio::new_raw(0, 1),
    };

    /// Builds an exponent, rejecting negative q and y denominators other than 1 or 2.
    pub fn new(p: u32, q: Rational, y: Rational) -> Result<Self, SeriesError> {
        if q.is_negative() {
            return Err(SeriesError::NegativeQExponent(q));
        }
        if !2i64.is_multiple_of(y.denom()) {
            return Err(SeriesError::YDenominator(y));
        }
        Ok(Exponent { p, q, y })
    }

    /// Integer exponents; panics only on negative `q`.
    pub fn int(p: u32, q: i64, y: i64) -> Self {
        Exponent::new(p, Rational::from_integer(q), Rational::from_integer(y))
            .expect("integer exponent with q >= 0")
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q.is_zero() && self.y.is_zero()
    }

    pub fn checked_add(&self, other: &Exponent) -> Option<Exponent> {
        Some(Exponent {
            p: self.p.checked_add(other.p)?,
            q: self.q + other.q,
            y: self.y + other.y,
        })
    }

    /// `self` repeated `k` times.
    pub fn scaled(&self, k: u32) -> Exponent {
        let kr = Rational::from_integer(k as i64);
        Exponent {
            p: self.p * k,
            q: self.q * kr,
            y: self.y * kr,
        }
    }

    pub(crate) fn fits_q_denominator(&self, bound: i64) -> bool {
        bound.is_multiple_of(self.q.denom())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p^{} q^{} y^{}", self.p, self.q, self.y)
    }
}
