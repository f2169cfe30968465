//! Sparse truncated series in `p`, `q`, `y` with rational exponents.
//!
//! A [`Series`] is a finite map from [`Exponent`] to nonzero coefficient
//! together with the window `(p <= p_max, q <= q_max)` it is known on.
//! Every operation re-truncates to the tighter window of its operands, and
//! equality only compares the common window.

mod coefficient;
mod exponent;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use coefficient::{Coefficient, Domain, COMPLEX_TOLERANCE};
pub use exponent::{rat, Exponent, Rational};

/// Default bound on q-exponent denominators.
pub const DEFAULT_Q_DENOMINATOR: i64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("q exponent {0} is negative")]
    NegativeQExponent(Rational),
    #[error("y exponent {0} must have denominator dividing 2")]
    YDenominator(Rational),
    #[error("q exponent {exponent} exceeds the declared denominator bound {bound}")]
    QDenominatorOverflow { exponent: Rational, bound: i64 },
    #[error("constant term is not invertible in the coefficient domain")]
    NotInvertible,
    #[error("product factor monomial {0} has zero p exponent")]
    ZeroPExponent(Exponent),
    #[error("coefficient {coefficient} at {exponent} is not divisible by {divisor}")]
    NotDivisible {
        exponent: Exponent,
        coefficient: String,
        divisor: i64,
    },
    #[error("substitution factor must be positive")]
    ZeroSubstitution,
}

/// Window on which a series is known: `p <= p_max`, `q <= q_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub p_max: u32,
    pub q_max: Rational,
}

impl Truncation {
    pub fn new(p_max: u32, q_max: Rational) -> Self {
        Truncation { p_max, q_max }
    }

    pub fn int(p_max: u32, q_max: i64) -> Self {
        Truncation::new(p_max, Rational::from_integer(q_max))
    }

    /// The tighter of two windows.
    pub fn meet(&self, other: &Truncation) -> Truncation {
        Truncation {
            p_max: self.p_max.min(other.p_max),
            q_max: self.q_max.min(other.q_max),
        }
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        e.p <= self.p_max && e.q <= self.q_max
    }
}

/// How [`Series::substitute_q_power`] rescales q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QScaling {
    /// `q -> q^k`
    Multiply,
    /// `q -> q^(1/k)`
    Divide,
}

/// One factor `(1 + sign * monomial)^exponent` of an infinite product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFactor {
    pub sign: i8,
    pub monomial: Exponent,
    pub exponent: BigInt,
}

impl ProductFactor {
    pub fn new(sign: i8, monomial: Exponent, exponent: impl Into<BigInt>) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        ProductFactor {
            sign,
            monomial,
            exponent: exponent.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Series<C: Coefficient> {
    terms: BTreeMap<Exponent, C>,
    trunc: Truncation,
    q_den: i64,
}

impl<C: Coefficient> Series<C> {
    pub fn zero(trunc: Truncation) -> Self {
        Series {
            terms: BTreeMap::new(),
            trunc,
            q_den: DEFAULT_Q_DENOMINATOR,
        }
    }

    pub fn one(trunc: Truncation) -> Self {
        Self::constant(C::one(), trunc)
    }

    pub fn constant(c: C, trunc: Truncation) -> Self {
        let mut s = Self::zero(trunc);
        s.insert(Exponent::ZERO, c);
        s
    }

    pub fn monomial(e: Exponent, c: C, trunc: Truncation) -> Result<Self, SeriesError> {
        Self::from_terms([(e, c)], trunc)
    }

    /// Builds a series from terms; repeated exponents accumulate.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Exponent, C)>,
        trunc: Truncation,
    ) -> Result<Self, SeriesError> {
        Self::from_terms_with_bound(terms, trunc, DEFAULT_Q_DENOMINATOR)
    }

    pub fn from_terms_with_bound(
        terms: impl IntoIterator<Item = (Exponent, C)>,
        trunc: Truncation,
        q_den: i64,
    ) -> Result<Self, SeriesError> {
        let mut s = Series {
            terms: BTreeMap::new(),
            trunc,
            q_den,
        };
        for (e, c) in terms {
            s.check_exponent(&e)?;
            s.accumulate(e, &c);
        }
        Ok(s)
    }

    fn check_exponent(&self, e: &Exponent) -> Result<(), SeriesError> {
        if e.fits_q_denominator(self.q_den) {
            Ok(())
        } else {
            Err(SeriesError::QDenominatorOverflow {
                exponent: e.q,
                bound: self.q_den,
            })
        }
    }

    fn insert(&mut self, e: Exponent, c: C) {
        if self.trunc.contains(&e) && !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    fn accumulate(&mut self, e: Exponent, c: &C) {
        if !self.trunc.contains(&e) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(e, c.clone());
                }
            }
        }
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn q_denominator_bound(&self) -> i64 {
        self.q_den
    }

    /// Same series with a different q-denominator bound. Fails if a stored
    /// exponent does not fit the new bound.
    pub fn with_q_denominator(mut self, bound: i64) -> Result<Self, SeriesError> {
        self.q_den = bound;
        for e in self.terms.keys() {
            self.check_exponent(e)?;
        }
        Ok(self)
    }

    /// Restricts to a (tighter) window; never widens.
    pub fn truncate(&self, trunc: Truncation) -> Self {
        let trunc = self.trunc.meet(&trunc);
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| trunc.contains(e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            trunc,
            q_den: self.q_den,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_at(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient_at(&Exponent::ZERO)
    }

    fn combined(&self, other: &Self) -> Series<C> {
        Series {
            terms: BTreeMap::new(),
            trunc: self.trunc.meet(&other.trunc),
            q_den: self.q_den.lcm(&other.q_den),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.combined(other);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            trunc: self.trunc,
            q_den: self.q_den,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Series::zero(self.trunc);
        out.q_den = self.q_den;
        for (e, v) in &self.terms {
            out.insert(*e, v.mul(c));
        }
        out
    }

    /// Divides every coefficient exactly by `d`.
    pub fn div_exact(&self, d: i64) -> Result<Self, SeriesError> {
        let mut out = Series::zero(self.trunc);
        out.q_den = self.q_den;
        for (e, v) in &self.terms {
            let c = v.div_exact(d).ok_or_else(|| SeriesError::NotDivisible {
                exponent: *e,
                coefficient: v.to_string(),
                divisor: d,
            })?;
            out.insert(*e, c);
        }
        Ok(out)
    }

    /// Multiplies by the monomial `e`.
    pub fn shift(&self, e: &Exponent) -> Result<Self, SeriesError> {
        let mut out = Series::zero(self.trunc);
        out.q_den = self.q_den;
        out.check_exponent(e)?;
        for (k, v) in &self.terms {
            if let Some(sum) = k.checked_add(e) {
                out.insert(sum, v.clone());
            }
        }
        Ok(out)
    }

    /// Convolution product, truncated to the common window.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.combined(other);
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let p_max = out.trunc.p_max;
        let q_max = out.trunc.q_max;
        for (ea, ca) in &small.terms {
            if ea.p > p_max {
                break;
            }
            if ea.q > q_max {
                continue;
            }
            for (eb, cb) in &large.terms {
                if ea.p + eb.p > p_max {
                    break;
                }
                if ea.q + eb.q > q_max {
                    continue;
                }
                let e = Exponent {
                    p: ea.p + eb.p,
                    q: ea.q + eb.q,
                    y: ea.y + eb.y,
                };
                out.accumulate(e, &ca.mul(cb));
            }
        }
        out
    }

    /// `f^n`; negative `n` inverts through a geometric series first.
    pub fn pow_int(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.inverse()?.pow_int(-n);
        }
        let mut base = self.clone();
        let mut acc = Series::one(self.trunc);
        acc.q_den = self.q_den;
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse within the truncation window.
    ///
    /// Requires an invertible constant term and no other term of total
    /// degree zero in `p` and `q` (such a term would make the inverse an
    /// infinite series in `y`).
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0_inv = self
            .constant_term()
            .inverse()
            .ok_or(SeriesError::NotInvertible)?;
        let one = Series::one(self.trunc);
        // f = c0 (1 + g) with g nilpotent in the window
        let g = self.scale(&c0_inv).sub(&one);
        if g.terms.keys().any(|e| e.p == 0 && e.q.is_zero()) {
            return Err(SeriesError::NotInvertible);
        }
        let minus_g = g.neg();
        let mut acc = one.clone();
        acc.q_den = self.q_den;
        let mut power = one;
        loop {
            power = power.mul(&minus_g);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// The truncated product of `(1 + s M)^c` over `factors`, expanded by
    /// the generalized binomial series factor by factor.
    pub fn expand_product(
        factors: &[ProductFactor],
        trunc: Truncation,
        q_den: i64,
    ) -> Result<Self, SeriesError> {
        let mut acc = Series::one(trunc);
        acc.q_den = q_den;
        for f in factors {
            if f.monomial.p == 0 {
                return Err(SeriesError::ZeroPExponent(f.monomial));
            }
            acc.check_exponent(&f.monomial)?;
            if !trunc.contains(&f.monomial) || Zero::is_zero(&f.exponent) {
                continue;
            }
            acc = acc.mul(&Self::binomial_series(f, trunc, q_den));
        }
        Ok(acc)
    }

    fn binomial_series(f: &ProductFactor, trunc: Truncation, q_den: i64) -> Self {
        let mut s = Series::zero(trunc);
        s.q_den = q_den;
        let mut binom = <BigInt as One>::one();
        let mut k: u32 = 0;
        loop {
            let e = f.monomial.scaled(k);
            if !trunc.contains(&e) || Zero::is_zero(&binom) {
                break;
            }
            let mut c = binom.clone();
            if f.sign < 0 && k % 2 == 1 {
                c = -c;
            }
            s.insert(e, C::from_integer(&c));
            // binom(c, k+1) = binom(c, k) (c - k) / (k + 1)
            binom = binom * (&f.exponent - BigInt::from(k)) / BigInt::from(k + 1);
            k += 1;
        }
        s
    }

    /// `q -> q^k` or `q -> q^(1/k)`. The q window scales along with the
    /// exponents.
    pub fn substitute_q_power(&self, k: u32, mode: QScaling) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::ZeroSubstitution);
        }
        let kr = Rational::from_integer(k as i64);
        let rescale = |q: Rational| match mode {
            QScaling::Multiply => q * kr,
            QScaling::Divide => q / kr,
        };
        let trunc = Truncation::new(self.trunc.p_max, rescale(self.trunc.q_max));
        let mut out = Series::zero(trunc);
        out.q_den = self.q_den;
        for (e, c) in &self.terms {
            let e = Exponent {
                q: rescale(e.q),
                ..*e
            };
            out.check_exponent(&e)?;
            out.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Sets `q := 0` and/or `y := 1`, summing coefficients that collide.
    pub fn specialize(&self, q_zero: bool, y_one: bool) -> Self {
        let mut out = Series::zero(self.trunc);
        out.q_den = self.q_den;
        for (e, c) in &self.terms {
            if q_zero && !e.q.is_zero() {
                continue;
            }
            let mut e = *e;
            if y_one {
                e.y = Rational::zero();
            }
            out.accumulate(e, c);
        }
        out
    }

    /// Coefficient of `p^n` as a series in `q`, `y` (p exponent reset to 0).
    pub fn p_coefficient(&self, n: u32) -> Self {
        let mut out = Series::zero(self.trunc);
        out.q_den = self.q_den;
        for (e, c) in self.terms.iter().filter(|(e, _)| e.p == n) {
            out.insert(Exponent { p: 0, ..*e }, c.clone());
        }
        out
    }

    /// Exponents on the common window where the two series differ, with
    /// both coefficients.
    pub fn differences(&self, other: &Self) -> Vec<(Exponent, C, C)> {
        let window = self.trunc.meet(&other.trunc);
        let a = self.truncate(window);
        let b = other.truncate(window);
        let mut keys: Vec<Exponent> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|e| {
                let (ca, cb) = (a.coefficient_at(&e), b.coefficient_at(&e));
                (!ca.same(&cb)).then_some((e, ca, cb))
            })
            .collect()
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.differences(other).is_empty()
    }

    /// Applies `f` to every coefficient, moving to another domain.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.trunc);
        out.q_den = self.q_den;
        for (e, c) in &self.terms {
            out.insert(*e, f(c));
        }
        out
    }
}

impl<C: Coefficient> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if e.p != 0 {
                write!(f, "*p^{}", e.p)?;
            }
            if !e.q.is_zero() {
                write!(f, "*q^{}", e.q)?;
            }
            if !e.y.is_zero() {
                write!(f, "*y^{}", e.y)?;
            }
        }
        write!(
            f,
            " + O(p^{}, q^{})",
            self.trunc.p_max + 1,
            self.trunc.q_max
        )
    }
}

/// Integer series, the default domain.
pub type IntSeries = Series<BigInt>;

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(u32, Rational, Rational, i64)], trunc: Truncation) -> IntSeries {
        Series::from_terms(
            terms
                .iter()
                .map(|&(p, q, y, c)| (Exponent::new(p, q, y).unwrap(), BigInt::from(c))),
            trunc,
        )
        .unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn coeffs_p(f: &IntSeries, n: u32) -> Vec<i64> {
        (0..=n)
            .map(|k| {
                f.coefficient_at(&Exponent::int(k, 0, 0))
                    .try_into()
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn add_cancels_and_collects_like_terms() {
        let t = Truncation::int(4, 4);
        let a = s(&[(0, r(0), r(0), 1), (0, r(1), r(0), 1)], t);
        let b = s(&[(0, r(0), r(0), 1), (0, r(1), r(0), -1)], t);
        assert_eq!(a.add(&b), s(&[(0, r(0), r(0), 2)], t));

        let p = s(&[(1, r(0), r(0), 1)], t);
        assert_eq!(p.add(&IntSeries::zero(t)), p);

        let h = s(&[(0, rat(1, 2), r(-1), 1)], t);
        assert_eq!(h.add(&h), s(&[(0, rat(1, 2), r(-1), 2)], t));
    }

    #[test]
    fn mul_examples() {
        let t = Truncation::int(4, 4);
        let a = s(&[(0, r(0), r(0), 1), (0, r(1), r(0), 1)], t);
        let b = s(&[(0, r(0), r(0), 1), (0, r(1), r(0), -1)], t);
        assert_eq!(a.mul(&b), s(&[(0, r(0), r(0), 1), (0, r(2), r(0), -1)], t));

        let t1 = Truncation::int(1, 4);
        let a = s(&[(0, r(0), r(0), 1), (1, r(0), r(0), 1)], t1);
        assert_eq!(a.mul(&a), s(&[(0, r(0), r(0), 1), (1, r(0), r(0), 2)], t1));

        let d = s(&[(0, r(0), rat(1, 2), 1), (0, r(0), rat(-1, 2), -1)], t);
        assert_eq!(
            d.mul(&d),
            s(
                &[(0, r(0), r(1), 1), (0, r(0), r(0), -2), (0, r(0), r(-1), 1)],
                t
            )
        );
    }

    #[test]
    fn pow_int_examples() {
        let t = Truncation::int(0, 3);
        let f = s(&[(0, r(0), r(0), 1), (0, r(1), r(0), -1)], t);
        let inv = f.pow_int(-1).unwrap();
        assert_eq!(
            inv,
            s(
                &[
                    (0, r(0), r(0), 1),
                    (0, r(1), r(0), 1),
                    (0, r(2), r(0), 1),
                    (0, r(3), r(0), 1)
                ],
                t
            )
        );
        assert_eq!(f.pow_int(0).unwrap(), IntSeries::one(t));

        // binomial oracle: (1-x)^-2 = sum (k+1) x^k, by repeated multiplication
        let t = Truncation::int(2, 2);
        let f = s(&[(0, r(0), r(0), 1), (1, r(1), r(0), -1)], t);
        let oracle = {
            let g = s(
                &[(0, r(0), r(0), 1), (1, r(1), r(0), 1), (2, r(2), r(0), 1)],
                t,
            );
            g.mul(&g)
        };
        assert_eq!(f.pow_int(-2).unwrap(), oracle);
        assert_eq!(
            oracle,
            s(
                &[(0, r(0), r(0), 1), (1, r(1), r(0), 2), (2, r(2), r(0), 3)],
                t
            )
        );
    }

    #[test]
    fn pow_int_rejects_non_unit_constant() {
        let t = Truncation::int(2, 2);
        let f = s(&[(0, r(0), r(0), 2), (1, r(0), r(0), 1)], t);
        assert_eq!(f.pow_int(-1), Err(SeriesError::NotInvertible));
        let g = s(&[(0, r(0), r(0), 1), (0, r(0), r(1), 1)], t);
        assert_eq!(g.pow_int(-1), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn expand_product_examples() {
        let t = Truncation::int(4, 0);
        let one_minus_p_inv =
            IntSeries::expand_product(&[ProductFactor::new(-1, Exponent::int(1, 0, 0), -1)], t, 2)
                .unwrap();
        assert_eq!(coeffs_p(&one_minus_p_inv, 4), vec![1, 1, 1, 1, 1]);

        let odd: Vec<_> = [1, 3, 5]
            .iter()
            .map(|&k| ProductFactor::new(-1, Exponent::int(k, 0, 0), -1))
            .collect();
        let odd = IntSeries::expand_product(&odd, t, 2).unwrap();
        // partitions into odd parts, counted by hand: 1,1,1,2,2
        assert_eq!(coeffs_p(&odd, 4), vec![1, 1, 1, 2, 2]);

        let f = IntSeries::expand_product(
            &[
                ProductFactor::new(1, Exponent::int(2, 0, 0), 1),
                ProductFactor::new(1, Exponent::int(4, 0, 0), 1),
            ],
            t,
            2,
        )
        .unwrap();
        assert_eq!(coeffs_p(&f, 4), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn expand_product_rejects_p_free_factor() {
        let err = IntSeries::expand_product(
            &[ProductFactor::new(-1, Exponent::int(0, 1, 0), -1)],
            Truncation::int(3, 3),
            2,
        );
        assert!(matches!(err, Err(SeriesError::ZeroPExponent(_))));
    }

    #[test]
    fn substitute_q_power_examples() {
        let t = Truncation::int(0, 6);
        let q2 = s(&[(0, r(2), r(0), 1)], t);
        let got = q2.substitute_q_power(2, QScaling::Divide).unwrap();
        assert_eq!(got, s(&[(0, r(1), r(0), 1)], Truncation::int(0, 3)));

        let one = IntSeries::one(t);
        assert_eq!(one.substitute_q_power(5, QScaling::Multiply).unwrap(), one);

        let f = s(
            &[(0, r(1), r(0), 1), (0, r(3), r(0), 1)],
            Truncation::int(0, 3),
        );
        let got = f.substitute_q_power(2, QScaling::Multiply).unwrap();
        assert_eq!(got, s(&[(0, r(2), r(0), 1), (0, r(6), r(0), 1)], t));
    }

    #[test]
    fn substitute_q_power_overflows_bound() {
        let f = s(&[(0, rat(1, 2), r(0), 1)], Truncation::int(0, 2));
        assert!(matches!(
            f.substitute_q_power(2, QScaling::Divide),
            Err(SeriesError::QDenominatorOverflow { .. })
        ));
        let widened = f.with_q_denominator(4).unwrap();
        assert!(widened.substitute_q_power(2, QScaling::Divide).is_ok());
    }

    #[test]
    fn coefficient_and_specialize() {
        let t = Truncation::int(2, 2);
        let f = s(&[(0, r(0), r(0), 1), (1, r(1), r(0), 2)], t);
        assert_eq!(f.coefficient_at(&Exponent::int(1, 1, 0)), BigInt::from(2));

        let g = s(&[(0, r(0), r(1), 1), (0, r(0), r(-1), 1)], t);
        assert_eq!(g.specialize(false, true), s(&[(0, r(0), r(0), 2)], t));

        let h = s(
            &[(0, r(0), r(0), 1), (0, r(1), r(0), 1), (0, r(1), r(1), 1)],
            t,
        );
        assert_eq!(h.specialize(true, false), IntSeries::one(t));
    }

    #[test]
    fn equality_uses_common_window() {
        let a = s(
            &[(0, r(0), r(0), 1), (3, r(0), r(0), 7)],
            Truncation::int(3, 1),
        );
        let b = s(&[(0, r(0), r(0), 1)], Truncation::int(2, 1));
        assert_eq!(a, b);
        assert_eq!(a.truncation(), Truncation::int(3, 1));
        assert_eq!(a.add(&b).truncation(), Truncation::int(2, 1));
    }

    #[test]
    fn y_denominator_is_checked() {
        assert!(matches!(
            Exponent::new(0, r(0), rat(1, 3)),
            Err(SeriesError::YDenominator(_))
        ));
        assert!(matches!(
            Exponent::new(0, r(-1), r(0)),
            Err(SeriesError::NegativeQExponent(_))
        ));
    }

    #[test]
    fn p_coefficient_extracts_row() {
        let t = Truncation::int(3, 2);
        let f = s(
            &[
                (0, r(0), r(0), 1),
                (1, r(0), r(-2), 4),
                (1, r(1), r(1), 5),
                (2, r(0), r(0), 9),
            ],
            t,
        );
        let row = f.p_coefficient(1);
        assert_eq!(row, s(&[(0, r(0), r(-2), 4), (0, r(1), r(1), 5)], t));
    }

    #[test]
    fn div_exact_rejects_odd_coefficients() {
        let t = Truncation::int(1, 1);
        let f = s(&[(0, r(0), r(0), 4), (1, r(0), r(0), 3)], t);
        assert!(matches!(
            f.div_exact(2),
            Err(SeriesError::NotDivisible { .. })
        ));
        let g = s(&[(0, r(0), r(0), 4), (1, r(0), r(0), -6)], t);
        assert_eq!(
            g.div_exact(2).unwrap(),
            s(&[(0, r(0), r(0), 2), (1, r(0), r(0), -3)], t)
        );
    }
}
