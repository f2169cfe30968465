//! Twisted-sector traces and both sides of the (twisted) DMVV identity for
//! symmetric products.
//!
//! The direct side enumerates partitions of `N` and multiplies Sym and Λ
//! coefficients sector by sector. The product side expands the infinite
//! product formulas straight from the table entries `c(m, l)`. The two
//! share only the series arithmetic.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::genus::GenusTable;
use crate::series::{
    Coefficient, Exponent, IntSeries, ProductFactor, QScaling, Rational, Series, SeriesError,
    Truncation,
};
use crate::spin::{all_permutations, factorial, partitions, CycleType};

/// `T_j` and, for even `j`, its half-integer companion `T_j^-`.
#[derive(Clone, Debug)]
pub struct SectorSeries {
    pub j: u32,
    pub plus: IntSeries,
    pub minus: Option<IntSeries>,
}

/// `T_j = Σ c(mj, l) q^m y^l` and `T_j^- = Σ c((m - 1/2) j, l) q^(m-1/2) y^l`
/// on the q window of `trunc` (the p window is ignored).
pub fn sector_series(
    t: &GenusTable,
    j: u32,
    trunc: Truncation,
) -> Result<SectorSeries, SeriesError> {
    assert!(j >= 1, "sector length must be positive");
    let window = Truncation::new(0, trunc.q_max);
    let jr = Rational::from_integer(j as i64);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for ((m, l), c) in t.entries() {
        let q = Rational::from_integer(*m) / jr;
        if q.is_integer() {
            plus.push((Exponent::new(0, q, *l)?, c.clone()));
        } else if *q.denom() == 2 {
            minus.push((Exponent::new(0, q, *l)?, c.clone()));
        }
    }
    Ok(SectorSeries {
        j,
        plus: IntSeries::from_terms(plus, window)?,
        minus: if j.is_multiple_of(2) {
            Some(IntSeries::from_terms(minus, window)?)
        } else {
            None
        },
    })
}

#[derive(Clone, Debug)]
pub struct AverageReport {
    pub j: u32,
    pub signed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub compared: usize,
}

impl AverageReport {
    pub fn matches(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

/// Relative tolerance of [`sector_average_numeric`].
pub const AVERAGE_TOLERANCE: f64 = 1e-9;

/// Evaluates `(1/j) Σ_r s^r Ell(q^(1/j) ξ^r, y)` with `ξ = e^(2πi/j)` and
/// `s = -1` if `signed`, else `1`, and compares it with [`sector_series`].
pub fn sector_average_numeric(
    t: &GenusTable,
    j: u32,
    signed: bool,
    trunc: Truncation,
) -> Result<AverageReport, SeriesError> {
    assert!(j >= 1, "sector length must be positive");
    assert!(
        !signed || j.is_multiple_of(2),
        "the signed average needs even j"
    );
    let wide = Truncation::new(0, trunc.q_max * Rational::from_integer(j as i64));
    let ell: Series<Complex64> = t.to_series(wide)?.map_coefficients(Complex64::from_integer);
    let scaled = ell
        .with_q_denominator(2 * j as i64)?
        .substitute_q_power(j, QScaling::Divide)?;
    let window = scaled.truncation();
    let mut total = Series::<Complex64>::zero(window).with_q_denominator(2 * j as i64)?;
    for r in 0..j {
        let sign = if signed && r % 2 == 1 { -1.0 } else { 1.0 };
        let terms = scaled.terms().map(|(e, c)| {
            // q^(m/j) picks up ξ^(r m)
            let m = (e.q * Rational::from_integer(j as i64)).to_integer();
            let phase = Complex64::from_polar(sign, 2.0 * PI * (r as f64) * (m as f64) / j as f64);
            (*e, c * phase)
        });
        total = total.add(&Series::from_terms_with_bound(terms, window, 2 * j as i64)?);
    }
    let average = total.map_coefficients(|c| c / j as f64);
    let sectors = sector_series(t, j, trunc)?;
    let expected = if signed {
        sectors.minus.expect("even j")
    } else {
        sectors.plus
    };
    let expected = expected
        .map_coefficients(Complex64::from_integer)
        .with_q_denominator(2 * j as i64)?;
    let mut max_error: f64 = 0.0;
    let mut compared = 0;
    let mut exponents: Vec<Exponent> = expected.terms().map(|(e, _)| *e).collect();
    exponents.extend(average.terms().map(|(e, _)| *e));
    exponents.sort();
    exponents.dedup();
    for e in exponents {
        if !expected.truncation().contains(&e) {
            continue;
        }
        let want = expected.coefficient_at(&e);
        let got = average.coefficient_at(&e);
        max_error = max_error.max((got - want).norm() / want.norm().max(1.0));
        compared += 1;
    }
    Ok(AverageReport {
        j,
        signed,
        max_error,
        tolerance: AVERAGE_TOLERANCE,
        compared,
    })
}

fn generating(
    f: &IntSeries,
    j: u32,
    sign: i8,
    flip: bool,
    trunc: Truncation,
) -> Result<IntSeries, SeriesError> {
    let factors: Vec<ProductFactor> = f
        .terms()
        .map(|(e, d)| {
            let monomial = Exponent { p: j, ..*e };
            ProductFactor::new(sign, monomial, if flip { -d.clone() } else { d.clone() })
        })
        .collect();
    IntSeries::expand_product(&factors, trunc, f.q_denominator_bound())
}

/// `Π (1 - p^j q^m y^l)^(-d(m,l))` for `f = Σ d(m,l) q^m y^l`.
pub fn sym_generating(f: &IntSeries, j: u32, trunc: Truncation) -> Result<IntSeries, SeriesError> {
    generating(f, j, -1, true, trunc)
}

/// `Π (1 - t_sign p^j q^m y^l)^(d(m,l))`. `t_sign = -1` is the exterior
/// algebra graded by `V` itself; `t_sign = 1` shifts the parity of every
/// factor.
pub fn wedge_generating(
    f: &IntSeries,
    j: u32,
    t_sign: i8,
    trunc: Truncation,
) -> Result<IntSeries, SeriesError> {
    generating(f, j, -t_sign, false, trunc)
}

/// Basis vector of a graded super vector space: parity and `y^a q^b` weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperVector {
    pub odd: bool,
    pub y: Rational,
    pub q: Rational,
}

impl SuperVector {
    pub fn new(odd: bool, y: Rational, q: Rational) -> Self {
        SuperVector { odd, y, q }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Power {
    Sym,
    Wedge,
}

/// Largest space and power the explicit construction accepts.
pub const BRUTE_MAX_DIM: usize = 6;
pub const BRUTE_MAX_POWER: usize = 4;

/// Superdimension series `Σ (-1)^|v| y^a q^b` of a space.
pub fn superdimension(space: &[SuperVector], trunc: Truncation) -> Result<IntSeries, SeriesError> {
    let terms = space
        .iter()
        .map(|v| {
            Ok((
                Exponent::new(0, v.q, v.y)?,
                BigInt::from(if v.odd { -1 } else { 1 }),
            ))
        })
        .collect::<Result<Vec<_>, SeriesError>>()?;
    IntSeries::from_terms(terms, trunc)
}

/// `Str(y^A q^B)` on the (super)symmetric or exterior `n`th power of
/// `space`, computed as the supertrace of the signed symmetrizer on
/// `V^{⊗n}` with Koszul signs. Returns `None` beyond the size bounds.
pub fn brute_supertrace_symwedge(
    space: &[SuperVector],
    n: usize,
    power: Power,
    trunc: Truncation,
) -> Result<Option<IntSeries>, SeriesError> {
    if space.len() > BRUTE_MAX_DIM || n > BRUTE_MAX_POWER {
        return Ok(None);
    }
    let perms = all_permutations(n);
    let dim = space.len();
    let mut acc: Series<BigRational> = Series::zero(trunc);
    let mut tuple = vec![0usize; n];
    let count = dim.pow(n as u32);
    for index in 0..count {
        let mut rest = index;
        for slot in tuple.iter_mut() {
            *slot = rest % dim;
            rest /= dim;
        }
        let parity = tuple.iter().filter(|&&i| space[i].odd).count() % 2;
        let mut diagonal: i64 = 0;
        for sigma in &perms {
            // σ moves the factor in slot k to slot σ(k)
            if (0..n).any(|k| tuple[sigma.apply(k)] != tuple[k]) {
                continue;
            }
            let mut sign = 1;
            for a in 0..n {
                for b in a + 1..n {
                    if sigma.apply(a) > sigma.apply(b) && space[tuple[a]].odd && space[tuple[b]].odd
                    {
                        sign = -sign;
                    }
                }
            }
            if power == Power::Wedge {
                sign *= sigma.sign() as i64;
            }
            diagonal += sign;
        }
        if diagonal == 0 {
            continue;
        }
        if parity == 1 {
            diagonal = -diagonal;
        }
        let (y, q) = tuple
            .iter()
            .fold((Rational::zero(), Rational::zero()), |(y, q), &i| {
                (y + space[i].y, q + space[i].q)
            });
        acc = acc.add(&Series::monomial(
            Exponent::new(0, q, y)?,
            BigRational::from_integer(BigInt::from(diagonal)),
            trunc,
        )?);
    }
    let order = factorial(n);
    let mut terms = Vec::new();
    for (e, c) in acc.terms() {
        let c = c / BigRational::from_integer(order.clone());
        assert!(c.is_integer(), "supertrace of a projector is integral");
        terms.push((*e, c.to_integer()));
    }
    Ok(Some(IntSeries::from_terms(terms, trunc)?))
}

/// `[t^a]` of the sector generating series, `a = 0..=a_max`.
fn coefficients(series: &IntSeries, a_max: u32) -> Vec<IntSeries> {
    (0..=a_max).map(|a| series.p_coefficient(a)).collect()
}

/// `Σ_N p^N Σ_{λ ⊢ N} Π_j [t^{a_j}] (Sym or Λ)_t(T_j)`, one partition at a
/// time. Twisted: even `j` use `Λ_t(T_j)` when `λ` has an odd number of
/// even parts and `Λ_t(T_j^-)` otherwise, with the exterior algebra graded
/// by the sector itself.
pub fn direct_orbifold_series(
    t: &GenusTable,
    twisted: bool,
    trunc: Truncation,
) -> Result<IntSeries, SeriesError> {
    let p_max = trunc.p_max;
    let qy = Truncation::new(0, trunc.q_max);
    let mut sym = vec![Vec::new(); p_max as usize + 1];
    let mut wedge_plus = vec![Vec::new(); p_max as usize + 1];
    let mut wedge_minus = vec![Vec::new(); p_max as usize + 1];
    for j in 1..=p_max {
        let sectors = sector_series(t, j, trunc)?;
        let a_max = p_max / j;
        let window = Truncation::new(a_max, trunc.q_max);
        sym[j as usize] = coefficients(&sym_generating(&sectors.plus, 1, window)?, a_max);
        if twisted && j % 2 == 0 {
            wedge_plus[j as usize] =
                coefficients(&wedge_generating(&sectors.plus, 1, -1, window)?, a_max);
            let minus = sectors.minus.expect("even j");
            wedge_minus[j as usize] =
                coefficients(&wedge_generating(&minus, 1, -1, window)?, a_max);
        }
    }
    let mut total = IntSeries::zero(trunc);
    for n in 0..=p_max as usize {
        for parts in partitions(n) {
            let ct = CycleType::from_partition(&parts);
            let odd_class = ct.parity() == 1;
            let mut term = IntSeries::one(qy);
            for (j, a) in ct.parts() {
                let factor = if twisted && j % 2 == 0 {
                    if odd_class {
                        &wedge_plus[j][a]
                    } else {
                        &wedge_minus[j][a]
                    }
                } else {
                    &sym[j][a]
                };
                term = term.mul(factor);
                if term.is_zero() {
                    break;
                }
            }
            let shifted = IntSeries::from_terms(
                term.terms()
                    .map(|(e, c)| (Exponent { p: n as u32, ..*e }, c.clone())),
                trunc,
            )?;
            total = total.add(&shifted);
        }
    }
    Ok(total)
}

/// The four products whose half-sum is the twisted generating function.
#[derive(Clone, Debug)]
pub struct FourBlocks {
    pub pp: IntSeries,
    pub pm: IntSeries,
    pub mp: IntSeries,
    pub mm: IntSeries,
}

impl FourBlocks {
    pub fn half_sum(&self) -> Result<IntSeries, SeriesError> {
        self.pp
            .add(&self.pm)
            .add(&self.mp)
            .add(&self.mm)
            .div_exact(2)
    }
}

fn q_range(q_max: Rational) -> i64 {
    q_max.floor().to_integer()
}

/// Factors `(1 - p^n q^m y^l)^(-c(nm, l))` for the given `n`.
fn untwisted_factors(
    t: &GenusTable,
    ns: impl Iterator<Item = u32>,
    trunc: Truncation,
) -> Vec<ProductFactor> {
    let ls = t.l_support();
    let mut out = Vec::new();
    for n in ns {
        for m in 0..=q_range(trunc.q_max) {
            for l in &ls {
                let c = t.get(n as i64 * m, *l);
                if !Zero::is_zero(&c) {
                    let e =
                        Exponent::new(n, Rational::from_integer(m), *l).expect("valid exponent");
                    out.push(ProductFactor::new(-1, e, -c));
                }
            }
        }
    }
    out
}

/// Factors `(1 + sign p^n q^q y^l)^(c(nq, l))` over even `n`, with `q`
/// integral (`half = false`, `m >= 0`) or `m - 1/2` for `m >= 1`.
fn even_factors(t: &GenusTable, sign: i8, half: bool, trunc: Truncation) -> Vec<ProductFactor> {
    let ls = t.l_support();
    let mut out = Vec::new();
    for n in (2..=trunc.p_max).step_by(2) {
        let mut m = if half { 1 } else { 0 };
        loop {
            let q = if half {
                Rational::new(2 * m - 1, 2)
            } else {
                Rational::from_integer(m)
            };
            if q > trunc.q_max {
                break;
            }
            let nq = q * Rational::from_integer(n as i64);
            for l in &ls {
                let c = t.get(nq.to_integer(), *l);
                if !Zero::is_zero(&c) {
                    let e = Exponent::new(n, q, *l).expect("valid exponent");
                    out.push(ProductFactor::new(sign, e, c));
                }
            }
            m += 1;
        }
    }
    out
}

/// `Z_{±±}` expanded directly from the table.
pub fn four_blocks(t: &GenusTable, trunc: Truncation) -> Result<FourBlocks, SeriesError> {
    let odd = untwisted_factors(t, (1..=trunc.p_max).step_by(2), trunc);
    let base = IntSeries::expand_product(&odd, trunc, 2)?;
    let block = |sign: i8, half: bool| -> Result<IntSeries, SeriesError> {
        Ok(base.mul(&IntSeries::expand_product(
            &even_factors(t, sign, half, trunc),
            trunc,
            2,
        )?))
    };
    Ok(FourBlocks {
        pp: block(1, true)?,
        pm: block(-1, true)?,
        mp: block(1, false)?,
        mm: block(-1, false)?.neg(),
    })
}

/// `Π_{n>0, m, l} (1 - p^n q^m y^l)^(-c(nm, l))`, or the half-sum of the
/// four blocks when `twisted`.
pub fn product_formula_series(
    t: &GenusTable,
    twisted: bool,
    trunc: Truncation,
) -> Result<IntSeries, SeriesError> {
    if twisted {
        four_blocks(t, trunc)?.half_sum()
    } else {
        IntSeries::expand_product(&untwisted_factors(t, 1..=trunc.p_max, trunc), trunc, 2)
    }
}

#[derive(Clone, Debug)]
pub struct DmvvReport {
    pub twisted: bool,
    pub trunc: Truncation,
    pub direct: IntSeries,
    pub product: IntSeries,
    pub differences: Vec<(Exponent, BigInt, BigInt)>,
}

impl DmvvReport {
    pub fn matches(&self) -> bool {
        self.differences.is_empty()
    }

    /// `[p^n]` of the direct side at `q = 0, y = 1`.
    pub fn euler_coefficients(&self) -> Vec<BigInt> {
        let flat = self.direct.specialize(true, true);
        (0..=self.trunc.p_max)
            .map(|n| flat.coefficient_at(&Exponent::int(n, 0, 0)))
            .collect()
    }
}

pub fn verify_dmvv(
    t: &GenusTable,
    twisted: bool,
    trunc: Truncation,
) -> Result<DmvvReport, SeriesError> {
    let direct = direct_orbifold_series(t, twisted, trunc)?;
    let product = product_formula_series(t, twisted, trunc)?;
    let differences = direct.differences(&product);
    Ok(DmvvReport {
        twisted,
        trunc,
        direct,
        product,
        differences,
    })
}
