//! Orbifold Euler characteristics of `X^N / S_N` with discrete torsion,
//! by direct enumeration of commuting pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::genus::GenusTable;
use crate::series::{Exponent, SeriesError, Truncation};
use crate::spin::{centralizer_elements, conjugacy_classes, factorial, DeltaProvider, SpinError};
use crate::sym::direct_orbifold_series;

/// `(1/N!) Σ_{gh = hg} δ(g, h) e_x^{#orbits of <g, h>}`, summed over class
/// representatives `g` weighted by class size.
pub fn euler_torsion(
    n: usize,
    e_x: i64,
    provider: DeltaProvider,
) -> Result<BigRational, SpinError> {
    let classes = conjugacy_classes(n);
    let partial: Vec<BigInt> = classes
        .par_iter()
        .map(|ct| {
            let g = ct.representative();
            let mut sum = BigInt::from(0);
            for h in centralizer_elements(&g) {
                let d = provider.delta(&g, &h)?;
                sum += BigInt::from(d) * BigInt::from(e_x).pow(g.joint_orbit_count(&h) as u32);
            }
            Ok(sum * ct.class_size())
        })
        .collect::<Result<_, SpinError>>()?;
    let total: BigInt = partial.into_iter().sum();
    Ok(BigRational::new(total, factorial(n)))
}

#[derive(Clone, Debug)]
pub struct EulerCheck {
    pub n: usize,
    pub e_x: BigInt,
    /// `[p^N]` of the twisted direct series at `q = 0, y = 1`.
    pub series: BigInt,
    pub rules: BigRational,
    pub oracle: BigRational,
    pub trivial: BigRational,
}

impl EulerCheck {
    pub fn rules_match(&self) -> bool {
        self.rules == BigRational::from_integer(self.series.clone())
    }

    pub fn oracle_match(&self) -> bool {
        self.oracle == BigRational::from_integer(self.series.clone())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EulerError {
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("Euler number {0} does not fit in i64")]
    Overflow(BigInt),
}

/// Compares the commuting-pair count with the twisted series for each
/// `N <= n_max`, using `e(X)` of the table.
pub fn euler_crosscheck(t: &GenusTable, n_max: usize) -> Result<Vec<EulerCheck>, EulerError> {
    let e = t.euler_number();
    let e_x: i64 = (&e)
        .try_into()
        .map_err(|_| EulerError::Overflow(e.clone()))?;
    let series =
        direct_orbifold_series(t, true, Truncation::int(n_max as u32, 0))?.specialize(true, true);
    (0..=n_max)
        .map(|n| {
            Ok(EulerCheck {
                n,
                e_x: e.clone(),
                series: series.coefficient_at(&Exponent::int(n as u32, 0, 0)),
                rules: euler_torsion(n, e_x, DeltaProvider::Rules)?,
                oracle: euler_torsion(n, e_x, DeltaProvider::Oracle)?,
                trivial: euler_torsion(n, e_x, DeltaProvider::Trivial)?,
            })
        })
        .collect()
}
