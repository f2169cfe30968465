//! Odd Jacobi theta function and the elliptic-genus building block
//!
//! ```text
//! Φ(λ_g, λ_h, z, τ, x) = θ(x/2πi + λ_g - τλ_h - z) / θ(x/2πi + λ_g - τλ_h) · e^(2πi z λ_h)
//! ```
//!
//! together with a seeded numerical check of its transformation laws.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::series::{rat, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThetaError {
    #[error("Im τ = {0} must be positive")]
    NotInUpperHalfPlane(f64),
    #[error("denominator θ vanishes to within {0}")]
    Pole(f64),
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest `Im τ` accepted by [`theta`].
pub const MIN_IM_TAU: f64 = 0.05;

/// Denominators smaller than this make a sample point a pole.
pub const POLE_THRESHOLD: f64 = 1e-6;

fn theta_term(n: i64, z: Complex64, tau: Complex64) -> Complex64 {
    let k = n as f64 + 0.5;
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * (PI * I * tau * k * k + 2.0 * PI * I * z * k).exp()
}

/// `θ(z, τ) = -i Σ_n (-1)^n e^(πiτ(n+1/2)^2) e^(2πiz(n+1/2))`.
///
/// Terms are added outward from `n = 0, -1` in both directions until three
/// consecutive terms on each side fall below `tol · max(1, |sum|)`.
pub fn theta(z: Complex64, tau: Complex64, tol: f64) -> Result<Complex64, ThetaError> {
    if tau.im < MIN_IM_TAU {
        return Err(ThetaError::NotInUpperHalfPlane(tau.im));
    }
    let mut sum = theta_term(0, z, tau) + theta_term(-1, z, tau);
    let (mut up, mut down) = (1i64, -2i64);
    let (mut quiet_up, mut quiet_down) = (0, 0);
    while quiet_up < 3 || quiet_down < 3 {
        let a = theta_term(up, z, tau);
        let b = theta_term(down, z, tau);
        sum += a + b;
        let scale = tol * sum.norm().max(1.0);
        quiet_up = if a.norm() < scale { quiet_up + 1 } else { 0 };
        quiet_down = if b.norm() < scale { quiet_down + 1 } else { 0 };
        up += 1;
        down -= 1;
    }
    Ok(-I * sum)
}

/// Plain sum of the theta series over `n ∈ [-terms/2, terms/2)`, ascending.
pub fn theta_direct(z: Complex64, tau: Complex64, terms: i64) -> Complex64 {
    let half = terms / 2;
    -I * (-half..terms - half)
        .map(|n| theta_term(n, z, tau))
        .sum::<Complex64>()
}

/// Product form `2 q^(1/8) sin(πz) Π (1 - q^n)(1 - q^n w)(1 - q^n / w)` with
/// `q = e^(2πiτ)`, `w = e^(2πiz)`.
pub fn theta_product(z: Complex64, tau: Complex64, factors: u32) -> Complex64 {
    let q = (2.0 * PI * I * tau).exp();
    let w = (2.0 * PI * I * z).exp();
    let mut acc = 2.0 * (PI * I * tau / 4.0).exp() * (PI * z).sin();
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 0..factors {
        qn *= q;
        acc *= (1.0 - qn) * (1.0 - qn * w) * (1.0 - qn / w);
    }
    acc
}

/// Arguments of `Φ`; the `λ` are taken in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularPoint {
    pub z: Complex64,
    pub tau: Complex64,
    pub x: Complex64,
    pub lambda_g: Rational,
    pub lambda_h: Rational,
}

fn reduce(l: Rational) -> Rational {
    l - l.floor()
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl ModularPoint {
    pub fn new(
        z: Complex64,
        tau: Complex64,
        x: Complex64,
        lambda_g: Rational,
        lambda_h: Rational,
    ) -> Self {
        ModularPoint {
            z,
            tau,
            x,
            lambda_g: reduce(lambda_g),
            lambda_h: reduce(lambda_h),
        }
    }
}

pub fn phi(pt: &ModularPoint, tol: f64) -> Result<Complex64, ThetaError> {
    let u = pt.x / (2.0 * PI * I) + to_f64(pt.lambda_g) - pt.tau * to_f64(pt.lambda_h);
    let den = theta(u, pt.tau, tol)?;
    if den.norm() <= POLE_THRESHOLD {
        return Err(ThetaError::Pole(POLE_THRESHOLD));
    }
    let num = theta(u - pt.z, pt.tau, tol)?;
    Ok(num / den * (2.0 * PI * I * pt.z * to_f64(pt.lambda_h)).exp())
}

/// The transformation laws checked by [`check_identities`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `θ(z + 1) = -θ(z)`
    ThetaShift,
    /// `θ(z + τ) = -e^(-πiτ - 2πiz) θ(z)`
    ThetaQuasiPeriod,
    /// `θ` against its product form.
    ThetaProduct,
    /// `Φ(z + 1) = -e^(2πiλ_h) Φ(z)`
    ZShift,
    /// `Φ(g, h; τ + 1) = Φ(gh⁻¹, h; τ)`
    TauShift,
    /// `Φ(z + nτ) = (-1)^n e^(-2πinz - πin²τ) e^(nx + 2πinλ_g) Φ(z)`
    Elliptic(u32),
    /// `Φ(g, h; z/τ, -1/τ, x/τ) = e^(πiz²/τ - zx/τ) Φ(h, g⁻¹; z, τ, x)`
    Inversion,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::ThetaShift,
        Identity::ThetaQuasiPeriod,
        Identity::ThetaProduct,
        Identity::ZShift,
        Identity::TauShift,
        Identity::Elliptic(1),
        Identity::Elliptic(2),
        Identity::Inversion,
    ];

    pub fn name(&self) -> String {
        match self {
            Identity::ThetaShift => "theta-z+1".into(),
            Identity::ThetaQuasiPeriod => "theta-z+tau".into(),
            Identity::ThetaProduct => "theta-product".into(),
            Identity::ZShift => "phi-z+1".into(),
            Identity::TauShift => "phi-tau+1".into(),
            Identity::Elliptic(n) => format!("phi-z+{n}tau"),
            Identity::Inversion => "phi-inversion".into(),
        }
    }

    /// Tolerance the check is held to, given the requested one for `Φ`.
    pub fn tolerance(&self, phi_tol: f64) -> f64 {
        match self {
            Identity::ThetaShift | Identity::ThetaQuasiPeriod | Identity::ThetaProduct => 1e-10,
            _ => phi_tol,
        }
    }

    fn sides(&self, pt: &ModularPoint, tol: f64) -> Result<(Complex64, Complex64), ThetaError> {
        let two_pi_i = 2.0 * PI * I;
        let (z, tau, x) = (pt.z, pt.tau, pt.x);
        let (lg, lh) = (to_f64(pt.lambda_g), to_f64(pt.lambda_h));
        match *self {
            Identity::ThetaShift => Ok((theta(z + 1.0, tau, tol)?, -theta(z, tau, tol)?)),
            Identity::ThetaQuasiPeriod => Ok((
                theta(z + tau, tau, tol)?,
                -(-PI * I * tau - two_pi_i * z).exp() * theta(z, tau, tol)?,
            )),
            Identity::ThetaProduct => Ok((theta(z, tau, tol)?, theta_product(z, tau, 60))),
            Identity::ZShift => Ok((
                phi(&ModularPoint { z: z + 1.0, ..*pt }, tol)?,
                -(two_pi_i * lh).exp() * phi(pt, tol)?,
            )),
            Identity::TauShift => Ok((
                phi(
                    &ModularPoint {
                        tau: tau + 1.0,
                        ..*pt
                    },
                    tol,
                )?,
                phi(
                    &ModularPoint::new(z, tau, x, pt.lambda_g - pt.lambda_h, pt.lambda_h),
                    tol,
                )?,
            )),
            Identity::Elliptic(n) => {
                let nf = n as f64;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let factor = sign
                    * (-two_pi_i * nf * z - PI * I * nf * nf * tau).exp()
                    * (nf * x + two_pi_i * nf * lg).exp();
                Ok((
                    phi(
                        &ModularPoint {
                            z: z + nf * tau,
                            ..*pt
                        },
                        tol,
                    )?,
                    factor * phi(pt, tol)?,
                ))
            }
            Identity::Inversion => {
                let lhs = phi(
                    &ModularPoint {
                        z: z / tau,
                        tau: -1.0 / tau,
                        x: x / tau,
                        ..*pt
                    },
                    tol,
                )?;
                let swapped = ModularPoint::new(z, tau, x, pt.lambda_h, -pt.lambda_g);
                let factor = (PI * I * z * z / tau - z * x / tau).exp();
                Ok((lhs, factor * phi(&swapped, tol)?))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityResult {
    pub name: String,
    pub samples: usize,
    pub rejected: usize,
    pub max_rel_error: f64,
    pub tolerance: f64,
}

impl IdentityResult {
    pub fn passes(&self) -> bool {
        self.max_rel_error < self.tolerance
    }
}

/// Eigenvalue fractions the sampler draws from.
pub fn sample_lambdas() -> [Rational; 6] {
    [
        rat(0, 1),
        rat(1, 2),
        rat(1, 3),
        rat(2, 3),
        rat(1, 4),
        rat(3, 4),
    ]
}

/// Seeded sample point: `Re τ ∈ [-1/2, 1/2]`, `Im τ ∈ [0.6, 1.4]`,
/// `Re z ∈ [-1/2, 1/2]`, `Im z ∈ [-0.3, 0.3]`, `x` in the unit square.
pub fn sample_point(rng: &mut impl Rng) -> ModularPoint {
    let lambdas = sample_lambdas();
    let tau = Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(0.6..=1.4));
    let z = Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(-0.3..=0.3));
    let x = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    let lg = *lambdas.choose(rng).expect("nonempty");
    let lh = *lambdas.choose(rng).expect("nonempty");
    ModularPoint::new(z, tau, x, lg, lh)
}

fn relative_error(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Evaluates every [`Identity`] at `samples` accepted points each. Points
/// where a denominator θ is a pole are redrawn.
pub fn check_identities(samples: usize, seed: u64, tol: f64) -> Vec<IdentityResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // the summation cutoff sits well below the requested tolerance
    let sum_tol = (tol * 1e-4).min(1e-14);
    Identity::ALL
        .iter()
        .map(|identity| {
            let mut max_rel_error: f64 = 0.0;
            let mut rejected = 0;
            let mut accepted = 0;
            while accepted < samples {
                let pt = sample_point(&mut rng);
                match identity.sides(&pt, sum_tol) {
                    Ok((lhs, rhs)) => {
                        max_rel_error = max_rel_error.max(relative_error(lhs, rhs));
                        accepted += 1;
                    }
                    Err(_) => rejected += 1,
                }
            }
            IdentityResult {
                name: identity.name(),
                samples,
                rejected,
                max_rel_error,
                tolerance: identity.tolerance(tol),
            }
        })
        .collect()
}
