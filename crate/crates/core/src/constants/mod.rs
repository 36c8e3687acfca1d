//! Analytic constants and the constants in the asymptotics of `N^tw(X)` and `N(X)`:
//!
//! `N^tw(X) ~ (QR/ζ(2))·X^(1/6)` and `N(X) ~ c₁X^(1/6) log X + c₂X^(1/6)`.

mod analytic;
mod area;
mod ell0;
mod kappa;
mod poly;

pub use analytic::{euler_gamma, zeta2, zeta_prime_2};
pub use area::{
    area_r_grid, area_r_grid_with, area_r_mc, area_r_mc_with, is_hit, McEstimate, BOX_A, BOX_AREA,
    BOX_B, GRID_MIN_RESOLUTION, HIT_SLACK, MC_MIN_SAMPLES,
};
pub use ell0::{compute_ell0, ell0_segment, Ell0Estimate, EPSILON, FIT_FROM};
pub use kappa::{compute_kappa, KappaReport};

use num_bigint::BigUint;

use crate::census::{count_from_records, enumerate_census};
use crate::error::Result;
use crate::multfun::{q_bounds, QInterval};

/// `(c₁, c₂)` with absolute error estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadingCoefficients {
    pub c1: f64,
    pub c1_error: f64,
    pub c2: f64,
    /// Error in `c₂` under the proved and conjectured `ℓ₀` tail models.
    pub c2_error_proved: f64,
    pub c2_error_conjectured: f64,
}

/// `c₁ = QR/(3ζ(2)²)` and `c₂ = (2/ζ(2)²)(ζ(2)ℓ₀ + QR(γ − 1 − 2ζ′(2)/ζ(2)))`.
///
/// `qr_error` and the `ell0_error_*` values are absolute errors in the inputs.
pub fn compute_c1_c2(
    qr: f64,
    qr_error: f64,
    ell0: f64,
    ell0_error_proved: f64,
    ell0_error_conjectured: f64,
) -> LeadingCoefficients {
    let z = zeta2();
    let z2 = z * z;
    let bracket = euler_gamma() - 1.0 - 2.0 * zeta_prime_2() / z;
    let c2_err = |e: f64| 2.0 / z2 * (z * e + qr_error * bracket.abs());
    LeadingCoefficients {
        c1: qr / (3.0 * z2),
        c1_error: qr_error / (3.0 * z2),
        c2: 2.0 / z2 * (z * ell0 + qr * bracket),
        c2_error_proved: c2_err(ell0_error_proved),
        c2_error_conjectured: c2_err(ell0_error_conjectured),
    }
}

/// Predicted `(N^tw(X), N(X))` from the leading terms.
pub fn predict_counts(x: f64, bundle: &ConstantsBundle) -> (f64, f64) {
    let x6 = libm::pow(x, 1.0 / 6.0);
    let tw = bundle.qr() * x6 / bundle.zeta2;
    let rat = bundle.c1 * x6 * libm::log(x) + bundle.c2 * x6;
    (tw, rat)
}

/// Inputs to [`compute_bundle`].
#[derive(Clone, Debug, PartialEq)]
pub struct BundleConfig {
    /// Primes up to this bound enter `Q` exactly.
    pub prime_bound: u64,
    pub mc_samples: u64,
    pub seed: u64,
    /// `U`: the census used for `ℓ₀` runs up to here.
    pub census_cutoff: BigUint,
}

/// Every constant with its error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsBundle {
    pub q: QInterval,
    pub r: McEstimate,
    pub kappa: KappaReport,
    pub ell0: Ell0Estimate,
    /// Number of twist-minimal curves found up to `U`.
    pub census_size: u64,
    pub c1: f64,
    pub c1_error: f64,
    pub c2: f64,
    pub c2_error_proved: f64,
    pub c2_error_conjectured: f64,
    pub zeta2: f64,
    pub zeta_prime_2: f64,
    pub euler_gamma: f64,
}

impl ConstantsBundle {
    /// `Q·R` with `Q` at the midpoint of its interval.
    pub fn qr(&self) -> f64 {
        self.q.midpoint() * self.r.estimate
    }

    /// One-sigma error in `Q·R`.
    pub fn qr_error(&self) -> f64 {
        self.q.midpoint() * self.r.std_error + self.r.estimate * self.q.width() / 2.0
    }
}

/// Computes `Q`, `R`, `κ`, `ℓ₀`, `c₁` and `c₂`.
pub fn compute_bundle(config: &BundleConfig) -> Result<ConstantsBundle> {
    let q = q_bounds(config.prime_bound)?;
    let r = area_r_mc(config.mc_samples, config.seed)?;
    let qr = q.midpoint() * r.estimate;
    let qr_error = q.midpoint() * r.std_error + r.estimate * q.width() / 2.0;
    let records = enumerate_census(&config.census_cutoff)?;
    let report = count_from_records(&records, &config.census_cutoff, qr);
    let ell0 = compute_ell0(
        &report.histogram,
        &config.census_cutoff,
        q.midpoint(),
        r.estimate,
    )?;
    let drift = ell0.qr_sensitivity * qr_error;
    let lc = compute_c1_c2(
        qr,
        qr_error,
        ell0.ell0,
        ell0.trunc_proved + drift,
        ell0.trunc_conjectured + drift,
    );
    Ok(ConstantsBundle {
        q,
        r,
        kappa: compute_kappa(),
        ell0,
        census_size: report.n_tw,
        c1: lc.c1,
        c1_error: lc.c1_error,
        c2: lc.c2,
        c2_error_proved: lc.c2_error_proved,
        c2_error_conjectured: lc.c2_error_conjectured,
        zeta2: zeta2(),
        zeta_prime_2: zeta_prime_2(),
        euler_gamma: euler_gamma(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: f64 = 17.4604052311;
    const R: f64 = 0.04316889;

    #[test]
    fn c1_from_reference_inputs() {
        let lc = compute_c1_c2(Q * R, 0.0, -1.62334, 0.0, 0.0);
        assert!((lc.c1 - 0.09285536).abs() < 5e-5);
        let z = zeta2();
        assert_eq!(lc.c1, Q * R / (3.0 * (z * z)));
    }

    #[test]
    fn c2_is_linear_in_ell0() {
        let a = compute_c1_c2(Q * R, 0.0, 0.0, 0.0, 0.0).c2;
        let b = compute_c1_c2(Q * R, 0.0, 1.0, 0.0, 0.0).c2;
        assert!((b - a - 2.0 / zeta2()).abs() < 1e-12);
    }

    #[test]
    fn small_bundle() {
        let cfg = BundleConfig {
            prime_bound: 1_000_000,
            mc_samples: 1_000_000,
            seed: 42,
            census_cutoff: BigUint::from(10u64.pow(18)),
        };
        let b = compute_bundle(&cfg).unwrap();
        assert_eq!(b, compute_bundle(&cfg).unwrap());
        let z = b.zeta2;
        assert_eq!(b.c1, b.qr() / (3.0 * (z * z)));
        let (t1, r1) = predict_counts(1e20, &b);
        let (t2, r2) = predict_counts(1e21, &b);
        assert!(t2 > t1 && r2 > r1);
        let pi = core::f64::consts::PI;
        assert!((b.zeta2 - pi * pi / 6.0).abs() < 1e-15);
    }
}
