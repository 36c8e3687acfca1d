//! The constant term `ℓ₀` of the Laurent expansion of the twist-height
//! zeta function at `s = 1/6`:
//!
//! `ℓ₀ = Kγ + (1/6)∫₁^∞ (N^tw(u) − K⌊u^(1/6)⌋) u^(−7/6) du`, `K = QR/ζ(2)`.
//!
//! Both step functions jump at known points, so the integral over `[1, U]`
//! is a finite sum: a unit jump at `t` contributes `t^(−1/6) − U^(−1/6)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::analytic::{euler_gamma, zeta2};
use crate::census::to_f64;
use crate::error::{below_minimum, Result};

/// `ε` in the conjectured `u^(1/12 + ε)` error model.
pub const EPSILON: f64 = 1e-4;
/// Residuals are fitted from this `u` on; below it `log u` is too small
/// for the proved model to be meaningful.
pub const FIT_FROM: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ell0Estimate {
    pub ell0: f64,
    /// `U` as a float.
    pub cutoff: f64,
    /// Empirical `max |D(u)|/(u^(2/15) log^(17/5) u)` over `[64, U]`, where
    /// `D(u) = N^tw(u) − K⌊u^(1/6)⌋`.
    pub m_proved: f64,
    /// Empirical `max |D(u)|/u^(1/12 + ε)` over `[64, U]`.
    pub m_conjectured: f64,
    /// Tail bound `(1/6)∫_U^∞ M u^(2/15 − 7/6) log^4 u du`, empirical `M`.
    pub trunc_proved: f64,
    /// Tail bound `(1/6)∫_U^∞ M u^(1/12 + ε − 7/6) du`, empirical `M`.
    pub trunc_conjectured: f64,
    /// Change in `ℓ₀` per unit error in `QR`: `log U/(6ζ(2))`.
    pub qr_sensitivity: f64,
}

/// `(1/6)∫_lo^hi (N^tw(u) − k⌊u^(1/6)⌋) u^(−7/6) du` for `1 ≤ lo ≤ hi`,
/// where `N^tw` counts the `heights` (each with multiplicity).
///
/// Heights above `hi` are ignored. Segments add up:
/// `segment(lo, mid) + segment(mid, hi) = segment(lo, hi)`.
pub fn ell0_segment(heights: &BTreeMap<BigUint, u64>, k: f64, lo: &BigUint, hi: &BigUint) -> f64 {
    let lo_f = to_f64(lo);
    let hi_f = to_f64(hi);
    let h6 = libm::pow(hi_f, -1.0 / 6.0);
    let l6 = libm::pow(lo_f, -1.0 / 6.0);
    let mut s = 0.0;
    for (t, &n) in heights.range(..=hi.clone()) {
        let w = if t <= lo {
            l6
        } else {
            libm::pow(to_f64(t), -1.0 / 6.0)
        };
        s += n as f64 * (w - h6);
    }
    // sixth powers j⁶ ≤ hi
    let top = hi.nth_root(6).to_u64().expect("sixth root fits");
    let below = lo.nth_root(6).to_u64().expect("sixth root fits");
    let mut f = below as f64 * (l6 - h6);
    for j in (below + 1)..=top {
        f += 1.0 / j as f64 - h6;
    }
    s - k * f
}

fn fit(heights: &BTreeMap<BigUint, u64>, k: f64, cutoff: f64) -> (f64, f64) {
    // merged jump points (position, ΔN^tw, Δ⌊u^(1/6)⌋)
    let mut events: Vec<(f64, u64, u64)> = heights
        .iter()
        .map(|(t, &n)| (to_f64(t), n, 0))
        .filter(|e| e.0 <= cutoff)
        .collect();
    let mut j = 1u64;
    while libm::pow(j as f64, 6.0) <= cutoff {
        events.push((libm::pow(j as f64, 6.0), 0, 1));
        j += 1;
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));
    let proved = |u: f64| libm::pow(u, 2.0 / 15.0) * libm::pow(libm::log(u), 17.0 / 5.0);
    let conj = |u: f64| libm::pow(u, 1.0 / 12.0 + EPSILON);
    let (mut n, mut f) = (0u64, 0u64);
    let (mut m1, mut m2) = (0.0f64, 0.0f64);
    for (idx, &(u, dn, df)) in events.iter().enumerate() {
        n += dn;
        f += df;
        let end = events.get(idx + 1).map_or(cutoff, |e| e.0);
        if end < FIT_FROM {
            continue;
        }
        let d = (n as f64 - k * f as f64).abs();
        // D is constant on [u, end) and both weights increase
        let start = u.max(FIT_FROM);
        m1 = m1.max(d / proved(start));
        m2 = m2.max(d / conj(start));
    }
    (m1, m2)
}

/// `ℓ₀` from a twist-height histogram complete up to `cutoff`.
///
/// Rejects an empty histogram.
pub fn compute_ell0(
    heights: &BTreeMap<BigUint, u64>,
    cutoff: &BigUint,
    q: f64,
    r: f64,
) -> Result<Ell0Estimate> {
    if heights.is_empty() {
        return Err(below_minimum("histogram size", 0, 1));
    }
    if *cutoff < BigUint::from(1u32) {
        return Err(below_minimum("U", cutoff, 1));
    }
    let z2 = zeta2();
    let k = q * r / z2;
    let ell0 = k * euler_gamma() + ell0_segment(heights, k, &BigUint::from(1u32), cutoff);
    let u = to_f64(cutoff);
    let l = libm::log(u);
    let (m1, m2) = fit(heights, k, u);
    let poly = (((l + 120.0) * l + 10800.0) * l + 648000.0) * l + 19440000.0;
    let trunc_proved = 30.0 * m1 * libm::pow(u, -1.0 / 30.0) * poly / 6.0;
    let trunc_conjectured = m2 * libm::pow(u, EPSILON - 1.0 / 12.0) / (1.0 / 12.0 - EPSILON) / 6.0;
    Ok(Ell0Estimate {
        ell0,
        cutoff: u,
        m_proved: m1,
        m_conjectured: m2,
        trunc_proved,
        trunc_conjectured,
        qr_sensitivity: l / (6.0 * z2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{count_twist, enumerate_census};

    const Q: f64 = 17.4604052311;
    const R: f64 = 0.04316889;

    fn hist(x: u64) -> BTreeMap<BigUint, u64> {
        count_twist(&BigUint::from(x), Q * R).unwrap().histogram
    }

    /// Midpoint-rule quadrature of the same integral, for comparison.
    fn quadrature(h: &BTreeMap<BigUint, u64>, k: f64, lo: f64, hi: f64) -> f64 {
        let ts: Vec<f64> = h
            .iter()
            .flat_map(|(t, &n)| core::iter::repeat_n(to_f64(t), n as usize))
            .collect();
        // substitute u = v⁶: (1/6)∫ g(u) u^(−7/6) du = ∫ g(v⁶) v^(−2) dv
        let (vl, vh) = (libm::pow(lo, 1.0 / 6.0), libm::pow(hi, 1.0 / 6.0));
        let steps = 2_000_000;
        let dv = (vh - vl) / steps as f64;
        let mut s = 0.0;
        for i in 0..steps {
            let v = vl + (i as f64 + 0.5) * dv;
            let u = libm::pow(v, 6.0);
            let n = ts.iter().filter(|&&t| t <= u).count() as f64;
            s += (n - k * libm::floor(v + 1e-12)) / (v * v) * dv;
        }
        s
    }

    #[test]
    fn no_jumps_below_first_height() {
        let h = BTreeMap::new();
        let k = 0.5;
        let u = 100_000u32;
        let got = ell0_segment(&h, k, &BigUint::from(1u32), &BigUint::from(u));
        let hu = libm::pow(u as f64, -1.0 / 6.0);
        let want: f64 = -k * (1..=6).map(|j| 1.0 / j as f64 - hu).sum::<f64>();
        assert!((got - want).abs() < 1e-14);
        assert!(compute_ell0(&h, &BigUint::from(u), Q, R).is_err());
    }

    #[test]
    fn additive_over_segments() {
        let h = hist(10u64.pow(15));
        let k = Q * R / zeta2();
        let one = BigUint::from(1u32);
        let (u1, u2) = (
            BigUint::from(3 * 10u64.pow(11)),
            BigUint::from(10u64.pow(15)),
        );
        let whole = ell0_segment(&h, k, &one, &u2);
        let split = ell0_segment(&h, k, &one, &u1) + ell0_segment(&h, k, &u1, &u2);
        assert!((whole - split).abs() < 1e-12);
    }

    #[test]
    fn matches_quadrature() {
        let h = hist(10u64.pow(12));
        let k = Q * R / zeta2();
        let exact = ell0_segment(&h, k, &BigUint::from(1u32), &BigUint::from(10u64.pow(12)));
        let approx = quadrature(&h, k, 1.0, 1e12);
        assert!((exact - approx).abs() < 1e-4, "{exact} {approx}");
    }

    #[test]
    fn fitted_constants_bound_residuals() {
        let x = 10u64.pow(18);
        let recs = enumerate_census(&BigUint::from(x)).unwrap();
        let h = hist(x);
        let e = compute_ell0(&h, &BigUint::from(x), Q, R).unwrap();
        let k = Q * R / zeta2();
        for (i, r) in recs.iter().enumerate() {
            let u = to_f64(&r.twist_height);
            let last_of_height = recs
                .get(i + 1)
                .is_none_or(|s| s.twist_height != r.twist_height);
            if u < FIT_FROM || !last_of_height {
                continue;
            }
            let d = (i + 1) as f64 - k * libm::floor(libm::pow(u, 1.0 / 6.0));
            assert!(d.abs() <= e.m_conjectured * libm::pow(u, 1.0 / 12.0 + EPSILON) * (1.0 + 1e-9));
        }
        assert!(e.trunc_proved > e.trunc_conjectured && e.trunc_conjectured > 0.0);
    }
}
