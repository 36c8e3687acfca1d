use alloc::vec::Vec;

use super::fixed::Fixed;
use super::sieve::for_each_prime_1mod3;
use crate::error::{below_minimum, Result};

/// `Q₃ · Q₇ = (13/6)(63/8) = 273/16`.
pub const Q_LOCAL_3_7: (u64, u64) = (273, 16);

/// Smallest prime bound for which the tail inequality is certified.
pub const Q_CERTIFIED_FROM: u64 = 8_000_000_000;

/// Width of the integer blocks whose partial products are combined in order.
const BLOCK: u64 = 1 << 28;

/// Rigorous enclosure of `Q` from the primes up to `prime_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QInterval {
    pub lower: Fixed,
    pub upper: Fixed,
    pub prime_bound: u64,
    /// `false` when `prime_bound` is below [`Q_CERTIFIED_FROM`] and the
    /// upper end is heuristic.
    pub certified: bool,
}

impl QInterval {
    pub fn midpoint(&self) -> f64 {
        (self.lower.to_f64() + self.upper.to_f64()) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.upper.saturating_sub(self.lower).to_f64()
    }

    pub fn contains(&self, x: f64) -> bool {
        let lo = Fixed::from_f64(x, true);
        let hi = Fixed::from_f64(x, false);
        self.lower <= lo && hi <= self.upper
    }
}

/// Lower and upper products `∏ (1 + 2/(p+1)²)` over the primes
/// `p ≡ 1 (mod 3)` of one block, with outward rounding.
fn block_product(lo: u64, hi: u64) -> (Fixed, Fixed) {
    let mut l = Fixed::ONE.raw();
    let mut h = l;
    for_each_prime_1mod3(lo, hi, |p| {
        let d = (p as u128 + 1) * (p as u128 + 1);
        let two_l = 2 * l;
        let (q, r) = (two_l / d, two_l % d);
        let delta = h - l;
        l += q;
        // ⌈2h/d⌉ = q + ⌈(r + 2δ)/d⌉
        let s = r + 2 * delta;
        let up = if s == 0 {
            0
        } else if s <= d {
            1
        } else {
            s.div_ceil(d)
        };
        h = l + delta + up;
    });
    (Fixed::from_raw(l), Fixed::from_raw(h))
}

/// Upper bound for `exp` of the tail sum beyond `y`.
fn tail_factor(y: u64) -> Fixed {
    let yf = y as f64;
    let l = libm::log(yf);
    // π/2 - atan(y) = atan(1/y), without cancellation.
    let t = 5.0 * yf / (2.0 * (yf * yf + 1.0) * l)
        + (1.0 / l + 5.0 / (2.0 * l * l)) * libm::atan(1.0 / yf);
    let t = t * (1.0 + 1e-12);
    let excess = if t <= 1.0 {
        // exp(t) ≤ 1 + t + t² on [0, 1]
        (t + t * t) * (1.0 + 1e-14)
    } else {
        libm::expm1(t) * (1.0 + 1e-12)
    };
    Fixed::from_raw(Fixed::ONE.raw() + Fixed::from_f64(excess, true).raw())
}

fn blocks(y: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = 8;
    while lo <= y {
        let hi = (lo / BLOCK + 1) * BLOCK - 1;
        out.push((lo, hi.min(y)));
        lo = hi + 1;
    }
    out
}

/// Enclosure of `Q` using all primes `7 < p ≤ y`, `p ≡ 1 (mod 3)`, and the
/// tail bound beyond `y`. Rejects `y < 11`.
pub fn q_bounds(y: u64) -> Result<QInterval> {
    q_bounds_with(y, cfg!(feature = "std"))
}

/// As [`q_bounds`]; `parallel` selects the rayon driver (ignored without the
/// `std` feature). The result does not depend on it.
pub fn q_bounds_with(y: u64, parallel: bool) -> Result<QInterval> {
    if y < 11 {
        return Err(below_minimum("prime bound", y, 11));
    }
    let ranges = blocks(y);
    let parts: Vec<(Fixed, Fixed)> = run_blocks(&ranges, parallel);
    let base = Fixed::from_ratio(Q_LOCAL_3_7.0, Q_LOCAL_3_7.1, false);
    let (mut lower, mut upper) = (base, Fixed::from_ratio(Q_LOCAL_3_7.0, Q_LOCAL_3_7.1, true));
    for (l, h) in parts {
        lower = lower.mul_floor(l);
        upper = upper.mul_ceil(h);
    }
    upper = upper.mul_ceil(tail_factor(y));
    Ok(QInterval {
        lower,
        upper,
        prime_bound: y,
        certified: y >= Q_CERTIFIED_FROM,
    })
}

#[cfg(feature = "std")]
fn run_blocks(ranges: &[(u64, u64)], parallel: bool) -> Vec<(Fixed, Fixed)> {
    use rayon::prelude::*;
    if parallel {
        ranges
            .par_iter()
            .map(|&(lo, hi)| block_product(lo, hi))
            .collect()
    } else {
        ranges
            .iter()
            .map(|&(lo, hi)| block_product(lo, hi))
            .collect()
    }
}

#[cfg(not(feature = "std"))]
fn run_blocks(ranges: &[(u64, u64)], _parallel: bool) -> Vec<(Fixed, Fixed)> {
    ranges
        .iter()
        .map(|&(lo, hi)| block_product(lo, hi))
        .collect()
}
