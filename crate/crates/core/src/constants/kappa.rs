//! Extremes of `H(A(a, b), B(a, b))` on the ellipse `C(a, b) = 1`.
//!
//! Writing `a + b/2 = cos θ`, `b = (2/√27)·sin θ` puts the ellipse on
//! `θ ∈ [0, 2π)`; `H` is even, so `[0, π)` suffices.

use alloc::vec::Vec;

use super::poly::{form_a, form_b, height};

const SCAN: usize = 10_000;
const TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaReport {
    pub max: f64,
    /// Maximizer, with `a > 0`.
    pub argmax: (f64, f64),
    pub min: f64,
    pub argmin: (f64, f64),
}

fn point(theta: f64) -> (f64, f64) {
    let b = 2.0 / libm::sqrt(27.0) * libm::sin(theta);
    (libm::cos(theta) - b / 2.0, b)
}

fn h_at(theta: f64) -> f64 {
    let (a, b) = point(theta);
    height(a, b, &form_a(), &form_b())
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) / 2.0
}

/// Local extremes (maxima if `sign = 1`, minima if `-1`) of `H` along the
/// scan, each refined by golden section.
fn refined(sign: f64) -> Vec<f64> {
    let step = core::f64::consts::PI / SCAN as f64;
    let vals: Vec<f64> = (0..SCAN).map(|i| sign * h_at(i as f64 * step)).collect();
    let mut out = Vec::new();
    for i in 0..SCAN {
        let prev = vals[(i + SCAN - 1) % SCAN];
        let next = vals[(i + 1) % SCAN];
        if vals[i] >= prev && vals[i] >= next {
            let t = i as f64 * step;
            out.push(golden(|x| sign * h_at(x), t - step, t + step));
        }
    }
    out
}

/// `κ = max H` and `min H` over `C = 1`.
pub fn compute_kappa() -> KappaReport {
    let best = |sign: f64| {
        refined(sign).into_iter().map(|t| (sign * h_at(t), t)).fold(
            (f64::NEG_INFINITY, 0.0),
            |acc, x| if x.0 > acc.0 { x } else { acc },
        )
    };
    let (max, tmax) = best(1.0);
    let (neg_min, tmin) = best(-1.0);
    let norm = |(a, b): (f64, f64)| if a < 0.0 { (-a, -b) } else { (a, b) };
    KappaReport {
        max,
        argmax: norm(point(tmax)),
        min: -neg_min,
        argmin: norm(point(tmin)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eval_c;

    #[test]
    fn extremes() {
        let k = compute_kappa();
        assert!((k.max - 311406871.990204).abs() < 1e-3, "{}", k.max);
        assert!((k.min - 108.0).abs() < 1e-9);
        assert!((k.argmin.0 - 1.0).abs() < 1e-6 && k.argmin.1.abs() < 1e-6);
    }

    #[test]
    fn maximizer_roots() {
        let (a, b) = compute_kappa().argmax;
        // the real root of the octic below is a = 0.4507610128…
        assert!(
            (a - 0.450760).abs() < 2e-6 && (b + 0.371118).abs() < 1e-6,
            "{a} {b}"
        );
        assert!((a - 0.4507610128).abs() < 1e-8);
        let a2 = a * a;
        let pa = (((1296.0 * a2 - 2016.0) * a2 + 2107.0) * a2 - 1596.0) * a2 + 252.0;
        let b2 = b * b;
        let pb =
            (((1067311728.0 * b2 - 275298660.0) * b2 + 43883077.0) * b2 - 3623648.0) * b2 + 1849.0;
        assert!(pa.abs() < 1e-3, "{pa}");
        assert!(pb.abs() < 1e-1, "{pb}");
        // on the ellipse
        let c = a * a + a * b + 7.0 * b * b;
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_integer_pairs() {
        let fa = form_a();
        let fb = form_b();
        let k = compute_kappa();
        for a in -60i64..=60 {
            for b in 1i64..=40 {
                let c = eval_c(a, b) as f64;
                let h = height(a as f64, b as f64, &fa, &fb);
                let c6 = libm::pow(c, 6.0);
                assert!(h >= 108.0 * c6 * (1.0 - 1e-12));
                assert!(h <= k.max * c6 * (1.0 + 1e-12));
            }
        }
    }
}
