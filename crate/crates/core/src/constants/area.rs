//! The area `R` of `{(a, b) ∈ ℝ² : b ≥ 0, H(A(a, b), B(a, b)) ≤ 1}`.
//!
//! The region lies in the box `[−0.677, 0.677] × [0, 0.078]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{eval, form_a, form_b, height, partials};
use crate::error::{below_minimum, Result};

pub const BOX_A: f64 = 0.677;
pub const BOX_B: f64 = 0.078;
/// Area of the bounding box.
pub const BOX_AREA: f64 = 0.105612;
/// Smallest sample count accepted by [`area_r_mc`].
pub const MC_MIN_SAMPLES: u64 = 10_000;
/// Smallest resolution accepted by [`area_r_grid`].
pub const GRID_MIN_RESOLUTION: u64 = 100;
/// Points with `H ≤ 1 + HIT_SLACK` count as inside.
pub const HIT_SLACK: f64 = 1e-12;

/// Samples per RNG stream.
const CHUNK: u64 = 1 << 20;

/// Outcome of a Monte Carlo run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

/// Whether `(a, b)` lies in the region, up to [`HIT_SLACK`].
pub fn is_hit(a: f64, b: f64) -> bool {
    height(a, b, &form_a(), &form_b()) <= 1.0 + HIT_SLACK
}

fn chunk_hits(seed: u64, index: u64, n: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let (fa, fb) = (form_a(), form_b());
    let mut hits = 0;
    for _ in 0..n {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let a = BOX_A * (2.0 * u - 1.0);
        let b = BOX_B * v;
        if height(a, b, &fa, &fb) <= 1.0 + HIT_SLACK {
            hits += 1;
        }
    }
    hits
}

/// Rejection sampling on the bounding box.
///
/// Samples are drawn in chunks of 2²⁰; chunk `i` uses ChaCha8 seeded with
/// `seed` on stream `i`, so the result does not depend on how chunks are
/// spread over threads.
pub fn area_r_mc(samples: u64, seed: u64) -> Result<McEstimate> {
    area_r_mc_with(samples, seed, cfg!(feature = "std"))
}

pub fn area_r_mc_with(samples: u64, seed: u64, parallel: bool) -> Result<McEstimate> {
    if samples < MC_MIN_SAMPLES {
        return Err(below_minimum("samples", samples, MC_MIN_SAMPLES));
    }
    let chunks = samples.div_ceil(CHUNK);
    let size = |i: u64| CHUNK.min(samples - i * CHUNK);
    let hits = sum_chunks(chunks, parallel, |i| chunk_hits(seed, i, size(i)));
    let (h, s) = (hits as f64, samples as f64);
    Ok(McEstimate {
        estimate: BOX_AREA * h / s,
        std_error: BOX_AREA * libm::sqrt(h * (s - h) / (s * s * s)),
        hits,
        samples,
        seed,
    })
}

#[cfg(feature = "std")]
fn sum_chunks(n: u64, parallel: bool, f: impl Fn(u64) -> u64 + Sync + Send) -> u64 {
    use rayon::prelude::*;
    if parallel {
        (0..n).into_par_iter().map(f).sum()
    } else {
        (0..n).map(f).sum()
    }
}

#[cfg(not(feature = "std"))]
fn sum_chunks(n: u64, _parallel: bool, f: impl Fn(u64) -> u64) -> u64 {
    (0..n).map(f).sum()
}

#[derive(Clone, Copy, Debug)]
struct Iv {
    lo: f64,
    hi: f64,
}

impl Iv {
    fn new(lo: f64, hi: f64) -> Self {
        Iv { lo, hi }
    }

    fn mul(self, o: Iv) -> Iv {
        let p = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        Iv::new(
            p.iter().copied().fold(f64::INFINITY, f64::min),
            p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

/// Enclosure of a form over a box, term by term.
fn eval_iv<const N: usize>(f: &[f64; N], a: Iv, b: Iv) -> Iv {
    let d = N - 1;
    let mut apow = [Iv::new(1.0, 1.0); N];
    let mut bpow = [Iv::new(1.0, 1.0); N];
    for k in 1..N {
        apow[k] = pow_iv(a, k as u32);
        bpow[k] = pow_iv(b, k as u32);
    }
    let (mut lo, mut hi) = (0.0, 0.0);
    for (j, c) in f.iter().enumerate() {
        let t = apow[d - j].mul(bpow[j]).mul(Iv::new(*c, *c));
        lo += t.lo;
        hi += t.hi;
    }
    Iv::new(lo, hi)
}

fn pow_iv(x: Iv, k: u32) -> Iv {
    let (l, h) = (libm::pow(x.lo, k as f64), libm::pow(x.hi, k as f64));
    if k % 2 == 1 {
        Iv::new(l, h)
    } else if x.lo <= 0.0 && x.hi >= 0.0 {
        Iv::new(0.0, l.max(h))
    } else {
        Iv::new(l.min(h), l.max(h))
    }
}

/// Bounds on `|∂f/∂a|` and `|∂f/∂b|` over a box.
struct Gradient<const M: usize> {
    da: [f64; M],
    db: [f64; M],
}

impl<const M: usize> Gradient<M> {
    fn margin(&self, a: Iv, b: Iv, ha: f64, hb: f64) -> f64 {
        let m = eval_iv(&self.da, a, b).mag() * ha + eval_iv(&self.db, a, b).mag() * hb;
        m * (1.0 + 1e-12) + 1e-12
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    inside: u64,
    touching: u64,
}

/// `(lower, upper)` bounds on `R` from an `n × n` grid on the bounding box.
///
/// Each cell is judged from its centre: by the mean value theorem `A` and
/// `B` move by at most `|∇|·(half-widths)` over the cell. A cell counts
/// towards `lower` when it is certainly inside and towards `upper` unless
/// it is certainly outside. Margins come from a gradient bound over the
/// whole box first and over the cell itself when that is inconclusive.
pub fn area_r_grid(resolution: u64) -> Result<(f64, f64)> {
    area_r_grid_with(resolution, cfg!(feature = "std"))
}

pub fn area_r_grid_with(resolution: u64, parallel: bool) -> Result<(f64, f64)> {
    if resolution < GRID_MIN_RESOLUTION {
        return Err(below_minimum("resolution", resolution, GRID_MIN_RESOLUTION));
    }
    let n = resolution;
    let da = 2.0 * BOX_A / n as f64;
    let db = BOX_B / n as f64;
    let (ha, hb) = (da / 2.0, db / 2.0);
    let (fa, fb) = (form_a(), form_b());
    let (ga, gb) = (partials::<5, 4>(&fa), partials::<7, 6>(&fb));
    let grad_a = Gradient { da: ga.0, db: ga.1 };
    let grad_b = Gradient { da: gb.0, db: gb.1 };
    let alpha = libm::pow(4.0, -1.0 / 3.0);
    let beta = 1.0 / libm::sqrt(27.0);
    let whole = (Iv::new(-BOX_A, BOX_A), Iv::new(0.0, BOX_B));
    let global_a = grad_a.margin(whole.0, whole.1, ha, hb);
    let global_b = grad_b.margin(whole.0, whole.1, ha, hb);

    let row = |j: u64| -> Tally {
        let mut t = Tally::default();
        let bc = (j as f64 + 0.5) * db;
        let biv = Iv::new(bc - hb, bc + hb);
        for i in 0..n {
            let ac = -BOX_A + (i as f64 + 0.5) * da;
            let x = eval(&fa, ac, bc).abs();
            let y = eval(&fb, ac, bc).abs();
            let classify = |ma: f64, mb: f64| -> Option<bool> {
                if x + ma <= alpha && y + mb <= beta {
                    Some(true)
                } else if x - ma > alpha || y - mb > beta {
                    Some(false)
                } else {
                    None
                }
            };
            let verdict = classify(global_a, global_b).or_else(|| {
                let aiv = Iv::new(ac - ha, ac + ha);
                classify(
                    grad_a.margin(aiv, biv, ha, hb),
                    grad_b.margin(aiv, biv, ha, hb),
                )
            });
            match verdict {
                Some(true) => {
                    t.inside += 1;
                    t.touching += 1;
                }
                Some(false) => {}
                None => t.touching += 1,
            }
        }
        t
    };
    let total = sum_rows(n, parallel, row);
    let cell = da * db;
    Ok((total.inside as f64 * cell, total.touching as f64 * cell))
}

#[cfg(feature = "std")]
fn sum_rows(n: u64, parallel: bool, f: impl Fn(u64) -> Tally + Sync + Send) -> Tally {
    use rayon::prelude::*;
    let add = |x: Tally, y: Tally| Tally {
        inside: x.inside + y.inside,
        touching: x.touching + y.touching,
    };
    if parallel {
        (0..n).into_par_iter().map(f).reduce(Tally::default, add)
    } else {
        (0..n).map(f).fold(Tally::default(), add)
    }
}

#[cfg(not(feature = "std"))]
fn sum_rows(n: u64, _parallel: bool, f: impl Fn(u64) -> Tally) -> Tally {
    (0..n).map(f).fold(Tally::default(), |x, y| Tally {
        inside: x.inside + y.inside,
        touching: x.touching + y.touching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_a_hit() {
        assert!(is_hit(0.0, 0.0));
        assert!(!is_hit(BOX_A, BOX_B));
    }

    #[test]
    fn box_contains_region() {
        // H is homogeneous, so the region is star-shaped about the origin
        // and it is enough to miss the three edges away from b = 0
        for k in 0..=2000 {
            let t = k as f64 / 2000.0;
            assert!(!is_hit(-BOX_A + 2.0 * BOX_A * t, BOX_B));
            assert!(!is_hit(BOX_A, BOX_B * t));
            assert!(!is_hit(-BOX_A, BOX_B * t));
        }
    }

    #[test]
    fn mc_deterministic_and_thread_independent() {
        let a = area_r_mc_with(3_000_000, 7, true).unwrap();
        let b = area_r_mc_with(3_000_000, 7, false).unwrap();
        assert_eq!(a, b);
        assert!(area_r_mc(9_999, 1).is_err());
    }

    #[test]
    fn mc_seeds_agree() {
        let a = area_r_mc(4_000_000, 1).unwrap();
        let b = area_r_mc(4_000_000, 2).unwrap();
        let combined = libm::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
        assert!((a.estimate - b.estimate).abs() < 4.0 * combined);
        assert_ne!(a.hits, b.hits);
    }

    #[test]
    fn grid_brackets_and_refines() {
        let mut prev = f64::INFINITY;
        for n in [100, 200, 400, 800] {
            let (lo, hi) = area_r_grid(n).unwrap();
            assert!(lo <= hi && hi <= BOX_AREA);
            assert!(hi - lo < prev, "n = {n}");
            prev = hi - lo;
        }
        let (lo, hi) = area_r_grid(800).unwrap();
        let mc = area_r_mc(4_000_000, 3).unwrap();
        assert!(lo <= mc.estimate && mc.estimate <= hi);
        assert!(area_r_grid(99).is_err());
    }
}
