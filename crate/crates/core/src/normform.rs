//! Arithmetic in `ℤ[3ζ]` and primitive representations by `C(a,b) = a² + ab + 7b²`.
//!
//! An [`OrderElement`] `(x, y)` stands for `x + yω` with `ω = -1 + 3ζ`, so
//! `ω² = ω - 7` and the norm of `x + yω` is `C(x, y)`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::{Integer, Roots};

use crate::forms::eval_c;
use crate::multfun::{factorize, primes_up_to};

/// `x + yω` in `ℤ[3ζ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderElement {
    pub x: i64,
    pub y: i64,
}

impl OrderElement {
    pub const ONE: OrderElement = OrderElement { x: 1, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        OrderElement { x, y }
    }

    pub fn norm(&self) -> u128 {
        eval_c(self.x, self.y)
    }

    /// Product, or `None` if a coordinate leaves the `i64` range.
    pub fn checked_mul(&self, o: &OrderElement) -> Option<OrderElement> {
        let (x1, y1, x2, y2) = (self.x as i128, self.y as i128, o.x as i128, o.y as i128);
        let x = x1 * x2 - 7 * y1 * y2;
        let y = x1 * y2 + x2 * y1 + y1 * y2;
        Some(OrderElement {
            x: i64::try_from(x).ok()?,
            y: i64::try_from(y).ok()?,
        })
    }

    /// Product in the order.
    ///
    /// # Panics
    /// If a coordinate of the product overflows `i64`.
    pub fn mul(&self, o: &OrderElement) -> OrderElement {
        self.checked_mul(o)
            .expect("order element product overflows i64")
    }

    /// Representative of `±self` with `y > 0`, or `y = 0` and `x > 0`.
    pub fn normalized(&self) -> OrderElement {
        if self.y < 0 || (self.y == 0 && self.x < 0) {
            OrderElement::new(-self.x, -self.y)
        } else {
            *self
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    pub fn pair(&self) -> (i64, i64) {
        (self.x, self.y)
    }
}

impl From<(i64, i64)> for OrderElement {
    fn from((x, y): (i64, i64)) -> Self {
        OrderElement { x, y }
    }
}

/// All `(a, b)` with `b > 0`, `gcd(a, b) = 1` and `C(a, b) = m`, sorted.
/// For `m = 1` the unit representative `(1, 0)` is returned.
pub fn enumerate_reps(m: u64) -> Vec<(i64, i64)> {
    if m == 1 {
        return vec![(1, 0)];
    }
    let mut out = Vec::new();
    let four_m = 4 * m as u128;
    let mut b: u128 = 1;
    while 27 * b * b <= four_m {
        let disc = four_m - 27 * b * b;
        let s = disc.sqrt();
        if s * s == disc {
            // a = (-b ± s) / 2
            for sign in [-1i128, 1] {
                let num = -(b as i128) + sign * s as i128;
                if num % 2 == 0 {
                    let a = (num / 2) as i64;
                    let bi = b as i64;
                    if a.gcd(&bi) == 1 && !out.contains(&(a, bi)) {
                        out.push((a, bi));
                    }
                }
            }
        }
        b += 1;
    }
    out.sort_unstable();
    out
}

/// `c(m)`, the number of primitive representations, by scanning.
pub fn count_reps(m: u64) -> u64 {
    enumerate_reps(m).len() as u64
}

/// `c(p^k)` from the local formulas.
pub fn count_reps_prime_power(p: u64, k: u32) -> u64 {
    if k == 0 {
        return 1;
    }
    if p == 3 {
        match k {
            1 => 0,
            2 => 2,
            3 => 3,
            _ => 0,
        }
    } else if p % 3 == 1 {
        2
    } else {
        0
    }
}

/// `c(m)` through its factorisation.
pub fn count_reps_multiplicative(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .map(|(p, k)| count_reps_prime_power(p, k))
        .product()
}

/// Products of all cross pairs, normalised to `b > 0`, primitive only,
/// deduplicated and sorted.
pub fn combine_reps(e_part: &[(i64, i64)], m_part: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(e_part.len() * m_part.len());
    for &u in e_part {
        let u = OrderElement::from(u);
        for &v in m_part {
            let p = u.mul(&OrderElement::from(v)).normalized();
            if p.is_primitive() {
                out.push(p.pair());
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Cubes of the given representations, normalised and primitive, sorted.
pub fn cube_reps(reps: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = reps
        .iter()
        .map(|&r| {
            let u = OrderElement::from(r);
            u.mul(&u).mul(&u).normalized()
        })
        .filter(|u| u.is_primitive())
        .map(|u| u.pair())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Primitive representations of `7^k`, as the normalised powers of the two
/// representations of 7.
pub fn reps_seven_power(k: u32) -> Vec<(i64, i64)> {
    if k == 0 {
        return vec![(1, 0)];
    }
    let mut out: Vec<(i64, i64)> = enumerate_reps(7)
        .into_iter()
        .map(|r| {
            let pi = OrderElement::from(r);
            let mut acc = pi;
            for _ in 1..k {
                acc = acc.mul(&pi);
            }
            acc.normalized().pair()
        })
        .collect();
    out.sort_unstable();
    out
}

/// Lookup table `m ↦` primitive representations of `m`, for `m < bound`
/// coprime to 3, with cubefree flags. The unit `1 ↦ [(1, 0)]` is included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTable {
    bound: u64,
    offsets: Vec<u32>,
    pairs: Vec<(i64, i64)>,
    cubefree: Vec<bool>,
}

impl RepTable {
    /// Keys are `1 ≤ m < bound`.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Representations of `m` (empty for keys outside the table or divisible by 3).
    pub fn get(&self, m: u64) -> &[(i64, i64)] {
        if m == 0 || m >= self.bound {
            return &[];
        }
        let i = m as usize;
        &self.pairs[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    /// Cubefree flag of `m`; `false` outside `1 ≤ m < bound`.
    pub fn is_cubefree(&self, m: u64) -> bool {
        m != 0 && m < self.bound && self.cubefree[m as usize]
    }

    /// Number of stored representations.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All `(m, a, b)` entries in ascending order of `m`, then `(a, b)`.
    pub fn entries(&self) -> impl Iterator<Item = (u64, i64, i64)> + '_ {
        (1..self.bound).flat_map(move |m| self.get(m).iter().map(move |&(a, b)| (m, a, b)))
    }

    /// Rebuild from `(m, a, b)` entries, e.g. read back from a cache. Returns
    /// `None` unless every entry is a primitive representation of its key
    /// with `m < bound` coprime to 3.
    pub fn from_entries(bound: u64, entries: &[(u64, i64, i64)]) -> Option<RepTable> {
        if bound < 2 {
            return None;
        }
        let mut sorted = entries.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut counts = vec![0u32; bound as usize + 1];
        for &(m, a, b) in &sorted {
            let valid_pair = (b > 0 && a.gcd(&b) == 1) || (m == 1 && (a, b) == (1, 0));
            if m == 0 || m >= bound || m % 3 == 0 || !valid_pair || eval_c(a, b) != m as u128 {
                return None;
            }
            counts[m as usize + 1] += 1;
        }
        let offsets = prefix_sums(&counts);
        let pairs = sorted.iter().map(|&(_, a, b)| (a, b)).collect();
        Some(RepTable {
            bound,
            offsets,
            pairs,
            cubefree: cubefree_flags(bound),
        })
    }
}

fn prefix_sums(counts: &[u32]) -> Vec<u32> {
    let mut offsets = Vec::with_capacity(counts.len());
    let mut acc = 0u32;
    for &c in counts {
        acc += c;
        offsets.push(acc);
    }
    offsets
}

fn cubefree_flags(bound: u64) -> Vec<bool> {
    let mut flags = vec![true; bound as usize];
    if let Some(f) = flags.first_mut() {
        *f = false;
    }
    for p in primes_up_to(bound.cbrt() + 1) {
        let p3 = p * p * p;
        let mut k = p3;
        while k < bound {
            flags[k as usize] = false;
            k += p3;
        }
    }
    flags
}

/// Scan every `(a, b)` with `b > 0` and `C(a, b) < bound`, keeping primitive
/// pairs whose norm is prime to 3.
pub fn build_rep_table(bound: u64) -> RepTable {
    let bound = bound.max(2);
    let limit = bound as u128; // exclusive
    let mut found: Vec<(u64, i64, i64)> = Vec::new();
    let mut b: i64 = 1;
    while 27 * (b as u128) * (b as u128) < 4 * limit {
        // a² + ab + 7b² < bound  ⇔  (2a + b)² < 4·bound - 27b²
        let disc = 4 * limit - 27 * (b as u128) * (b as u128);
        let s = disc.sqrt() as i64 + 1;
        let lo = (-b - s) / 2 - 1;
        let hi = (-b + s) / 2 + 1;
        for a in lo..=hi {
            let c = eval_c(a, b);
            if c < limit && !c.is_multiple_of(3) && a.gcd(&b) == 1 {
                found.push((c as u64, a, b));
            }
        }
        b += 1;
    }
    found.push((1, 1, 0));
    found.sort_unstable();
    let mut counts = vec![0u32; bound as usize + 1];
    for &(m, _, _) in &found {
        counts[m as usize + 1] += 1;
    }
    RepTable {
        bound,
        offsets: prefix_sums(&counts),
        pairs: found.into_iter().map(|(_, a, b)| (a, b)).collect(),
        cubefree: cubefree_flags(bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn multiplication() {
        let w = OrderElement::new(0, 1);
        assert_eq!(w.mul(&w), OrderElement::new(-7, 1));
        let u = OrderElement::new(5, -3);
        assert_eq!(OrderElement::ONE.mul(&u), u);
        assert_eq!(w.mul(&w).norm(), 49);
    }

    #[test]
    fn small_reps() {
        assert_eq!(enumerate_reps(7), vec![(-1, 1), (0, 1)]);
        assert!(enumerate_reps(3).is_empty());
        assert_eq!(enumerate_reps(9), vec![(-2, 1), (1, 1)]);
        assert_eq!(enumerate_reps(27), vec![(-5, 1), (-1, 2), (4, 1)]);
        assert_eq!(enumerate_reps(49), vec![(-7, 1), (6, 1)]);
        assert_eq!(enumerate_reps(1), vec![(1, 0)]);
    }

    #[test]
    fn counts() {
        assert_eq!(count_reps(27), 3);
        assert_eq!(count_reps(13), 2);
        assert_eq!(count_reps(5), 0);
        assert_eq!(count_reps(81), 0);
        for m in 1..5000 {
            assert_eq!(count_reps(m), count_reps_multiplicative(m), "m = {m}");
        }
    }

    #[test]
    fn table_small() {
        let t = build_rep_table(8);
        assert_eq!(t.get(1), &[(1, 0)]);
        assert_eq!(t.get(7), &[(-1, 1), (0, 1)]);
        for m in 2..7 {
            assert!(t.get(m).is_empty());
        }
    }

    #[test]
    fn table_matches_scan() {
        let t = build_rep_table(5000);
        for m in 1..5000u64 {
            if m % 3 == 0 {
                assert!(t.get(m).is_empty());
            } else {
                assert_eq!(t.get(m), enumerate_reps(m).as_slice(), "m = {m}");
                assert_eq!(t.get(m).len() as u64, count_reps(m));
            }
        }
        assert_eq!(t.get(49), &[(-7, 1), (6, 1)]);
    }

    #[test]
    fn cubefree() {
        let t = build_rep_table(200);
        for m in 1..200u64 {
            let expected = factorize(m).iter().all(|&(_, k)| k < 3);
            assert_eq!(t.is_cubefree(m), expected, "m = {m}");
        }
    }

    #[test]
    fn table_round_trip() {
        let t = build_rep_table(3000);
        let entries: Vec<_> = t.entries().collect();
        assert_eq!(RepTable::from_entries(3000, &entries), Some(t));
        assert_eq!(RepTable::from_entries(3000, &[(7, 1, 1)]), None);
    }

    #[test]
    fn combining() {
        let r7 = enumerate_reps(7);
        assert_eq!(combine_reps(&r7, &enumerate_reps(1)), r7);
        let prod = combine_reps(&r7, &enumerate_reps(13));
        assert_eq!(prod, enumerate_reps(91));
    }

    #[test]
    fn cubes() {
        for e in [7u64, 13, 19, 91, 133, 247] {
            let cubed = cube_reps(&enumerate_reps(e));
            assert_eq!(cubed, enumerate_reps(e * e * e), "e = {e}");
            assert!(cubed
                .iter()
                .all(|&(a, b)| eval_c(a, b) == (e * e * e) as u128));
        }
    }

    #[test]
    fn seven_powers() {
        for k in 0..8 {
            assert_eq!(reps_seven_power(k), enumerate_reps(7u64.pow(k)), "k = {k}");
        }
    }

    #[test]
    fn multiplicativity_of_c() {
        for m in 1..=300u64 {
            for n in 1..=300u64 {
                if m.gcd(&n) == 1 {
                    assert_eq!(count_reps(m * n), count_reps(m) * count_reps(n));
                }
            }
        }
    }

    #[test]
    fn cube_scaling_bound() {
        for n in 1..=100u64 {
            let w = factorize(n).len() as u32;
            for m in 1..=100u64 {
                let lhs = count_reps(n * n * n * m);
                let rhs = if w == 0 {
                    count_reps(m)
                } else {
                    3 * (1u64 << (w - 1)) * count_reps(m)
                };
                assert!(lhs <= rhs, "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn partial_sums_grow_linearly() {
        let t = build_rep_table(1 << 20);
        let mut total = 0u64;
        let mut ratio_max: f64 = 0.0;
        for m in 1..(1u64 << 20) {
            total += t.get(m).len() as u64;
            if m.is_power_of_two() && m >= 1024 {
                ratio_max = ratio_max.max(total as f64 / m as f64);
            }
        }
        let last = total as f64 / (1u64 << 20) as f64;
        assert!(ratio_max < 1.0 && last > 0.1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn norm_is_multiplicative(x1 in -1_000_000i64..1_000_000, y1 in -1_000_000i64..1_000_000,
                                  x2 in -1_000_000i64..1_000_000, y2 in -1_000_000i64..1_000_000) {
            let u = OrderElement::new(x1, y1);
            let v = OrderElement::new(x2, y2);
            prop_assert_eq!(u.mul(&v).norm(), u.norm() * v.norm());
        }
    }

    proptest! {
        #[test]
        fn b_range_is_complete(m in 1u64..200_000) {
            for (_, b) in enumerate_reps(m) {
                prop_assert!(27 * (b as u64) * (b as u64) <= 4 * m);
            }
        }
    }
}
