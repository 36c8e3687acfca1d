use alloc::vec;
use alloc::vec::Vec;

use num_integer::Roots;

/// All primes `≤ n` (plain Eratosthenes; used for small bounds).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Number of residues `6i + 1` sieved per segment.
const SEGMENT: u64 = 1 << 18;

/// Calls `f` on every prime `p ≡ 1 (mod 3)` with `lo ≤ p ≤ hi`, ascending.
///
/// Only the class `6i + 1` is sieved; each base prime `q ≥ 5` strikes out
/// the indices `i ≡ (q² - 1)/6 (mod q)` from `q²` onwards.
pub fn for_each_prime_1mod3(lo: u64, hi: u64, mut f: impl FnMut(u64)) {
    if hi < 7 || lo > hi {
        return;
    }
    // index range [i_lo, i_hi] with 6i + 1 ∈ [lo, hi], i ≥ 1
    let i_lo = (lo.max(7) - 1).div_ceil(6);
    let i_hi = (hi - 1) / 6;
    if i_lo > i_hi {
        return;
    }
    let base: Vec<u64> = primes_up_to(hi.sqrt())
        .into_iter()
        .filter(|&q| q >= 5)
        .collect();
    let mut next: Vec<u64> = base
        .iter()
        .map(|&q| {
            let start = (q * q - 1) / 6;
            if start >= i_lo {
                start
            } else {
                start + (i_lo - start).div_ceil(q) * q
            }
        })
        .collect();
    let mut flags = vec![false; SEGMENT as usize];
    let mut seg_lo = i_lo;
    while seg_lo <= i_hi {
        let seg_hi = (seg_lo + SEGMENT - 1).min(i_hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        flags[..len].fill(false);
        for (q, nx) in base.iter().zip(next.iter_mut()) {
            let mut i = *nx;
            while i <= seg_hi {
                flags[(i - seg_lo) as usize] = true;
                i += q;
            }
            *nx = i;
        }
        for (k, &struck) in flags[..len].iter().enumerate() {
            if !struck {
                f(6 * (seg_lo + k as u64) + 1);
            }
        }
        seg_lo = seg_hi + 1;
    }
}

/// All primes `p ≤ limit` with `p ≡ 1 (mod 3)`, ascending.
pub fn primes_1mod3(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime_1mod3(2, limit, |p| out.push(p));
    out
}
