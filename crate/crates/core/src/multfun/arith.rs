use alloc::vec::Vec;

/// Prime factorisation by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for p in [2u64, 3] {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
    }
    // 6k ± 1 wheel
    let mut p = 5u64;
    let mut step = 2;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius(0)");
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| (p - 1) * p.pow(k - 1))
        .product()
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> u32 {
    factorize(n).len() as u32
}

pub fn num_divisors(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(_, k)| k as u64 + 1)
        .product()
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, k)| k == 1)
}

/// Number of squarefree integers in `[1, k]`, as `Σ_{d ≤ √k} μ(d)⌊k/d²⌋`.
pub fn squarefree_count(k: u64) -> u64 {
    if k == 0 {
        return 0;
    }
    let r = num_integer::Roots::sqrt(&k);
    let mut mu = alloc::vec![1i8; r as usize + 1];
    let mut is_comp = alloc::vec![false; r as usize + 1];
    for p in 2..=r as usize {
        if !is_comp[p] {
            let mut m = p;
            while m <= r as usize {
                if m > p {
                    is_comp[m] = true;
                }
                mu[m] = -mu[m];
                m += p;
            }
            let p2 = p * p;
            let mut m = p2;
            while m <= r as usize {
                mu[m] = 0;
                m += p2;
            }
        }
    }
    let mut total: i64 = 0;
    for d in 1..=r {
        let m = mu[d as usize];
        if m != 0 {
            total += m as i64 * (k / (d * d)) as i64;
        }
    }
    total as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(27), 18);
        assert_eq!(euler_phi(343), 294);
        assert_eq!(omega(1029), 2);
        assert_eq!(omega(1), 0);
        assert_eq!(num_divisors(1029), 8);
        assert_eq!(factorize(1029), alloc::vec![(3, 1), (7, 3)]);
        assert_eq!(
            factorize(999_999_000_001),
            alloc::vec![(999_999_000_001, 1)]
        );
    }

    #[test]
    fn squarefree_counts() {
        let mut naive = 0;
        for k in 1..=5000u64 {
            if is_squarefree(k) {
                naive += 1;
            }
            assert_eq!(squarefree_count(k), naive, "k = {k}");
        }
    }

    #[test]
    fn phi_sum_identity() {
        // Σ_{d | n} φ(d) = n
        for n in 1..500u64 {
            let s: u64 = (1..=n).filter(|d| n % d == 0).map(euler_phi).sum();
            assert_eq!(s, n);
        }
    }
}
