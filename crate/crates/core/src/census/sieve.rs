//! Brute counters `M(X; d, e)`, `M(X; e)` and the two Möbius identities
//! relating them to each other and to the census.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};

use super::record::CurveRecord;
use super::to_f64;
use crate::error::{above_guard, Result};
use crate::forms::{eval_ab, eval_c, height_h, is_groomed, twist_defect, CUSP};
use crate::multfun::mobius;

/// Largest `X` accepted by [`m_de`] and [`m_e`]. The twist identity
/// evaluates `M(e⁶X; ef)`, already `8.6·10¹⁷` for `X = 10¹⁰`, `e = 21`, and
/// near `10³¹` for the largest defects at `X = 10¹²`; the scanned region
/// only grows like `X^(1/6)`.
pub const M_GUARD: u128 = 10u128.pow(36);

fn check_guard(x: &BigUint) -> Result<()> {
    if *x > BigUint::from(M_GUARD) {
        Err(above_guard("X", x, M_GUARD))
    } else {
        Ok(())
    }
}

/// Pairs `(a, b)` with `b > 0` and `108·u¹²·C(a, b)⁶ ≤ x`, a superset of
/// those with `H(A(ua, ub), B(ua, ub)) ≤ x`.
fn region(x: &BigUint, u: u64) -> Vec<(i64, i64)> {
    let bound = x / (BigUint::from(108u32) * BigUint::from(u).pow(12));
    let c_max: u128 = bound.nth_root(6).try_into().expect("fits");
    let mut out = Vec::new();
    let mut b: i64 = 1;
    while 27 * (b as u128) * (b as u128) <= 4 * c_max {
        let s = (4 * c_max - 27 * (b as u128) * (b as u128)).sqrt() as i64;
        for a in ((-b - s) / 2 - 1)..=((-b + s) / 2 + 1) {
            if eval_c(a, b) <= c_max {
                out.push((a, b));
            }
        }
        b += 1;
    }
    out
}

/// Whether `(A(ua, ub), B(ua, ub))` has `H ≤ x` and `e | twistdefect`.
fn height_and_defect(a: i64, b: i64, u: u64, x: &BigUint, e: u64) -> bool {
    let w = eval_ab(a * u as i64, b * u as i64);
    if height_h(&w) > *x {
        return false;
    }
    let report = twist_defect(&w).expect("nonzero model");
    (report.twistdefect % BigUint::from(e)) == BigUint::from(0u32)
}

/// `M(X; d, e)`: pairs with `gcd(da, db, e) = 1`, `b > 0`,
/// `H(A(da, db), B(da, db)) ≤ X`, `e | twistdefect(A(da, db), B(da, db))`
/// and `(a, b) ≠ (-7, 1)`.
pub fn m_de(x: &BigUint, d: u64, e: u64) -> Result<u64> {
    check_guard(x)?;
    let mut n = 0;
    for (a, b) in region(x, d) {
        if (a, b) == CUSP {
            continue;
        }
        let g = (d * a.gcd(&b) as u64).gcd(&e);
        if g == 1 && height_and_defect(a, b, d, x, e) {
            n += 1;
        }
    }
    Ok(n)
}

/// `M(X; e)`: groomed pairs with `H(A, B) ≤ X` and `e | twistdefect(A, B)`.
pub fn m_e(x: &BigUint, e: u64) -> Result<u64> {
    check_guard(x)?;
    let mut n = 0;
    for (a, b) in region(x, 1) {
        if is_groomed(a, b) && height_and_defect(a, b, 1, x, e) {
            n += 1;
        }
    }
    Ok(n)
}

/// `⌊X^(1/12)/(2^(1/6)·3^(1/4))⌋`, the range of `d` in the first identity.
pub fn defect_sieve_bound(x: &BigUint) -> u64 {
    // d¹²·108 ≤ X, computed exactly
    let mut d = libm::pow(to_f64(x) / 108.0, 1.0 / 12.0) as u64 + 2;
    while d > 0 && BigUint::from(d).pow(12) * 108u32 > *x {
        d -= 1;
    }
    d
}

/// `⌊(3^(1/2)·7²/2^(1/9))·X^(1/18)/e^(2/3)⌋`, the range of `f` in the second identity.
pub fn twist_sieve_bound(x: &BigUint, e: u64) -> u64 {
    let k = libm::sqrt(3.0) * 49.0 / libm::pow(2.0, 1.0 / 9.0);
    libm::floor(k * libm::pow(to_f64(x), 1.0 / 18.0) / libm::pow(e as f64, 2.0 / 3.0)) as u64
}

/// `(M(X; e), Σ_{d, gcd(d,e)=1} μ(d)·M(X; d, e))`.
pub fn m_sieve_identity(x: &BigUint, e: u64) -> Result<(u64, i64)> {
    let lhs = m_e(x, e)?;
    let mut rhs = 0i64;
    for d in 1..=defect_sieve_bound(x) {
        let mu = mobius(d);
        if mu != 0 && d.gcd(&e) == 1 {
            rhs += mu as i64 * m_de(x, d, e)? as i64;
        }
    }
    Ok((lhs, rhs))
}

/// `(#{records with defect e}, Σ_f μ(f)·M(e⁶X; ef))` for a census up to `x`.
pub fn twist_sieve_identity(records: &[CurveRecord], x: &BigUint, e: u64) -> Result<(u64, i64)> {
    let direct = records
        .iter()
        .filter(|r| r.twist_height <= *x && r.twist_defect == e)
        .count() as u64;
    let scaled = x * BigUint::from(e).pow(6);
    let mut sum = 0i64;
    for f in 1..=twist_sieve_bound(x, e) {
        let mu = mobius(f);
        if mu != 0 {
            sum += mu as i64 * m_e(&scaled, e * f)? as i64;
        }
    }
    Ok((direct, sum))
}
