use super::arith::{euler_phi, factorize};
use crate::error::{above_guard, Result};

/// Largest `e` accepted by [`t_brute`] (`e³` residues are scanned).
pub const T_BRUTE_LIMIT: u64 = 1000;

/// `T(ℓ^v)` for one prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalTValue {
    pub prime: u64,
    pub exponent: u32,
    pub value: u64,
}

/// The local factor `T(ℓ^v)`.
pub fn local_t(prime: u64, exponent: u32) -> LocalTValue {
    let value = match (prime, exponent) {
        (_, 0) => 1,
        (3, 1) => 18,
        (3, 2) => 27,
        (3, _) => 0,
        (7, 1) => 50,
        (7, 2) => 2402,
        (7, _) => 823_544,
        (p, _) if p % 3 == 1 => 2,
        _ => 0,
    };
    LocalTValue {
        prime,
        exponent,
        value,
    }
}

/// `T(e)`, the number of `t mod e³` with `e² | f(t)` and `e³ | g(t)`, from
/// the local values.
pub fn t_value(e: u64) -> u64 {
    factorize(e)
        .into_iter()
        .map(|(p, k)| local_t(p, k).value)
        .product()
}

/// `φ(e³)·T(e)`.
pub fn t_tilde(e: u64) -> u128 {
    let e = e as u128;
    e * e * euler_phi(e as u64) as u128 * t_value(e as u64) as u128
}

fn residue(c: i64, m: u64) -> u64 {
    c.rem_euclid(m as i64) as u64
}

/// Evaluates a polynomial with integer coefficients (highest degree first) mod `m`.
fn eval_mod(coeffs: &[u64], t: u64, m: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs {
        acc = (acc * t + c) % m;
    }
    acc
}

fn poly_mul(p: &[i64], q: &[i64]) -> [i64; 7] {
    let mut out = [0i64; 7];
    let off = 7 - (p.len() + q.len() - 1);
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[off + i + j] += a * b;
        }
    }
    out
}

/// `T(e)` by scanning residues: for each `r mod e²` with `e² | f(r)`, the
/// `e` lifts `r + ke²` are tested against `e³ | g`. Rejects `e > 1000`.
pub fn t_brute(e: u64) -> Result<u64> {
    if e > T_BRUTE_LIMIT {
        return Err(above_guard("e", e, T_BRUTE_LIMIT));
    }
    if e <= 1 {
        return Ok(1);
    }
    let h = [1i64, 1, 7];
    // f = -3(t² - 231t + 735)·h, g = 2(t⁴ + 518t³ - 11025t² + 6174t - 64827)·h
    let f = poly_mul(&[-3, 693, -2205], &h);
    let g = poly_mul(&[2, 1036, -22050, 12348, -129654], &h);
    let e2 = e * e;
    let e3 = e2 * e;
    let f_mod: alloc::vec::Vec<u64> = f.iter().map(|&c| residue(c, e2)).collect();
    let g_mod: alloc::vec::Vec<u64> = g.iter().map(|&c| residue(c, e3)).collect();
    let mut count = 0;
    for r in 0..e2 {
        if eval_mod(&f_mod, r, e2) != 0 {
            continue;
        }
        for k in 0..e {
            if eval_mod(&g_mod, r + k * e2, e3) == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}
