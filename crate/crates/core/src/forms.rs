//! The parametrising polynomials, naive heights and (twist) minimality defects.
//!
//! All arithmetic in this module is exact. Coefficients are [`BigInt`]s; the
//! `i128` fast paths are only used where overflow is ruled out or checked.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The cusp `t = -7`, excluded from the groomed pairs.
pub const CUSP: (i64, i64) = (-7, 1);

/// Constant in the bound `e ≤ DEFECT_BOUND · twht^(1/12)`:
/// `3^(5/4) · 7^(9/2) / 2^(1/6) = 22344.52…`, to one decimal.
pub const DEFECT_BOUND: f64 = 22344.5;

/// `true` if `gcd(a, b) = 1`, `b > 0` and `(a, b) ≠ (-7, 1)`.
pub fn is_groomed(a: i64, b: i64) -> bool {
    b > 0 && a.gcd(&b) == 1 && (a, b) != CUSP
}

/// A coprime pair `(a, b)` with `b > 0`, other than the cusp `(-7, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroomedPair {
    a: i64,
    b: i64,
}

impl GroomedPair {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if is_groomed(a, b) {
            Ok(GroomedPair { a, b })
        } else {
            Err(Error::NotGroomed { a, b })
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn pair(&self) -> (i64, i64) {
        (self.a, self.b)
    }
}

impl fmt::Display for GroomedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Coefficients of the short Weierstrass model `y² = x³ + Ax + B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeierstrassPair {
    pub a: BigInt,
    pub b: BigInt,
}

impl WeierstrassPair {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        WeierstrassPair {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `4A³ + 27B² ≠ 0`.
    pub fn is_nonsingular(&self) -> bool {
        let four_a3 = BigInt::from(4) * &self.a * &self.a * &self.a;
        let b2 = BigInt::from(27) * &self.b * &self.b;
        !(four_a3 + b2).is_zero()
    }

    /// The j-invariant `1728 · 4A³ / (4A³ + 27B²)` as a reduced fraction with
    /// positive denominator.
    pub fn j_invariant(&self) -> Option<(BigInt, BigInt)> {
        let four_a3 = BigInt::from(4) * &self.a * &self.a * &self.a;
        let disc = &four_a3 + BigInt::from(27) * &self.b * &self.b;
        if disc.is_zero() {
            return None;
        }
        let num = BigInt::from(1728) * four_a3;
        let g = num.gcd(&disc);
        let (mut n, mut d) = (num / &g, disc / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }
}

impl fmt::Display for WeierstrassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `C(a, b) = a² + ab + 7b²`.
///
/// Exact for `|a|, |b| < 2^62`.
pub fn eval_c(a: i64, b: i64) -> u128 {
    let (a, b) = (a as i128, b as i128);
    let sq = (a * a) as u128 + 7 * (b * b) as u128;
    let ab = a * b;
    if ab >= 0 {
        sq + ab as u128
    } else {
        sq - ab.unsigned_abs()
    }
}

/// `A₀(a, b) = -3(a² - 231ab + 735b²)`.
pub(crate) fn a0_i128(a: i128, b: i128) -> Option<i128> {
    let t = a
        .checked_mul(a)?
        .checked_sub(231i128.checked_mul(a)?.checked_mul(b)?)?
        .checked_add(735i128.checked_mul(b)?.checked_mul(b)?)?;
    t.checked_mul(-3)
}

/// `B₀(a, b) = 2(a⁴ + 518a³b - 11025a²b² + 6174ab³ - 64827b⁴)`.
pub(crate) fn b0_i128(a: i128, b: i128) -> Option<i128> {
    let a2 = a.checked_mul(a)?;
    let b2 = b.checked_mul(b)?;
    let t = a2
        .checked_mul(a2)?
        .checked_add(518i128.checked_mul(a2)?.checked_mul(a)?.checked_mul(b)?)?
        .checked_sub(11025i128.checked_mul(a2)?.checked_mul(b2)?)?
        .checked_add(6174i128.checked_mul(a)?.checked_mul(b2)?.checked_mul(b)?)?
        .checked_sub(64827i128.checked_mul(b2)?.checked_mul(b2)?)?;
    t.checked_mul(2)
}

fn a0_big(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(-3) * (a * a - BigInt::from(231) * a * b + BigInt::from(735) * b * b)
}

fn b0_big(a: &BigInt, b: &BigInt) -> BigInt {
    let a2 = a * a;
    let b2 = b * b;
    BigInt::from(2)
        * (&a2 * &a2 + BigInt::from(518) * &a2 * a * b - BigInt::from(11025) * &a2 * &b2
            + BigInt::from(6174) * a * &b2 * b
            - BigInt::from(64827) * &b2 * &b2)
}

/// `(A, B) = (C·A₀, C·B₀)` at `(a, b)`.
pub fn eval_ab(a: i64, b: i64) -> WeierstrassPair {
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let c = BigInt::from(eval_c(a, b));
    WeierstrassPair {
        a: &c * a0_big(&ab, &bb),
        b: c * b0_big(&ab, &bb),
    }
}

/// Coefficients of the 7-isogenous curve at `(a, b)`, i.e. `b⁴f′(a/b)` and
/// `b⁶g′(a/b)` with `f′ = -3(t² + 9t + 15)·h`, `g′ = 2(t⁴ + 14t³ + 63t² + 126t + 189)·h`.
pub fn eval_isogenous_ab(a: i64, b: i64) -> WeierstrassPair {
    let (x, y) = (BigInt::from(a), BigInt::from(b));
    let c = BigInt::from(eval_c(a, b));
    let x2 = &x * &x;
    let y2 = &y * &y;
    let f0 = BigInt::from(-3) * (&x2 + BigInt::from(9) * &x * &y + BigInt::from(15) * &y2);
    let g0 = BigInt::from(2)
        * (&x2 * &x2
            + BigInt::from(14) * &x2 * &x * &y
            + BigInt::from(63) * &x2 * &y2
            + BigInt::from(126) * &x * &y2 * &y
            + BigInt::from(189) * &y2 * &y2);
    WeierstrassPair {
        a: &c * f0,
        b: c * g0,
    }
}

/// The Atkin–Lehner involution `t ↦ -7t/(t + 7)` on pairs, returned in lowest
/// terms with positive second entry.
pub fn apply_w7(a: i64, b: i64) -> Result<(i64, i64)> {
    let num = -7 * a as i128;
    let den = a as i128 + 7 * b as i128;
    if den == 0 {
        return Err(Error::CuspImage);
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    let n = i64::try_from(n).map_err(|_| Error::Overflow("apply_w7"))?;
    let d = i64::try_from(d).map_err(|_| Error::Overflow("apply_w7"))?;
    Ok((n, d))
}

/// `H(A, B) = max(|4A³|, 27B²)`.
pub fn height_h(w: &WeierstrassPair) -> BigUint {
    let a = w.a.magnitude();
    let b = w.b.magnitude();
    let ha = BigUint::from(4u32) * a * a * a;
    let hb = BigUint::from(27u32) * b * b;
    ha.max(hb)
}

/// Valuations of `A` and `B` at one prime, with the local defect exponents.
///
/// `None` stands for the valuation of zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeValuation {
    pub prime: u64,
    pub ord_a: Option<u32>,
    pub ord_b: Option<u32>,
    /// `⌊min(ord(A)/2, ord(B)/3)⌋`
    pub twist_exponent: u32,
    /// `⌊min(ord(A)/4, ord(B)/6)⌋`
    pub min_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    /// Largest `d` with `d⁴ | A` and `d⁶ | B`.
    pub mindefect: BigUint,
    /// Largest `e` with `e² | A` and `e³ | B`.
    pub twistdefect: BigUint,
    /// Every prime whose square divides `gcd(A, B)`, ascending. Other primes
    /// contribute to neither defect.
    pub per_prime: Vec<PrimeValuation>,
}

fn local_exponent(ord_a: Option<u32>, ord_b: Option<u32>, wa: u32, wb: u32) -> u32 {
    match (ord_a, ord_b) {
        (Some(x), Some(y)) => (x / wa).min(y / wb),
        (Some(x), None) => x / wa,
        (None, Some(y)) => y / wb,
        (None, None) => u32::MAX,
    }
}

fn valuation_big(n: &BigUint, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut m = n.clone();
    let pb = BigUint::from(p);
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        m = q;
    }
}

/// Primes `ℓ` with `ℓ² | g`, ascending. Trial division runs while `p³` is at
/// most the unfactored part; what remains is then `1`, a prime, a product of
/// two primes, or the square of a prime, and only the last case is reported.
pub(crate) fn square_prime_divisors(g: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    if let Some(g) = g.to_u128() {
        square_prime_divisors_u128(g, &mut out);
        return out;
    }
    // Strip small primes in big arithmetic until the rest fits in u128.
    let mut rem = g.clone();
    let mut p: u64 = 2;
    loop {
        if let Some(r) = rem.to_u128() {
            let mut tail = Vec::new();
            square_prime_divisors_u128_from(r, p, &mut tail);
            out.extend(tail);
            return out;
        }
        let pb = BigUint::from(p);
        let mut v = 0;
        loop {
            let (q, r) = rem.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rem = q;
            v += 1;
        }
        if v >= 2 {
            out.push(p);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
}

fn square_prime_divisors_u128(g: u128, out: &mut Vec<u64>) {
    square_prime_divisors_u128_from(g, 2, out)
}

fn square_prime_divisors_u128_from(mut rem: u128, start: u64, out: &mut Vec<u64>) {
    if rem == 0 {
        return;
    }
    let mut p = start as u128;
    while p * p * p <= rem {
        if rem.is_multiple_of(p) {
            let mut v = 0;
            while rem.is_multiple_of(p) {
                rem /= p;
                v += 1;
            }
            if v >= 2 {
                out.push(p as u64);
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if rem > 1 {
        let s = rem.sqrt();
        if s * s == rem {
            out.push(s as u64);
        }
    }
}

/// Defect report for an arbitrary model with `(A, B) ≠ (0, 0)`.
pub fn twist_defect(w: &WeierstrassPair) -> Result<DefectReport> {
    if w.a.is_zero() && w.b.is_zero() {
        return Err(Error::ZeroModel);
    }
    let ma = w.a.magnitude();
    let mb = w.b.magnitude();
    let g = ma.gcd(mb);
    let mut report = DefectReport {
        mindefect: BigUint::one(),
        twistdefect: BigUint::one(),
        per_prime: Vec::new(),
    };
    for p in square_prime_divisors(&g) {
        let ord_a = valuation_big(ma, p);
        let ord_b = valuation_big(mb, p);
        let twist_exponent = local_exponent(ord_a, ord_b, 2, 3);
        let min_exponent = local_exponent(ord_a, ord_b, 4, 6);
        report.twistdefect *= BigUint::from(p).pow(twist_exponent);
        report.mindefect *= BigUint::from(p).pow(min_exponent);
        report.per_prime.push(PrimeValuation {
            prime: p,
            ord_a,
            ord_b,
            twist_exponent,
            min_exponent,
        });
    }
    Ok(report)
}

fn require_generic(w: &WeierstrassPair) -> Result<()> {
    if w.a.is_zero() || w.b.is_zero() {
        Err(Error::SpecialJInvariant)
    } else {
        Ok(())
    }
}

/// `(A/e², |B|/e³)` for the twist defect `e`.
pub fn twist_minimal_model(w: &WeierstrassPair) -> Result<WeierstrassPair> {
    require_generic(w)?;
    let e = BigInt::from_biguint(Sign::Plus, twist_defect(w)?.twistdefect);
    let e2 = &e * &e;
    let e3 = &e2 * &e;
    Ok(WeierstrassPair {
        a: &w.a / e2,
        b: w.b.abs() / e3,
    })
}

/// `H(A, B)/e⁶` for the twist defect `e`.
pub fn twist_height(w: &WeierstrassPair) -> Result<BigUint> {
    Ok(height_h(&twist_minimal_model(w)?))
}

/// `y² = x³ + 1`, the twist-minimal model of smallest height with `j = 0`.
pub fn j_zero_model() -> WeierstrassPair {
    WeierstrassPair::new(0, 1)
}

/// `y² = x³ + x`, the twist-minimal model of smallest height with `j = 1728`.
pub fn j_1728_model() -> WeierstrassPair {
    WeierstrassPair::new(1, 0)
}
