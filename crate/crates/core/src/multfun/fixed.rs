use alloc::string::String;
use core::fmt::Write;

const FRAC_BITS: u32 = 122;
const FRAC_MASK: u128 = (1u128 << FRAC_BITS) - 1;

/// Nonnegative fixed-point number with 122 fractional bits, for values below 64.
///
/// Every operation comes in a rounded-down and a rounded-up variant so that
/// interval endpoints can be carried with outward rounding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed(u128);

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const M: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & M);
    let (b1, b0) = (b >> 64, b & M);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & M) + (p10 & M);
    let lo = (p00 & M) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

impl Fixed {
    pub const ZERO: Fixed = Fixed(0);
    pub const ONE: Fixed = Fixed(1 << FRAC_BITS);

    pub fn from_raw(raw: u128) -> Self {
        Fixed(raw)
    }

    pub fn raw(self) -> u128 {
        self.0
    }

    /// `num/den` rounded down, or up when `up` is set.
    ///
    /// # Panics
    /// If `den = 0` or the quotient is not below 64.
    pub fn from_ratio(num: u64, den: u64, up: bool) -> Self {
        assert!(den != 0, "zero denominator");
        let q = num / den;
        assert!(q < 64, "fixed-point overflow");
        let den = den as u128;
        let mut r = (num % den as u64) as u128;
        let mut frac: u128 = 0;
        for _ in 0..FRAC_BITS {
            r <<= 1;
            frac <<= 1;
            if r >= den {
                r -= den;
                frac |= 1;
            }
        }
        let mut raw = ((q as u128) << FRAC_BITS) | frac;
        if up && r != 0 {
            raw += 1;
        }
        Fixed(raw)
    }

    /// Conversion from a nonnegative finite `f64` below 64, rounded in the
    /// given direction.
    pub fn from_f64(x: f64, up: bool) -> Self {
        assert!(
            x.is_finite() && (0.0..64.0).contains(&x),
            "value out of range"
        );
        let scaled = x * libm::ldexp(1.0, FRAC_BITS as i32);
        let mut raw = scaled as u128;
        if up && (raw as f64) < scaled {
            raw += 1;
        }
        Fixed(raw)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / libm::ldexp(1.0, FRAC_BITS as i32)
    }

    fn mul_rounded(self, o: Fixed, up: bool) -> Fixed {
        let (hi, lo) = mul_wide(self.0, o.0);
        assert!(hi >> FRAC_BITS == 0, "fixed-point overflow");
        let mut raw = (hi << (128 - FRAC_BITS)) | (lo >> FRAC_BITS);
        if up && lo & FRAC_MASK != 0 {
            raw += 1;
        }
        Fixed(raw)
    }

    pub fn mul_floor(self, o: Fixed) -> Fixed {
        self.mul_rounded(o, false)
    }

    pub fn mul_ceil(self, o: Fixed) -> Fixed {
        self.mul_rounded(o, true)
    }

    pub fn saturating_sub(self, o: Fixed) -> Fixed {
        Fixed(self.0.saturating_sub(o.0))
    }

    /// Decimal expansion truncated to `digits` fractional digits.
    pub fn to_decimal(self, digits: usize) -> String {
        let mut s = String::new();
        let _ = write!(s, "{}.", self.0 >> FRAC_BITS);
        let mut frac = self.0 & FRAC_MASK;
        for _ in 0..digits {
            frac *= 10;
            let _ = write!(s, "{}", frac >> FRAC_BITS);
            frac &= FRAC_MASK;
        }
        s
    }
}
