//! Exact parsing of integer flags such as `1e9`, `2.5e10` or `1000000`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::CliError;

/// Largest exponent accepted, to keep `10^e` allocations sane.
const MAX_EXPONENT: u32 = 1000;

/// Parses a nonnegative integer written in plain or scientific notation.
/// The value must be an exact integer: `2.5e1` is fine, `2.5` is not.
pub fn parse_integer(s: &str) -> Result<BigUint, CliError> {
    let bad = || CliError::Parse(s.to_string());
    let t = s.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], &t[i + 1..]),
        None => (t, "0"),
    };
    let exp: i64 = exp
        .strip_prefix('+')
        .unwrap_or(exp)
        .parse()
        .map_err(|_| bad())?;
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let mut value: BigUint = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i64;
    if shift >= 0 {
        if shift > MAX_EXPONENT as i64 {
            return Err(bad());
        }
        value *= BigUint::from(10u32).pow(shift as u32);
    } else {
        let div = BigUint::from(10u32).pow((-shift).min(MAX_EXPONENT as i64 + 64) as u32);
        if &value % &div != BigUint::ZERO {
            return Err(bad());
        }
        value /= div;
    }
    Ok(value)
}

pub fn parse_u64(s: &str) -> Result<u64, CliError> {
    parse_integer(s)?
        .to_u64()
        .ok_or_else(|| CliError::Parse(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_integer("1e9").unwrap(), BigUint::from(10u64.pow(9)));
        assert_eq!(parse_integer("2.5e3").unwrap(), BigUint::from(2500u32));
        assert_eq!(parse_integer("103788").unwrap(), BigUint::from(103788u32));
        assert_eq!(parse_integer("1E+2").unwrap(), BigUint::from(100u32));
        assert_eq!(parse_integer("12.0").unwrap(), BigUint::from(12u32));
        assert_eq!(
            parse_integer("1e42").unwrap(),
            "1000000000000000000000000000000000000000000"
                .parse()
                .unwrap()
        );
    }

    #[test]
    fn rejects() {
        for s in [
            "", "e5", "-1", "2.5", "1e-1", "abc", "1e9x", "1.2.3", "1e100000",
        ] {
            assert!(parse_integer(s).is_err(), "{s}");
        }
        assert!(parse_u64("1e20").is_err());
    }
}
