//! Exact rational helpers: base-10 parsing, canonical fraction text and
//! half-even decimal rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_integer(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"0.22"`, `"-1.5"`, `"3"`, `"50/103"` or `"1e-2"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidNumber(text.trim().to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(bad)?;
        let d = parse_decimal(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    Some(value)
}

/// Lowest-terms text: `"2/5"`, or `"1"` for integers.
pub fn format_fraction(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal text with `places` digits, rounding half to even.
pub fn format_decimal(r: &Rational, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10u8), places as usize);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u8;
    let mut q = q;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => q += 1u8,
        std::cmp::Ordering::Equal if q.is_odd() => q += 1u8,
        _ => {}
    }
    let sign = if r.is_negative() && !q.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{q}");
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let frac = frac_part.to_string();
    format!(
        "{sign}{int_part}.{}{frac}",
        "0".repeat(places as usize - frac.len())
    )
}

/// Lossy conversion for display and tolerance checks only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.4").unwrap(), rational(2, 5));
        assert_eq!(parse_rational("0.22").unwrap(), rational(11, 50));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("1.0").unwrap(), rational(1, 1));
        assert_eq!(parse_rational("-0.25").unwrap(), rational(-1, 4));
        assert_eq!(parse_rational("1e-2").unwrap(), rational(1, 100));
        assert_eq!(parse_rational("2.5E1").unwrap(), rational(25, 1));
    }

    #[test]
    fn fractions_reduce() {
        assert_eq!(parse_rational("50/103").unwrap(), rational(50, 103));
        assert_eq!(parse_rational("4/10").unwrap(), rational(2, 5));
        assert_eq!(parse_rational("0.1/1.01").unwrap(), rational(10, 101));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1..2", "0x10", "-", ".", "1/", "e5"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn fraction_text() {
        assert_eq!(format_fraction(&rational(6, 15)), "2/5");
        assert_eq!(format_fraction(&rational(3, 3)), "1");
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(format_decimal(&rational(4, 5), 4), "0.8000");
        assert_eq!(format_decimal(&rational(64, 75), 4), "0.8533");
        assert_eq!(format_decimal(&rational(1, 8), 2), "0.12");
        assert_eq!(format_decimal(&rational(3, 8), 2), "0.38");
        assert_eq!(format_decimal(&rational(5, 2), 0), "2");
        assert_eq!(format_decimal(&rational(-1, 3), 3), "-0.333");
        assert_eq!(format_decimal(&rational(1, 100_000), 4), "0.0000");
    }
}
