//! Exact rational values.
//!
//! All value-level checks run on [`Rational`], an arbitrary-precision
//! reduced fraction. The interchange form is `<num>/<den>` in decimal, with
//! integers still written over a denominator (`0/1`, `1/1`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// `3^-n` exactly.
pub fn pow3_inv(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(3u8).pow(n))
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let (num, den) = match text.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if !den.is_positive() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn in_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}

/// Display-only decimal with `digits` digits after the point.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    if q.is_zero() {
        return format!("{:.*}", digits, 0.0);
    }
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = (q * Rational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits));
    }
    out
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_with_denominator() {
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&int(1)), "1/1");
        assert_eq!(format_rational(&ratio(-2, 6)), "-1/3");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0/1", "19/72", "-1/6", "3/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/8").unwrap(), half());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn decimal_display() {
        assert_eq!(to_decimal(&ratio(2, 3), 5), "0.66667");
        assert_eq!(to_decimal(&ratio(1, 2), 3), "0.500");
        assert_eq!(to_decimal(&int(0), 2), "0.00");
        assert_eq!(to_decimal(&ratio(-1, 6), 4), "-0.1667");
    }
}
