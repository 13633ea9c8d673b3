use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Parses `"p"`, `"p/q"` or a decimal such as `"-1.25e-3"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseScalar(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_integer(p).ok_or_else(err)?;
        let q = parse_integer(q).ok_or_else(err)?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.trim_start_matches('+').parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => {
            let exp = &body[pos + 1..];
            let exp_digits = exp.strip_prefix(['+', '-']).unwrap_or(exp);
            if exp_digits.is_empty() || !exp_digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            (
                &body[..pos],
                exp.trim_start_matches('+').parse::<i64>().ok()?,
            )
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
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
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent.checked_sub(i64::try_from(frac_part.len()).ok()?)?;
    let ten = BigInt::from(10);
    let magnitude = u32::try_from(scale.unsigned_abs()).ok()?;
    let mut value = if scale >= 0 {
        Rational::from_integer(digits * ten.pow(magnitude))
    } else {
        Rational::new(digits, ten.pow(magnitude))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// Exact binary expansion of a finite float.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::ParseScalar(x.to_string()))
}

/// Nearest `f64`; saturates to ±inf outside the float range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("+4/-8").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25e-3").unwrap(), q(-1, 800));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("3.").unwrap(), q(3, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "", "abc", "1/0", "1/", "/2", "1.2.3", "e5", "1e", "--1", "1/2/3", ".",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(rational_from_f64(0.75).unwrap(), q(3, 4));
        let tenth = rational_from_f64(0.1).unwrap();
        assert_ne!(tenth, q(1, 10));
        assert_eq!(rational_to_f64(&tenth), 0.1);
        assert!(rational_from_f64(f64::NAN).is_err());
    }
}
