//! Exact rational scalars and their text forms.
//!
//! Every coordinate, breakpoint and distance in the crate is a [`Rational`].
//! Literals accept integers (`7`), decimals (`-3.25`) and fractions (`-13/4`);
//! decimals are converted exactly, so `0.1` is `1/10`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty literal")]
    Empty,
    #[error("non-finite literal `{0}`")]
    NonFinite(String),
    #[error("malformed literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let value: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -value } else { value })
}

/// Parses an exact rational literal.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let lower = s.trim_start_matches(['+', '-']).to_ascii_lowercase();
    if matches!(lower.as_str(), "inf" | "infinity" | "nan") {
        return Err(RationalParseError::NonFinite(s.to_string()));
    }
    let malformed = || RationalParseError::Malformed(s.to_string());

    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(malformed)?;
        let den = den.trim();
        if den.starts_with(['+', '-']) {
            return Err(malformed());
        }
        let den = parse_integer(den).ok_or_else(malformed)?;
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }

    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.strip_prefix(['+', '-']).unwrap_or(whole);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let all: BigInt = format!("{whole_digits}{frac}")
            .parse()
            .map_err(|_| malformed())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let value = Rational::new(all, scale);
        return Ok(if negative { -value } else { value });
    }

    parse_integer(s).map(Rational::from_integer).ok_or_else(malformed)
}

/// Renders `value` rounded half away from zero to `digits` decimal places.
pub fn to_decimal_string(value: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Nearest `f64`; saturates to infinity for values outside the `f64` range.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Formats a real with `digits` significant digits in shortest form.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x);
    format!("{rounded}")
}

/// Least common multiple of the denominators, for moving a set of
/// rationals onto a common integer grid.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Helper so `Display` of a rational never depends on the backing crate.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3.25").unwrap(), ratio(-13, 4));
        assert_eq!(parse_rational("-13/4").unwrap(), ratio(-13, 4));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("+2.50").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(parse_rational("inf"), Err(RationalParseError::NonFinite(_))));
        assert!(matches!(parse_rational("-NaN"), Err(RationalParseError::NonFinite(_))));
        assert!(matches!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator(_))));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("a").is_err());
    }

    #[test]
    fn decimal_rendering_rounds_exactly() {
        assert_eq!(to_decimal_string(&ratio(2, 3), 4), "0.6667");
        assert_eq!(to_decimal_string(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal_string(&ratio(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal_string(&int(9), 0), "9");
        assert_eq!(format_significant(2.0 / 3.0, 15), "0.666666666666667");
    }

    #[test]
    fn exact_display_matches_parser() {
        for v in [ratio(-13, 4), int(0), int(12), ratio(1, 10)] {
            assert_eq!(parse_rational(&Exact(&v).to_string()).unwrap(), v);
        }
    }
}
