//! Arbitrary-precision rationals and a few conveniences around them.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    q(1, 2)
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

pub fn is_one(x: &Rational) -> bool {
    x.is_one()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `a`, `a/b`, or a finite decimal such as `0.3`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(String::from(s));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| err())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| err())?;
        let magnitude = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole);
        return Ok(if negative { whole - magnitude } else { whole + magnitude });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err())
}

/// Reduces `x` modulo the prime `p`. Returns `None` when `p` divides the
/// denominator.
pub fn mod_prime(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let reduce = |v: &BigInt| -> u64 {
        let r = ((v % &pb) + &pb) % &pb;
        r.try_into().unwrap_or(0)
    };
    let num = reduce(x.numer());
    let den = reduce(x.denom());
    if den == 0 {
        return None;
    }
    Some(num * inverse_mod(den, p) % p)
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut result = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/10").unwrap(), q(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), q(3, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn half_mod_101() {
        assert_eq!(mod_prime(&half(), 101), Some(51));
        assert_eq!(mod_prime(&q(-1, 1), 101), Some(100));
        assert_eq!(mod_prime(&q(1, 101), 101), None);
    }
}
