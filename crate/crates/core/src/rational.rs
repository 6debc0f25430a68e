//! Exact rational exponents and the integer power comparisons built on them.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A non-negative rational exponent such as ε or β.
pub type Rational = Ratio<u64>;

/// Parses `"num/den"` (or a bare integer) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("expected a rational \"num/den\", got {s:?}"));
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: u64 = num.parse().map_err(|_| bad())?;
    let den: u64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn big_pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// `floor(base^r)`, i.e. the largest `h` with `h^den <= base^num`.
///
/// Only exponents `r <= 1` are supported so that the answer fits in `base`.
pub fn floor_pow(base: u64, r: &Rational) -> u64 {
    assert!(*r <= Rational::one(), "floor_pow expects an exponent <= 1");
    if r.is_zero() || base <= 1 {
        return if base == 0 && !r.is_zero() { 0 } else { 1 };
    }
    let (num, den) = (*r.numer(), *r.denom());
    let rhs = big_pow(base, num);
    // invariant: lo^den <= rhs < (hi+1)^den
    let (mut lo, mut hi) = (1u64, base);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if big_pow(mid, den) <= rhs {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// `x > base^r` decided exactly as `x^den > base^num`.
pub fn exceeds_pow(x: u64, base: u64, r: &Rational) -> bool {
    big_pow(x, *r.denom()) > big_pow(base, *r.numer())
}

/// `x >= base^r` decided exactly.
pub fn at_least_pow(x: u64, base: u64, r: &Rational) -> bool {
    big_pow(x, *r.denom()) >= big_pow(base, *r.numer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!(parse_rational("1/4").unwrap(), Rational::new(1, 4));
        assert_eq!(parse_rational("2/4").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("1").unwrap(), Rational::one());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.25").is_err());
        assert!(parse_rational("-1/2").is_err());
    }

    #[test]
    fn floor_pow_boundaries() {
        assert_eq!(floor_pow(101, &Rational::one()), 101);
        assert_eq!(floor_pow(100, &Rational::new(1, 2)), 10);
        assert_eq!(floor_pow(99, &Rational::new(1, 2)), 9);
        assert_eq!(floor_pow(101, &Rational::new(1, 2)), 10);
        assert_eq!(floor_pow(1000, &Rational::new(1, 3)), 10);
        assert_eq!(floor_pow(999, &Rational::new(1, 3)), 9);
        assert_eq!(floor_pow(101, &Rational::new(2, 3)), 21);
        assert_eq!(floor_pow(2, &Rational::new(1, 3)), 1);
    }

    #[test]
    fn floor_pow_agrees_with_float_away_from_boundaries() {
        for base in 2..500u64 {
            for (n, d) in [(1u64, 2u64), (1, 3), (2, 3), (1, 4), (3, 7)] {
                let h = floor_pow(base, &Rational::new(n, d));
                let f = (base as f64).powf(n as f64 / d as f64);
                assert!((h as f64) <= f + 1e-9 && f < (h + 1) as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn threshold_comparisons() {
        let two_thirds = Rational::new(2, 3);
        // 101^(2/3) ~ 21.54
        assert!(!exceeds_pow(21, 101, &two_thirds));
        assert!(exceeds_pow(22, 101, &two_thirds));
        // 8^(2/3) = 4 exactly
        assert!(!exceeds_pow(4, 8, &two_thirds));
        assert!(at_least_pow(4, 8, &two_thirds));
    }
}
