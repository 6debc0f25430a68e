//! Exact arithmetic in the prime field Z/pZ.
//!
//! All products go through `u128` so every modulus that fits in a `u64`
//! is handled without overflow.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Witness bases that make Miller-Rabin deterministic for every `u64`.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// when `gcd(a, m) != 1`.
pub fn inv_euclid(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The field Z/pZ for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Number of elements, as an index bound.
    #[inline]
    pub fn order(&self) -> usize {
        self.p as usize
    }

    pub fn elem(&self, value: u64) -> Residue {
        Residue {
            value: value % self.p,
            field: *self,
        }
    }

    pub fn zero(&self) -> Residue {
        self.elem(0)
    }

    pub fn one(&self) -> Residue {
        self.elem(1)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Canonical inverse via extended Euclid.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(inv_euclid(a, self.p).expect("nonzero residue is a unit mod a prime"))
    }

    /// Fermat inverse a^(p-2). Only used as a cross-check on `inv`.
    pub fn inv_fermat(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// `(x^k mod p)^-1`.
    pub fn recip_power(&self, x: u64, k: u32) -> Result<u64> {
        if x.is_multiple_of(self.p) {
            return Err(Error::NotInvertible { x, p: self.p });
        }
        let xk = self.pow(x, k as u64);
        self.inv(xk)
    }

    /// Smallest primitive root, found by testing 2, 3, 5, ... against the
    /// prime factors of p - 1.
    pub fn primitive_root(&self) -> u64 {
        let p = self.p;
        if p == 2 {
            return 1;
        }
        let factors = prime_factors(p - 1);
        (2..p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (p - 1) / q) != 1))
            .expect("every prime has a primitive root")
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}Z", self.p)
    }
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of a [`PrimeField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    field: PrimeField,
}

impl Residue {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn inv(&self) -> Result<Residue> {
        mod_inv(*self)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

pub fn make_field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

pub fn mod_inv(x: Residue) -> Result<Residue> {
    let v = x.field.inv(x.value)?;
    Ok(x.field.elem(v))
}

pub fn recip_power(x: u64, k: u32, field: PrimeField) -> Result<Residue> {
    field.recip_power(x, k).map(|v| field.elem(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(make_field(2).unwrap().modulus(), 2);
        assert_eq!(make_field(7).unwrap().modulus(), 7);
        assert_eq!(make_field(9), Err(Error::NotPrime(9)));
        assert_eq!(make_field(0), Err(Error::NotPrime(0)));
        assert_eq!(make_field(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), naive_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large_inputs() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(u64::MAX));
        // strong pseudoprime to bases 2..=37 would be above 3.3e24; these are
        // classic Carmichael / base-2 pseudoprimes
        for n in [561u64, 1105, 2047, 3_215_031_751, 3_825_123_056_546_413_051] {
            assert!(!is_prime(n), "{n}");
        }
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn mod_inv_examples() {
        let f = make_field(7).unwrap();
        assert_eq!(mod_inv(f.one()).unwrap().value(), 1);
        assert_eq!(mod_inv(f.elem(3)).unwrap().value(), 5);
        assert_eq!(mod_inv(f.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn recip_power_examples() {
        let f = make_field(7).unwrap();
        assert_eq!(recip_power(1, 5, f).unwrap().value(), 1);
        assert_eq!(recip_power(2, 2, f).unwrap().value(), 2);
        assert_eq!(
            recip_power(7, 1, f),
            Err(Error::NotInvertible { x: 7, p: 7 })
        );
    }

    #[test]
    fn euclid_matches_fermat() {
        let f = make_field(1_000_000_007).unwrap();
        for a in [1u64, 2, 3, 123_456_789, 1_000_000_006] {
            assert_eq!(f.inv(a).unwrap(), f.inv_fermat(a).unwrap());
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(make_field(2).unwrap().primitive_root(), 1);
        assert_eq!(make_field(7).unwrap().primitive_root(), 3);
        assert_eq!(make_field(101).unwrap().primitive_root(), 2);
        assert_eq!(make_field(41).unwrap().primitive_root(), 6);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(100), vec![2, 5]);
        assert_eq!(prime_factors(97), vec![97]);
    }
}
