//! Serialization helpers shared by report documents.

use num_bigint::BigUint;
use serde::Serializer;

use crate::rational::{format_rational, Rational};

/// Big integers are written as decimal strings.
pub fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub fn ser_opt_biguint<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_biguint(v, s),
        None => s.serialize_none(),
    }
}

/// Rationals are written as `"num/den"`.
pub fn ser_rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

pub fn ser_opt_rational<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rational(v, s),
        None => s.serialize_none(),
    }
}
