//! Base sets: sums of `u` distinct prime reciprocal powers, and smooth
//! multiplicative sets.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::growth::ResidueSet;
use crate::rational::{at_least_pow, floor_pow, Rational};

/// Largest integer strictly below `1/(2kβ)`.
pub fn compute_u(beta: Rational, k: u32) -> Result<u64> {
    if *beta.numer() == 0 {
        return Err(Error::NonPositiveBeta);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    // n < den / (2k num)  <=>  n <= (den - 1) / (2k num)
    let (num, den) = (*beta.numer() as u128, *beta.denom() as u128);
    let u = ((den - 1) / (2 * k as u128 * num)) as u64;
    if u < 1 {
        return Err(Error::NonPositiveU(u));
    }
    Ok(u)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for m in (i * i..=n).step_by(i) {
                composite[m] = true;
            }
        }
        i += 1;
    }
    (2..=n)
        .filter(|&i| !composite[i])
        .map(|i| i as u64)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseSetSpec {
    pub field: PrimeField,
    pub k: u32,
    pub beta: Rational,
    pub u: u64,
    pub u_overridden: bool,
}

impl BaseSetSpec {
    pub fn new(field: PrimeField, k: u32, beta: Rational) -> Result<Self> {
        check_beta(beta)?;
        let u = compute_u(beta, k)?;
        Ok(BaseSetSpec {
            field,
            k,
            beta,
            u,
            u_overridden: false,
        })
    }

    pub fn with_u(field: PrimeField, k: u32, beta: Rational, u: u64) -> Result<Self> {
        check_beta(beta)?;
        if k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if u == 0 {
            return Err(Error::NonPositiveU(0));
        }
        Ok(BaseSetSpec {
            field,
            k,
            beta,
            u,
            u_overridden: true,
        })
    }

    /// β < 1/(5k), the regime the growth argument is stated for.
    pub fn in_small_beta_regime(&self) -> bool {
        self.beta < Rational::new(1, 5 * self.k as u64)
    }

    /// `floor(p^β)`
    pub fn prime_height(&self) -> u64 {
        floor_pow(self.field.modulus(), &self.beta)
    }

    /// `p^((2u-1)kβ) < p/u`, checked as `u^den p^((2u-1)k num) < p^den`.
    pub fn distinctness_regime_holds(&self) -> bool {
        let p = BigUint::from(self.field.modulus());
        let (num, den) = (*self.beta.numer(), *self.beta.denom());
        let e = (2 * self.u - 1) * self.k as u64 * num;
        let lhs = BigUint::from(self.u).pow(den as u32) * p.pow(e as u32);
        lhs < p.pow(den as u32)
    }
}

fn check_beta(beta: Rational) -> Result<()> {
    if *beta.numer() == 0 {
        return Err(Error::NonPositiveBeta);
    }
    if beta >= Rational::new(1, 1) {
        return Err(Error::InvalidParameter("beta must lie in (0, 1)".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinctnessReport {
    pub prime_height: u64,
    pub prime_count: usize,
    pub tuple_count: u64,
    pub set_size: usize,
    pub regime_holds: bool,
    /// Size lower bound `p^(1/(2k) - β) / (u! log^u p)`; informational.
    pub size_lower_bound: f64,
    pub size_bound_holds: bool,
    pub small_beta_regime: bool,
}

/// The set `{1/p1^k + ... + 1/pu^k : 2 <= p1 < ... < pu <= p^β}`.
#[derive(Debug, Clone)]
pub struct PrimeReciprocalSet {
    pub spec: BaseSetSpec,
    pub primes: Vec<u64>,
    pub set: ResidueSet,
    pub report: DistinctnessReport,
}

/// Sum of reciprocal k-th powers of `tuple` modulo p.
pub fn tuple_reciprocal_sum(field: PrimeField, tuple: &[u64], k: u32) -> Result<u64> {
    tuple.iter().try_fold(0u64, |acc, &q| {
        field.recip_power(q, k).map(|r| field.add(acc, r))
    })
}

/// `sum_j prod_{i != j} q_i^k mod p`, the numerator obtained after clearing
/// the denominators of a reciprocal tuple sum.
pub fn cleared_numerator(field: PrimeField, tuple: &[u64], k: u32) -> u64 {
    let powers: Vec<u64> = tuple.iter().map(|&q| field.pow(q, k as u64)).collect();
    (0..powers.len()).fold(0, |acc, j| {
        let term = powers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .fold(1u64, |t, (_, &x)| field.mul(t, x));
        field.add(acc, term)
    })
}

fn for_each_tuple<F: FnMut(&[usize])>(n: usize, u: usize, first: usize, f: &mut F) {
    let mut idx: Vec<usize> = (first..first + u).collect();
    if u == 0 || first + u > n {
        return;
    }
    loop {
        f(&idx);
        // advance positions 1..u, keeping idx[0] == first
        let mut i = u;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            if idx[i] < n - (u - i) {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..u {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn ln_factorial(u: u64) -> f64 {
    (2..=u).map(|i| (i as f64).ln()).sum()
}

pub fn build_prime_reciprocal_set(spec: &BaseSetSpec) -> Result<PrimeReciprocalSet> {
    let field = spec.field;
    let height = spec.prime_height();
    let primes: Vec<u64> = primes_up_to(height)
        .into_iter()
        .filter(|&q| q % field.modulus() != 0)
        .collect();
    let u = spec.u as usize;
    if primes.len() < u {
        return Err(Error::EmptyBase {
            available: primes.len(),
            needed: u,
            height,
        });
    }
    let recips: Vec<u64> = primes
        .iter()
        .map(|&q| field.recip_power(q, spec.k))
        .collect::<Result<_>>()?;

    // parallel over the smallest prime of the tuple; merge is an OR, so the
    // result does not depend on scheduling
    let parts: Vec<(u64, Vec<u64>)> = (0..primes.len())
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            let mut values = Vec::new();
            for_each_tuple(primes.len(), u, first, &mut |idx| {
                count += 1;
                values.push(idx.iter().fold(0u64, |s, &i| field.add(s, recips[i])));
            });
            (count, values)
        })
        .collect();
    let mut bits = vec![false; field.order()];
    let mut tuple_count = 0u64;
    for (count, values) in parts {
        tuple_count += count;
        for v in values {
            bits[v as usize] = true;
        }
    }
    let set = ResidueSet::from_bits(field, bits);

    let lnp = (field.modulus() as f64).ln();
    let k = spec.k as f64;
    let beta = crate::rational::rational_to_f64(&spec.beta);
    let ln_bound = (1.0 / (2.0 * k) - beta) * lnp - ln_factorial(spec.u) - spec.u as f64 * lnp.ln();
    let size_lower_bound = ln_bound.exp();
    let report = DistinctnessReport {
        prime_height: height,
        prime_count: primes.len(),
        tuple_count,
        set_size: set.card(),
        regime_holds: spec.distinctness_regime_holds(),
        size_lower_bound,
        size_bound_holds: (set.card() as f64) > size_lower_bound,
        small_beta_regime: spec.in_small_beta_regime(),
    };
    Ok(PrimeReciprocalSet {
        spec: spec.clone(),
        primes,
        set,
        report,
    })
}

impl PrimeReciprocalSet {
    /// Lexicographically first prime tuple whose reciprocal sum is `r`.
    pub fn witness(&self, r: u64) -> Option<Vec<u64>> {
        let field = self.spec.field;
        let u = self.spec.u as usize;
        let recips: Vec<u64> = self
            .primes
            .iter()
            .map(|&q| field.recip_power(q, self.spec.k).expect("primes below p"))
            .collect();
        for first in 0..self.primes.len() {
            let mut found = None;
            for_each_tuple(self.primes.len(), u, first, &mut |idx| {
                if found.is_none()
                    && idx.iter().fold(0u64, |s, &i| field.add(s, recips[i])) == r % field.modulus()
                {
                    found = Some(idx.iter().map(|&i| self.primes[i]).collect());
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Integers in [1, p-1] together with their residues (identical, since
/// every label is below p).
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothSet {
    pub field: PrimeField,
    pub bound: u64,
    pub members: Vec<u64>,
}

impl SmoothSet {
    pub fn residues(&self) -> ResidueSet {
        ResidueSet::from_values(self.field, self.members.iter().copied())
    }
}

/// Integers in [1, p-1] with no prime factor above `smoothness_bound`.
pub fn build_smooth_set(field: PrimeField, smoothness_bound: u64) -> Result<SmoothSet> {
    if smoothness_bound < 2 {
        return Err(Error::InvalidParameter(
            "smoothness bound must be >= 2".into(),
        ));
    }
    let top = field.modulus() - 1;
    let mut smooth = vec![true; top as usize + 1];
    smooth[0] = false;
    for q in primes_up_to(top)
        .into_iter()
        .filter(|&q| q > smoothness_bound)
    {
        for m in (q..=top).step_by(q as usize) {
            smooth[m as usize] = false;
        }
    }
    let members = (1..=top).filter(|&n| smooth[n as usize]).collect();
    Ok(SmoothSet {
        field,
        bound: smoothness_bound,
        members,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicativeReport {
    pub contains_one: bool,
    /// s, t in S with st <= p-1 implies st in S
    pub closure: bool,
    pub closure_counterexample: Option<(u64, u64)>,
    /// `floor(p^ε)`
    pub height: u64,
    pub elements_up_to_height: usize,
    /// `p^(εθ)`, for display; the comparison itself is exact
    pub density_threshold: f64,
    pub density: bool,
}

pub fn check_multiplicative_conditions(
    members: &[u64],
    field: PrimeField,
    epsilon: Rational,
    theta: Rational,
) -> Result<MultiplicativeReport> {
    let p = field.modulus();
    if let Some(&bad) = members.iter().find(|&&s| s == 0 || s >= p) {
        return Err(Error::InvalidParameter(format!(
            "set element {bad} outside [1, p-1]"
        )));
    }
    if epsilon > Rational::new(1, 1) || *epsilon.numer() == 0 {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1]".into()));
    }
    let mut present = vec![false; p as usize];
    for &s in members {
        present[s as usize] = true;
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut counterexample = None;
    'outer: for (i, &s) in sorted.iter().enumerate() {
        for &t in &sorted[i..] {
            let st = s as u128 * t as u128;
            if st > (p - 1) as u128 {
                break;
            }
            if !present[st as usize] {
                counterexample = Some((s, t));
                break 'outer;
            }
        }
    }
    let height = floor_pow(p, &epsilon);
    let below = sorted.iter().filter(|&&s| s <= height).count();
    let exponent = epsilon * theta;
    let density_threshold = (p as f64).powf(crate::rational::rational_to_f64(&exponent));
    Ok(MultiplicativeReport {
        contains_one: present.get(1) == Some(&true),
        closure: counterexample.is_none(),
        closure_counterexample: counterexample,
        height,
        elements_up_to_height: below,
        density_threshold,
        density: at_least_pow(below as u64, p, &exponent),
    })
}
