//! Exponential sums over a set `T` and exact counts of representations as
//! sums of `J` pair products `t1 t2`.
//!
//! `e(x)` denotes `exp(2 pi i x)`.

use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::growth::{productset, sumset, ResidueSet};
use crate::rational::Rational;

fn unit(field: PrimeField, numer: u64) -> Complex64 {
    let theta = TAU * (numer % field.modulus()) as f64 / field.modulus() as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// `h(a) = sum_{t in T} e(at/p)` for every a, via a length-p DFT of the
/// characteristic vector.
pub fn h_profile(t: &ResidueSet) -> Vec<Complex64> {
    let n = t.field().order();
    let mut buf: Vec<Complex64> = t
        .bits()
        .iter()
        .map(|&b| Complex64::new(b as u8 as f64, 0.0))
        .collect();
    // the inverse transform carries the e(+at/p) sign convention
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf
}

/// Direct O(p|T|) evaluation of `h`.
pub fn h_profile_direct(t: &ResidueSet) -> Vec<Complex64> {
    let field = t.field();
    let members = t.to_vec();
    (0..field.modulus())
        .map(|a| members.iter().map(|&x| unit(field, field.mul(a, x))).sum())
        .collect()
}

/// `f(a) = sum_{t1,t2 in T} e(a t1 t2 / p)`, computed as `sum_{t2} h(a t2)`.
pub fn f_profile(t: &ResidueSet) -> Vec<Complex64> {
    f_from_h(t, &h_profile(t))
}

fn f_from_h(t: &ResidueSet, h: &[Complex64]) -> Vec<Complex64> {
    let field = t.field();
    let members = t.to_vec();
    (0..field.modulus())
        .into_par_iter()
        .map(|a| members.iter().map(|&x| h[field.mul(a, x) as usize]).sum())
        .collect()
}

/// Literal double sum; reference for [`f_profile`].
pub fn f_profile_direct(t: &ResidueSet) -> Vec<Complex64> {
    let field = t.field();
    let members = t.to_vec();
    (0..field.modulus())
        .map(|a| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &x in &members {
                let ax = field.mul(a, x);
                for &y in &members {
                    acc += unit(field, field.mul(ax, y));
                }
            }
            acc
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ExpSumProfile {
    pub field: PrimeField,
    pub set_size: usize,
    pub h: Vec<Complex64>,
    pub f: Vec<Complex64>,
    pub h_abs: Vec<f64>,
    pub f_abs: Vec<f64>,
    /// `f(0) = |T|^2`, exact.
    pub f0: u64,
}

impl ExpSumProfile {
    pub fn new(t: &ResidueSet) -> Self {
        let h = h_profile(t);
        let f = f_from_h(t, &h);
        let n = t.card() as u64;
        ExpSumProfile {
            field: t.field(),
            set_size: t.card(),
            h_abs: h.iter().map(|z| z.norm()).collect(),
            f_abs: f.iter().map(|z| z.norm()).collect(),
            h,
            f,
            f0: n * n,
        }
    }

    /// `|sum |h(a)|^2 - p|T|| / (p|T|)`
    pub fn parseval_relative_error(&self) -> f64 {
        let lhs: f64 = self.h_abs.iter().map(|x| x * x).sum();
        let rhs = self.field.modulus() as f64 * self.set_size as f64;
        if rhs == 0.0 {
            return lhs;
        }
        (lhs - rhs).abs() / rhs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BilinearReport {
    /// `max_{a != 0} |f(a)| / (sqrt(p)|T|)`
    pub max_ratio: f64,
    pub argmax: Option<u64>,
}

/// Relative slack allowed on `|f(a)| <= sqrt(p)|T|`.
pub const BILINEAR_TOLERANCE: f64 = 1e-9;

/// Checks `|f(a)| <= sqrt(p)|T|` for every `a != 0`.
pub fn verify_bilinear_bound(profile: &ExpSumProfile) -> Result<BilinearReport> {
    let bound = (profile.field.modulus() as f64).sqrt() * profile.set_size as f64;
    let mut report = BilinearReport {
        max_ratio: 0.0,
        argmax: None,
    };
    if bound == 0.0 {
        return Ok(report);
    }
    for (a, &v) in profile.f_abs.iter().enumerate().skip(1) {
        let ratio = v / bound;
        if ratio > 1.0 + BILINEAR_TOLERANCE {
            return Err(Error::BoundViolated { a: a as u64, ratio });
        }
        if report.argmax.is_none() || ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.argmax = Some(a as u64);
        }
    }
    Ok(report)
}

/// `floor(2(1+2β)/β) + 1`, evaluated exactly.
pub fn compute_j(beta: Rational) -> Result<u64> {
    let (a, b) = (*beta.numer() as u128, *beta.denom() as u128);
    if a == 0 {
        return Err(Error::NonPositiveBeta);
    }
    // 2(1 + 2a/b)/(a/b) = 2(b + 2a)/a
    Ok((2 * (b + 2 * a) / a + 1) as u64)
}

/// Floating-point variant for empirical exponents.
pub fn compute_j_real(beta: f64) -> Result<u64> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::NonPositiveBeta);
    }
    Ok((2.0 * (1.0 + 2.0 * beta) / beta).floor() as u64 + 1)
}

/// `w[m] = #{(t1, t2) in T x T : t1 t2 = m}`, ordered pairs.
pub fn pair_product_multiplicity(t: &ResidueSet) -> Vec<u64> {
    let field = t.field();
    let members = t.to_vec();
    let mut w = vec![0u64; field.order()];
    for &x in &members {
        for &y in &members {
            w[field.mul(x, y) as usize] += 1;
        }
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCount {
    pub r: u64,
    pub j: u64,
    pub count: BigUint,
}

/// Exact number of ordered J-tuples of pair products summing to each r.
pub fn covering_count_vector(t: &ResidueSet, j: u64) -> Result<Vec<BigUint>> {
    if j == 0 {
        return Err(Error::InvalidParameter("J must be >= 1".into()));
    }
    let field = t.field();
    let n = field.order();
    let w = pair_product_multiplicity(t);
    let support: Vec<(usize, u64)> = w
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(m, &c)| (m, c))
        .collect();
    let mut counts: Vec<BigUint> = w.iter().map(|&c| BigUint::from(c)).collect();
    for _ in 1..j {
        counts = (0..n)
            .into_par_iter()
            .map(|r| {
                let mut acc = BigUint::zero();
                for &(m, c) in &support {
                    let prev = &counts[(r + n - m) % n];
                    if !prev.is_zero() {
                        acc += prev * c;
                    }
                }
                acc
            })
            .collect();
    }
    Ok(counts)
}

pub fn covering_counts(t: &ResidueSet, j: u64) -> Result<Vec<CoveringCount>> {
    Ok(covering_count_vector(t, j)?
        .into_iter()
        .enumerate()
        .map(|(r, count)| CoveringCount {
            r: r as u64,
            j,
            count,
        })
        .collect())
}

/// `(1/p) sum_a f(a)^J e(-ar/p)`, in floating point.
pub fn covering_counts_fourier(t: &ResidueSet, j: u64) -> Vec<f64> {
    let profile = ExpSumProfile::new(t);
    let n = profile.field.order();
    let mut buf: Vec<Complex64> = profile.f.iter().map(|z| z.powu(j as u32)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|z| z.re / n as f64).collect()
}

/// Whether the floating-point covering evaluation is accurate to better than
/// 0.5 per entry: `(|T|^2)^J * J * 64 * eps < 0.5`.
pub fn fourier_gate(set_size: usize, j: u64) -> bool {
    let mass = (set_size as f64).powi(2 * j as i32);
    mass * j as f64 * 64.0 * f64::EPSILON < 0.5
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringReport {
    pub j: u64,
    pub set_size: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub min_count: BigUint,
    pub argmin: u64,
    pub all_covered: bool,
    pub uncovered: usize,
    /// `sum_r count(r) == |T|^(2J)`
    pub mass_conserved: bool,
    /// `|T| > p^(1/2)`
    pub above_sqrt: bool,
    /// `log_p |T| - 1/2`, when above the square root
    pub beta_empirical: Option<f64>,
    pub j_sufficient: Option<u64>,
    pub meets_sufficient: Option<bool>,
}

pub fn check_covering_positivity(t: &ResidueSet, j: u64) -> Result<CoveringReport> {
    let counts = covering_count_vector(t, j)?;
    let (argmin, min_count) = counts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(r, c)| (r as u64, c.clone()))
        .expect("p >= 2");
    let uncovered = counts.iter().filter(|c| c.is_zero()).count();
    let total: BigUint = counts.iter().sum();
    let size = t.card();
    let expected = BigUint::from(size as u64 * size as u64).pow(j as u32);
    let p = t.field().modulus();
    let above_sqrt = (size as u128) * (size as u128) > p as u128;
    let beta_empirical = above_sqrt.then(|| (size as f64).ln() / (p as f64).ln() - 0.5);
    let j_sufficient = beta_empirical.and_then(|b| compute_j_real(b).ok());
    Ok(CoveringReport {
        j,
        set_size: size,
        min_count,
        argmin,
        all_covered: uncovered == 0,
        uncovered,
        mass_conserved: total == expected,
        above_sqrt,
        beta_empirical,
        j_sufficient,
        meets_sufficient: j_sufficient.map(|js| j >= js),
    })
}

/// Smallest J for which every residue is a sum of J pair products, found
/// by iterating sumsets of `T·T`. `None` if not reached by `max_j`.
pub fn min_covering_j(t: &ResidueSet, max_j: u64) -> Option<u64> {
    let products = productset(t, t).ok()?;
    let mut layer = products.clone();
    for j in 1..=max_j {
        if layer.is_full() {
            return Some(j);
        }
        let next = sumset(&layer, &products).ok()?;
        if next == layer && j > 1 {
            return None;
        }
        layer = next;
    }
    None
}
