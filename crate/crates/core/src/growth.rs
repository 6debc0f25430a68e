//! Dense residue sets, exact sumset/productset kernels, and the greedy
//! sum-or-product growth iteration.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use crate::convolution::cyclic_indicator_convolution;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::rational::{exceeds_pow, Rational};

/// A subset of Z/pZ stored as a characteristic vector.
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueSet {
    field: PrimeField,
    bits: Vec<bool>,
    card: usize,
}

impl std::fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ResidueSet")
            .field("p", &self.field.modulus())
            .field("members", &self.to_vec())
            .finish()
    }
}

impl ResidueSet {
    pub fn empty(field: PrimeField) -> Self {
        ResidueSet {
            field,
            bits: vec![false; field.order()],
            card: 0,
        }
    }

    pub fn full(field: PrimeField) -> Self {
        ResidueSet {
            field,
            bits: vec![true; field.order()],
            card: field.order(),
        }
    }

    /// Builds a set from arbitrary integers, reducing each mod p.
    pub fn from_values<I: IntoIterator<Item = u64>>(field: PrimeField, values: I) -> Self {
        let p = field.modulus();
        let mut bits = vec![false; field.order()];
        for v in values {
            bits[(v % p) as usize] = true;
        }
        Self::from_bits(field, bits)
    }

    /// Takes ownership of a characteristic vector of length p.
    pub fn from_bits(field: PrimeField, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), field.order(), "characteristic vector length");
        let card = bits.iter().filter(|&&b| b).count();
        ResidueSet { field, bits, card }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn card(&self) -> usize {
        debug_assert_eq!(self.card, self.bits.iter().filter(|&&b| b).count());
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn is_full(&self) -> bool {
        self.card == self.bits.len()
    }

    #[inline]
    pub fn contains(&self, r: u64) -> bool {
        self.bits[(r % self.field.modulus()) as usize]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn union(&self, other: &ResidueSet) -> Result<ResidueSet> {
        same_field(self, other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a || b)
            .collect();
        Ok(ResidueSet::from_bits(self.field, bits))
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.field == other.field && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }
}

fn same_field(a: &ResidueSet, b: &ResidueSet) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch {
            left: a.field.modulus(),
            right: b.field.modulus(),
        });
    }
    Ok(())
}

/// Which algorithm realizes a set operation. All kernels produce identical
/// sets; `Auto` picks by operand size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Naive,
    Convolution,
    Auto,
}

impl Kernel {
    fn resolve(self, a: &ResidueSet, b: &ResidueSet) -> Kernel {
        match self {
            Kernel::Auto => {
                let pairs = a.card() as u64 * b.card() as u64;
                if pairs <= 32 * a.field.modulus() {
                    Kernel::Naive
                } else {
                    Kernel::Convolution
                }
            }
            k => k,
        }
    }
}

pub fn sumset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    sumset_with(a, b, Kernel::Auto)
}

pub fn productset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    productset_with(a, b, Kernel::Auto)
}

pub fn sumset_with(a: &ResidueSet, b: &ResidueSet, kernel: Kernel) -> Result<ResidueSet> {
    same_field(a, b)?;
    let field = a.field;
    match kernel.resolve(a, b) {
        Kernel::Convolution => match cyclic_indicator_convolution(&a.bits, &b.bits) {
            Some(counts) => Ok(ResidueSet::from_bits(
                field,
                counts.into_iter().map(|c| c >= 1).collect(),
            )),
            None => sumset_naive(a, b),
        },
        _ => sumset_naive(a, b),
    }
}

fn sumset_naive(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    let field = a.field;
    let mut bits = vec![false; field.order()];
    let bs = b.to_vec();
    for x in a.iter() {
        for &y in &bs {
            bits[field.add(x, y) as usize] = true;
        }
    }
    Ok(ResidueSet::from_bits(field, bits))
}

pub fn productset_with(a: &ResidueSet, b: &ResidueSet, kernel: Kernel) -> Result<ResidueSet> {
    same_field(a, b)?;
    match kernel.resolve(a, b) {
        Kernel::Convolution => Ok(productset_dlog(a, b, &DlogTable::new(a.field))),
        _ => productset_naive(a, b),
    }
}

fn productset_naive(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    let field = a.field;
    let mut bits = vec![false; field.order()];
    let bs = b.to_vec();
    for x in a.iter() {
        for &y in &bs {
            bits[field.mul(x, y) as usize] = true;
        }
    }
    Ok(ResidueSet::from_bits(field, bits))
}

/// Discrete logarithms relative to the smallest primitive root.
pub struct DlogTable {
    field: PrimeField,
    /// `exp[i] = g^i` for i in [0, p-1)
    exp: Vec<u64>,
    /// `log[x]` for nonzero x; `log[0]` is unused
    log: Vec<usize>,
}

impl DlogTable {
    pub fn new(field: PrimeField) -> Self {
        let g = field.primitive_root();
        let order = field.order() - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0usize; field.order()];
        let mut x = 1u64;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = field.mul(x, g);
        }
        DlogTable { field, exp, log }
    }

    pub fn log(&self, x: u64) -> Option<usize> {
        (!x.is_multiple_of(self.field.modulus())).then(|| self.log[x as usize])
    }

    pub fn exp(&self, i: usize) -> u64 {
        self.exp[i % self.exp.len()]
    }
}

/// Productset via additive convolution on the exponents in Z/(p-1)Z.
/// Zero is absorbing and handled separately.
pub fn productset_dlog(a: &ResidueSet, b: &ResidueSet, table: &DlogTable) -> ResidueSet {
    let field = a.field;
    let order = field.order() - 1;
    let lift = |s: &ResidueSet| {
        let mut v = vec![false; order];
        for x in s.iter().filter(|&x| x != 0) {
            v[table.log[x as usize]] = true;
        }
        v
    };
    let (la, lb) = (lift(a), lift(b));
    let mut bits = vec![false; field.order()];
    let counts = cyclic_indicator_convolution(&la, &lb);
    match counts {
        Some(counts) => {
            for (i, c) in counts.into_iter().enumerate() {
                if c > 0 {
                    bits[table.exp[i] as usize] = true;
                }
            }
        }
        None => {
            for i in (0..order).filter(|&i| la[i]) {
                for j in (0..order).filter(|&j| lb[j]) {
                    bits[table.exp[(i + j) % order] as usize] = true;
                }
            }
        }
    }
    let zero = (a.contains(0) && !b.is_empty()) || (b.contains(0) && !a.is_empty());
    bits[0] = zero;
    ResidueSet::from_bits(field, bits)
}

/// The operation chosen by one growth step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthOp {
    Sum,
    Product,
}

/// One greedy step: the larger of S+S and S·S, ties going to the product.
pub fn grow_step(s: &ResidueSet) -> (ResidueSet, GrowthOp) {
    let (sum, prod) = rayon::join(
        || sumset(s, s).expect("same field"),
        || productset(s, s).expect("same field"),
    );
    if sum.card() > prod.card() {
        (sum, GrowthOp::Sum)
    } else {
        (prod, GrowthOp::Product)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthConfig {
    /// Stop once |S| > p^threshold_exponent.
    pub threshold_exponent: Rational,
    pub max_iters: usize,
    /// Reported only.
    pub delta: Rational,
}

impl GrowthConfig {
    pub fn for_k(k: u32) -> Self {
        GrowthConfig {
            threshold_exponent: Rational::new(2, 3),
            max_iters: 64,
            delta: Rational::new(1, 4 * k as u64),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Rational::new(0, 1);
        let one = Rational::new(1, 1);
        if self.threshold_exponent <= zero || self.threshold_exponent >= one {
            return Err(Error::InvalidParameter(
                "threshold exponent must lie in (0, 1)".into(),
            ));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthStep {
    pub op: GrowthOp,
    pub size_before: usize,
    pub size_after: usize,
    /// ln(after)/ln(before) - 1, undefined when size_before <= 1.
    pub theta_hat: Option<f64>,
}

/// Above this many bits the term bound u^(2^n) is not materialized.
pub const TERM_BOUND_MAX_BITS: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTrace {
    pub steps: Vec<GrowthStep>,
    pub n: usize,
    pub u: u64,
    /// `u^(2^n)`, or `None` when it exceeds [`TERM_BOUND_MAX_BITS`].
    pub term_bound: Option<BigUint>,
    pub term_bound_overflow: bool,
    /// `2^n * beta`
    pub height_exponent: Ratio<u128>,
    /// Steps whose chosen set is smaller than its input.
    pub shrinking_steps: Vec<usize>,
}

impl GrowthTrace {
    fn new(steps: Vec<GrowthStep>, u: u64, beta: Rational) -> Self {
        let n = steps.len();
        let (term_bound, term_bound_overflow) = term_bound(u, n);
        let shrinking_steps = steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.size_after < s.size_before)
            .map(|(i, _)| i)
            .collect();
        let height_exponent =
            Ratio::new(*beta.numer() as u128, *beta.denom() as u128) * Ratio::from(1u128 << n);
        GrowthTrace {
            steps,
            n,
            u,
            term_bound,
            term_bound_overflow,
            height_exponent,
            shrinking_steps,
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.shrinking_steps.is_empty()
    }

    pub fn min_theta_hat(&self) -> Option<f64> {
        self.steps
            .iter()
            .filter_map(|s| s.theta_hat)
            .min_by(|a, b| a.total_cmp(b))
    }
}

fn term_bound(u: u64, n: usize) -> (Option<BigUint>, bool) {
    if u <= 1 {
        return (Some(BigUint::from(u)), false);
    }
    let bits_per = 64 - u.leading_zeros() as u64;
    let too_big = n >= 63 || (1u64 << n).saturating_mul(bits_per) > TERM_BOUND_MAX_BITS;
    if too_big {
        (None, true)
    } else {
        (Some(BigUint::from(u).pow(1u32 << n)), false)
    }
}

/// Iterates [`grow_step`] until |S| > p^threshold_exponent.
pub fn grow_until(
    s0: &ResidueSet,
    cfg: &GrowthConfig,
    u: u64,
    beta: Rational,
) -> Result<(ResidueSet, GrowthTrace)> {
    cfg.validate()?;
    if s0.is_empty() {
        return Err(Error::InvalidParameter("initial set is empty".into()));
    }
    let p = s0.field().modulus();
    let mut cur = s0.clone();
    let mut steps = Vec::new();
    while !exceeds_pow(cur.card() as u64, p, &cfg.threshold_exponent) {
        if steps.len() >= cfg.max_iters {
            return Err(Error::IterationCap(cfg.max_iters));
        }
        let (next, op) = grow_step(&cur);
        if next == cur {
            return Err(Error::Stalled {
                step: steps.len(),
                size: cur.card(),
            });
        }
        let (before, after) = (cur.card(), next.card());
        let theta_hat = (before > 1).then(|| (after as f64).ln() / (before as f64).ln() - 1.0);
        steps.push(GrowthStep {
            op,
            size_before: before,
            size_after: after,
            theta_hat,
        });
        cur = next;
    }
    Ok((cur, GrowthTrace::new(steps, u, beta)))
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::NonPositiveTheta(theta));
    }
    Ok(())
}

/// `log(3k)/log(1+θ) + 1`, the bound on the number of growth steps.
pub fn n_bound(k: u32, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok((3.0 * k as f64).ln() / theta.ln_1p() + 1.0)
}

/// `u^(2^ceil(log(3k)/log(1+θ)))`.
pub fn term_budget(u: u64, k: u32, theta: f64) -> Result<BigUint> {
    check_theta(theta)?;
    if u <= 1 {
        return Ok(BigUint::from(u));
    }
    let e = ((3.0 * k as f64).ln() / theta.ln_1p()).ceil() as u64;
    let bits_per = 64 - u.leading_zeros() as u64;
    if e >= 32 || (1u64 << e).saturating_mul(bits_per) > (1 << 24) {
        return Err(Error::BudgetTooLarge(e));
    }
    Ok(BigUint::from(u).pow(1u32 << e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn set(p: u64, xs: &[u64]) -> ResidueSet {
        ResidueSet::from_values(make_field(p).unwrap(), xs.iter().copied())
    }

    const KERNELS: [Kernel; 3] = [Kernel::Naive, Kernel::Convolution, Kernel::Auto];

    #[test]
    fn sumset_examples() {
        let a = set(11, &[3, 5, 9]);
        for k in KERNELS {
            assert_eq!(sumset_with(&a, &set(11, &[0]), k).unwrap(), a);
            assert_eq!(
                sumset_with(&set(5, &[1, 2]), &set(5, &[1, 2]), k)
                    .unwrap()
                    .to_vec(),
                vec![2, 3, 4]
            );
            let full = ResidueSet::full(a.field());
            assert!(sumset_with(&full, &a, k).unwrap().is_full());
        }
    }

    #[test]
    fn productset_examples() {
        let a = set(11, &[0, 3, 5, 9]);
        for k in KERNELS {
            assert_eq!(productset_with(&set(11, &[1]), &a, k).unwrap(), a);
            assert_eq!(
                productset_with(&set(7, &[2, 3]), &set(7, &[2, 3]), k)
                    .unwrap()
                    .to_vec(),
                vec![2, 4, 6]
            );
            assert_eq!(
                productset_with(&set(11, &[0]), &set(11, &[4, 7]), k)
                    .unwrap()
                    .to_vec(),
                vec![0]
            );
            let empty = ResidueSet::empty(a.field());
            assert!(productset_with(&set(11, &[0]), &empty, k)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn field_mismatch() {
        let e = sumset(&set(5, &[1]), &set(7, &[1])).unwrap_err();
        assert_eq!(e, Error::FieldMismatch { left: 5, right: 7 });
        assert!(productset(&set(5, &[1]), &set(7, &[1])).is_err());
    }

    #[test]
    fn p_two_dlog() {
        let f = make_field(2).unwrap();
        let a = ResidueSet::full(f);
        assert!(productset_with(&a, &a, Kernel::Convolution)
            .unwrap()
            .is_full());
    }

    #[test]
    fn grow_step_examples() {
        let (s, op) = grow_step(&set(7, &[0]));
        assert_eq!((s.to_vec(), op), (vec![0], GrowthOp::Product));
        let (s, op) = grow_step(&set(7, &[1, 2]));
        assert_eq!((s.to_vec(), op), (vec![1, 2, 4], GrowthOp::Product));
    }

    #[test]
    fn grow_step_on_reciprocal_base() {
        // 4x4 tables over p = 101 enumerated by hand:
        // sums   {102,85,132,80,68,115,63,162,110,58} -> 10 residues
        // products -> 10 residues as well, so the tie goes to the product
        let s = set(101, &[51, 34, 81, 29]);
        let mut sums = std::collections::BTreeSet::new();
        let mut prods = std::collections::BTreeSet::new();
        for x in [51u64, 34, 81, 29] {
            for y in [51u64, 34, 81, 29] {
                sums.insert((x + y) % 101);
                prods.insert(x * y % 101);
            }
        }
        let (next, op) = grow_step(&s);
        if sums.len() > prods.len() {
            assert_eq!(op, GrowthOp::Sum);
            assert_eq!(next.to_vec(), sums.into_iter().collect::<Vec<_>>());
        } else {
            assert_eq!(op, GrowthOp::Product);
            assert_eq!(next.to_vec(), prods.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn grow_until_edge_cases() {
        let cfg = GrowthConfig::for_k(1);
        let big = ResidueSet::from_values(make_field(101).unwrap(), 0..30);
        let (out, trace) = grow_until(&big, &cfg, 1, Rational::new(1, 4)).unwrap();
        assert_eq!(out, big);
        assert_eq!(trace.n, 0);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.term_bound, Some(BigUint::from(1u32)));

        let err = grow_until(&set(101, &[0]), &cfg, 1, Rational::new(1, 4)).unwrap_err();
        assert_eq!(err, Error::Stalled { step: 0, size: 1 });

        let mut capped = cfg.clone();
        capped.max_iters = 1;
        let err = grow_until(
            &set(101, &[51, 34, 81, 29]),
            &capped,
            1,
            Rational::new(1, 4),
        );
        assert_eq!(err.unwrap_err(), Error::IterationCap(1));
    }

    #[test]
    fn grow_until_base_set_101() {
        let cfg = GrowthConfig::for_k(1);
        let s0 = set(101, &[51, 34, 81, 29]);
        let (out, trace) = grow_until(&s0, &cfg, 1, Rational::new(1, 4)).unwrap();
        assert!(out.card() >= 22);
        assert!(trace.n >= 1);
        assert!(trace.is_monotone());
        assert_eq!(trace.steps.last().unwrap().size_after, out.card());
        assert_eq!(trace.height_exponent, Ratio::new(1u128 << trace.n, 4u128));
    }

    #[test]
    fn trace_term_bound_exact() {
        let steps = vec![
            GrowthStep {
                op: GrowthOp::Sum,
                size_before: 2,
                size_after: 3,
                theta_hat: None
            };
            3
        ];
        let t = GrowthTrace::new(steps, 3, Rational::new(1, 8));
        assert_eq!(t.term_bound, Some(BigUint::from(3u32).pow(8)));
        assert_eq!(t.height_exponent, Ratio::from(1u128));
        let t = GrowthTrace::new(vec![], 2, Rational::new(1, 8));
        assert_eq!(t.term_bound, Some(BigUint::from(2u32)));
        let (b, over) = term_bound(2, 20);
        assert!(b.is_none() && over);
    }

    #[test]
    fn n_bound_examples() {
        let b = n_bound(1, 1.0).unwrap();
        assert!((b - (3f64.ln() / 2f64.ln() + 1.0)).abs() < 1e-12);
        assert!((b - 2.584_962_500_721_156).abs() < 1e-12);
        assert!((n_bound(2, 1.0).unwrap() - 3.584_962_500_721_156).abs() < 1e-12);
        assert_eq!(n_bound(1, 0.0), Err(Error::NonPositiveTheta(0.0)));
    }

    #[test]
    fn term_budget_examples() {
        assert_eq!(term_budget(1, 7, 0.01).unwrap(), BigUint::from(1u32));
        assert_eq!(term_budget(2, 1, 1.0).unwrap(), BigUint::from(16u32));
        assert_eq!(term_budget(3, 1, 1.0).unwrap(), BigUint::from(81u32));
        assert!(matches!(
            term_budget(2, 1, -1.0),
            Err(Error::NonPositiveTheta(_))
        ));
        assert!(matches!(
            term_budget(2, 1, 1e-6),
            Err(Error::BudgetTooLarge(_))
        ));
    }
}
