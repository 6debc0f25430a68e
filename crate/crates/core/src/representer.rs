//! Minimal representations `a = 1/x_1^k + ... + 1/x_N^k (mod p)` with
//! `1 <= x_i <= H`, found by layered reachability over sumsets.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::growth::{sumset, ResidueSet};
use crate::rational::{floor_pow, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct ReprProblem {
    pub field: PrimeField,
    pub k: u32,
    /// `None` when the height was given directly.
    pub epsilon: Option<Rational>,
    /// `H = floor(p^ε)`
    pub height: u64,
}

impl ReprProblem {
    pub fn new(field: PrimeField, k: u32, epsilon: Rational) -> Result<Self> {
        if *epsilon.numer() == 0 || epsilon > Rational::new(1, 1) {
            return Err(Error::InvalidParameter("epsilon must lie in (0, 1]".into()));
        }
        let mut problem = Self::with_height(field, k, 1)?;
        problem.height = floor_pow(field.modulus(), &epsilon);
        problem.epsilon = Some(epsilon);
        Ok(problem)
    }

    pub fn with_height(field: PrimeField, k: u32, height: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if height == 0 {
            return Err(Error::InvalidParameter("height must be >= 1".into()));
        }
        Ok(ReprProblem {
            field,
            k,
            epsilon: None,
            height,
        })
    }

    pub fn is_admissible(&self, x: u64) -> bool {
        (1..=self.height).contains(&x) && !x.is_multiple_of(self.field.modulus())
    }

    /// `(x, 1/x^k)` for every admissible x, ascending in x.
    pub fn reciprocal_table(&self) -> Vec<(u64, u64)> {
        (1..=self.height)
            .filter(|&x| self.is_admissible(x))
            .map(|x| (x, self.field.recip_power(x, self.k).expect("admissible")))
            .collect()
    }
}

pub fn base_reciprocals(problem: &ReprProblem) -> ResidueSet {
    ResidueSet::from_values(
        problem.field,
        problem.reciprocal_table().into_iter().map(|(_, r)| r),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub target: u64,
    pub xs: Vec<u64>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Recomputes the congruence from scratch.
pub fn verify_witness(w: &Witness, problem: &ReprProblem) -> bool {
    let field = problem.field;
    if w.xs.is_empty() || !w.xs.iter().all(|&x| problem.is_admissible(x)) {
        return false;
    }
    let mut acc = 0u64;
    for &x in &w.xs {
        match field.recip_power(x, problem.k) {
            Ok(r) => acc = field.add(acc, r),
            Err(_) => return false,
        }
    }
    acc == w.target % field.modulus()
}

enum Until {
    Covered(u64),
    Everything,
}

/// Layers `R_1` (single reciprocals) and `R_{j+1} = R_j + R_1`.
#[derive(Debug, Clone)]
pub struct LayerTable {
    problem: ReprProblem,
    recips: Vec<(u64, u64)>,
    /// smallest x with 1/x^k = r, indexed by r
    first_x: Vec<Option<u64>>,
    layers: Vec<ResidueSet>,
    coverage: Vec<Option<u32>>,
    covered: usize,
}

impl LayerTable {
    /// Builds layers until every residue is covered.
    pub fn build(problem: &ReprProblem) -> Result<Self> {
        Self::build_until(problem, Until::Everything)
    }

    fn build_until(problem: &ReprProblem, until: Until) -> Result<Self> {
        let field = problem.field;
        let recips = problem.reciprocal_table();
        let mut first_x = vec![None; field.order()];
        for &(x, r) in &recips {
            first_x[r as usize].get_or_insert(x);
        }
        let base = ResidueSet::from_values(field, recips.iter().map(|&(_, r)| r));
        let mut table = LayerTable {
            problem: problem.clone(),
            recips,
            first_x,
            layers: Vec::new(),
            coverage: vec![None; field.order()],
            covered: 0,
        };
        table.push(base.clone());
        loop {
            let done = match until {
                Until::Covered(a) => table.coverage[(a % field.modulus()) as usize].is_some(),
                Until::Everything => table.covered == field.order(),
            };
            if done {
                return Ok(table);
            }
            if table.layers.len() as u64 >= field.modulus() {
                return Err(Error::IterationCap(table.layers.len()));
            }
            let last = table.layers.last().expect("nonempty");
            let next = sumset(last, &base)?;
            if &next == last {
                return Err(Error::Unreachable(table.uncovered()));
            }
            table.push(next);
        }
    }

    fn push(&mut self, layer: ResidueSet) {
        let j = self.layers.len() as u32 + 1;
        for r in layer.iter() {
            let slot = &mut self.coverage[r as usize];
            if slot.is_none() {
                *slot = Some(j);
                self.covered += 1;
            }
        }
        self.layers.push(layer);
    }

    pub fn layers(&self) -> &[ResidueSet] {
        &self.layers
    }

    /// Minimal number of terms for `a`, if covered by the built layers.
    pub fn coverage_index(&self, a: u64) -> Option<u32> {
        self.coverage[(a % self.problem.field.modulus()) as usize]
    }

    pub fn uncovered(&self) -> Vec<u64> {
        (0..self.problem.field.modulus())
            .filter(|&r| self.coverage[r as usize].is_none())
            .collect()
    }

    /// Lexicographically smallest witness of minimal length.
    pub fn witness(&self, a: u64) -> Option<Witness> {
        let field = self.problem.field;
        let target = a % field.modulus();
        let n = self.coverage_index(target)? as usize;
        let mut xs = Vec::with_capacity(n);
        let mut rem = target;
        for level in (1..=n).rev() {
            let x = if level == 1 {
                self.first_x[rem as usize]?
            } else {
                let below = &self.layers[level - 2];
                let &(x, r) = self
                    .recips
                    .iter()
                    .find(|&&(_, r)| below.contains(field.sub(rem, r)))?;
                rem = field.sub(rem, r);
                x
            };
            xs.push(x);
        }
        Some(Witness { target, xs })
    }
}

pub fn min_terms(a: u64, problem: &ReprProblem) -> Result<Witness> {
    let table = LayerTable::build_until(problem, Until::Covered(a))?;
    let w = table.witness(a).expect("covered residue has a witness");
    debug_assert!(verify_witness(&w, problem));
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NMaxProfile {
    pub n_max: u32,
    /// minimal N for each residue 0..p
    pub per_residue: Vec<u32>,
    pub layers_built: usize,
    pub base_size: usize,
}

pub fn n_max(problem: &ReprProblem) -> Result<NMaxProfile> {
    let table = LayerTable::build(problem)?;
    n_max_from_table(&table)
}

fn n_max_from_table(table: &LayerTable) -> Result<NMaxProfile> {
    let per_residue: Vec<u32> = table
        .coverage
        .iter()
        .map(|c| c.ok_or_else(|| Error::Unreachable(table.uncovered())))
        .collect::<Result<_>>()?;
    Ok(NMaxProfile {
        n_max: per_residue.iter().copied().max().unwrap_or(0),
        per_residue,
        layers_built: table.layers.len(),
        base_size: table.layers[0].card(),
    })
}

/// Minimal witnesses for every residue from a single layer table.
pub fn all_witnesses(problem: &ReprProblem) -> Result<Vec<Witness>> {
    let table = LayerTable::build(problem)?;
    (0..problem.field.modulus())
        .map(|a| table.witness(a).ok_or_else(|| Error::Unreachable(vec![a])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: u64,
    #[serde(rename = "H")]
    pub height: u64,
    pub base_size: usize,
    pub n_max: Option<u32>,
    pub max_layer: usize,
    pub elapsed_ms: Option<u128>,
    pub error: Option<String>,
}

/// One row per prime in `primes`, in increasing order of p. Wall-clock
/// timings are recorded only when `timing` is set.
pub fn scan(primes: RangeInclusive<u64>, k: u32, epsilon: Rational, timing: bool) -> Vec<ScanRow> {
    let list: Vec<u64> = primes.filter(|&p| is_prime(p)).collect();
    list.into_par_iter()
        .map(|p| {
            let start = Instant::now();
            let field = PrimeField::new(p).expect("filtered to primes");
            let mut row = ScanRow {
                p,
                height: 0,
                base_size: 0,
                n_max: None,
                max_layer: 0,
                elapsed_ms: None,
                error: None,
            };
            match ReprProblem::new(field, k, epsilon).and_then(|pr| {
                row.height = pr.height;
                n_max(&pr)
            }) {
                Ok(prof) => {
                    row.base_size = prof.base_size;
                    row.n_max = Some(prof.n_max);
                    row.max_layer = prof.layers_built;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            if timing {
                row.elapsed_ms = Some(start.elapsed().as_millis());
            }
            row
        })
        .collect()
}
