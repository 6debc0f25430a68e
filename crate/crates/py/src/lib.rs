//! Python bindings for the `modrecip` core.
//!
//! Rationals cross the boundary as strings such as `"1/3"`; residue sets are
//! wrapped in [`PyResidueSet`]. Every core error is raised as
//! `pymodrecip.ModRecipError`, whose message starts with the error kind.

use modrecip::exp_sums::{self, min_covering_j};
use modrecip::growth::{GrowthOp, Kernel};
use modrecip::representer::all_witnesses;
use modrecip::{
    parse_rational, Error, GrowthConfig, PrimeField, Rational, ReprProblem, ResidueSet, Witness,
};
use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pymodrecip, ModRecipError, PyValueError);

fn err(e: Error) -> PyErr {
    ModRecipError::new_err(format!("{}: {}", e.kind(), e))
}

fn field(p: u64) -> PyResult<PrimeField> {
    PrimeField::new(p).map_err(err)
}

fn rational(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn problem(p: u64, k: u32, epsilon: &str) -> PyResult<ReprProblem> {
    ReprProblem::new(field(p)?, k, rational(epsilon)?).map_err(err)
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// A subset of Z/pZ.
#[pyclass(
    name = "ResidueSet",
    module = "pymodrecip",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyResidueSet {
    inner: ResidueSet,
}

impl From<ResidueSet> for PyResidueSet {
    fn from(inner: ResidueSet) -> Self {
        PyResidueSet { inner }
    }
}

#[pymethods]
impl PyResidueSet {
    /// Values are reduced mod p.
    #[new]
    #[pyo3(signature = (p, values = Vec::new()))]
    fn new(p: u64, values: Vec<u64>) -> PyResult<Self> {
        Ok(ResidueSet::from_values(field(p)?, values).into())
    }

    #[staticmethod]
    fn full(p: u64) -> PyResult<Self> {
        Ok(ResidueSet::full(field(p)?).into())
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.field().modulus()
    }

    fn to_list(&self) -> Vec<u64> {
        self.inner.to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.card()
    }

    fn __contains__(&self, r: u64) -> bool {
        self.inner.contains(r % self.p())
    }

    fn __repr__(&self) -> String {
        format!("ResidueSet(p={}, size={})", self.p(), self.inner.card())
    }

    /// Sumset `A + B`.
    fn __add__(&self, other: &PyResidueSet) -> PyResult<Self> {
        sumset(self, other, "auto")
    }

    /// Productset `A · B`.
    fn __mul__(&self, other: &PyResidueSet) -> PyResult<Self> {
        productset(self, other, "auto")
    }
}

fn kernel(name: &str) -> PyResult<Kernel> {
    match name {
        "auto" => Ok(Kernel::Auto),
        "naive" => Ok(Kernel::Naive),
        "convolution" => Ok(Kernel::Convolution),
        other => Err(PyValueError::new_err(format!("unknown kernel {other:?}"))),
    }
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    modrecip::is_prime(n)
}

#[pyfunction]
fn mod_inv(x: u64, p: u64) -> PyResult<u64> {
    let f = field(p)?;
    modrecip::mod_inv(f.elem(x)).map(|r| r.value()).map_err(err)
}

/// `(x^k)^-1 mod p`.
#[pyfunction]
fn recip_power(x: u64, k: u32, p: u64) -> PyResult<u64> {
    field(p)?.recip_power(x, k).map_err(err)
}

#[pyfunction]
fn primes_up_to(bound: u64) -> Vec<u64> {
    modrecip::primes_up_to(bound)
}

#[pyfunction]
fn compute_u(beta: &str, k: u32) -> PyResult<u64> {
    modrecip::compute_u(rational(beta)?, k).map_err(err)
}

#[pyfunction]
fn compute_j(beta: &str) -> PyResult<u64> {
    modrecip::compute_j(rational(beta)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, kernel = "auto"))]
fn sumset(a: &PyResidueSet, b: &PyResidueSet, kernel: &str) -> PyResult<PyResidueSet> {
    let k = self::kernel(kernel)?;
    modrecip::growth::sumset_with(&a.inner, &b.inner, k)
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, kernel = "auto"))]
fn productset(a: &PyResidueSet, b: &PyResidueSet, kernel: &str) -> PyResult<PyResidueSet> {
    let k = self::kernel(kernel)?;
    modrecip::growth::productset_with(&a.inner, &b.inner, k)
        .map(Into::into)
        .map_err(err)
}

/// Returns `(final_set, trace)` where `trace` is a dict with the per-step
/// history, the step count `n` and the term bound `u^(2^n)` (or `None`).
#[pyfunction]
#[pyo3(signature = (s0, beta, u, k = 1, threshold_exponent = "2/3", max_iters = 64))]
fn grow_until<'py>(
    py: Python<'py>,
    s0: &PyResidueSet,
    beta: &str,
    u: u64,
    k: u32,
    threshold_exponent: &str,
    max_iters: usize,
) -> PyResult<(PyResidueSet, Bound<'py, PyDict>)> {
    let cfg = GrowthConfig {
        threshold_exponent: rational(threshold_exponent)?,
        max_iters,
        ..GrowthConfig::for_k(k)
    };
    let beta = rational(beta)?;
    let (set, trace) = py
        .detach(|| modrecip::grow_until(&s0.inner, &cfg, u, beta))
        .map_err(err)?;

    let steps = trace
        .steps
        .iter()
        .map(|s| {
            let d = PyDict::new(py);
            let op = match s.op {
                GrowthOp::Sum => "sum",
                GrowthOp::Product => "product",
            };
            d.set_item("op", op)?;
            d.set_item("size_before", s.size_before)?;
            d.set_item("size_after", s.size_after)?;
            d.set_item("theta_hat", s.theta_hat)?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let out = PyDict::new(py);
    out.set_item("steps", steps)?;
    out.set_item("n", trace.n)?;
    out.set_item("u", trace.u)?;
    out.set_item("term_bound", trace.term_bound.clone())?;
    out.set_item("monotone", trace.is_monotone())?;
    Ok((set.into(), out))
}

/// Returns `(set, primes, report)`.
#[pyfunction]
#[pyo3(signature = (p, k, beta, u = None))]
fn build_prime_reciprocal_set<'py>(
    py: Python<'py>,
    p: u64,
    k: u32,
    beta: &str,
    u: Option<u64>,
) -> PyResult<(PyResidueSet, Vec<u64>, Bound<'py, PyAny>)> {
    let (f, beta) = (field(p)?, rational(beta)?);
    let spec = match u {
        Some(u) => modrecip::BaseSetSpec::with_u(f, k, beta, u),
        None => modrecip::BaseSetSpec::new(f, k, beta),
    }
    .map_err(err)?;
    let built = py
        .detach(|| modrecip::build_prime_reciprocal_set(&spec))
        .map_err(err)?;
    let report = json_to_py(py, &built.report)?;
    Ok((built.set.into(), built.primes, report))
}

#[pyfunction]
fn build_smooth_set(p: u64, bound: u64) -> PyResult<PyResidueSet> {
    let s = modrecip::build_smooth_set(field(p)?, bound).map_err(err)?;
    Ok(s.residues().into())
}

/// Lexicographically smallest shortest `x` list with
/// `sum 1/x_i^k = a (mod p)` and `1 <= x_i <= floor(p^epsilon)`.
#[pyfunction]
fn min_terms(py: Python<'_>, a: u64, p: u64, k: u32, epsilon: &str) -> PyResult<Vec<u64>> {
    let pr = problem(p, k, epsilon)?;
    py.detach(|| modrecip::min_terms(a, &pr))
        .map(|w| w.xs)
        .map_err(err)
}

/// Returns `(n_max, per_residue)`.
#[pyfunction]
fn n_max(py: Python<'_>, p: u64, k: u32, epsilon: &str) -> PyResult<(u32, Vec<u32>)> {
    let pr = problem(p, k, epsilon)?;
    let prof = py.detach(|| modrecip::n_max(&pr)).map_err(err)?;
    Ok((prof.n_max, prof.per_residue))
}

/// Minimal witness for every residue, indexed by residue.
#[pyfunction]
fn witnesses(py: Python<'_>, p: u64, k: u32, epsilon: &str) -> PyResult<Vec<Vec<u64>>> {
    let pr = problem(p, k, epsilon)?;
    let all = py.detach(|| all_witnesses(&pr)).map_err(err)?;
    Ok(all.into_iter().map(|w| w.xs).collect())
}

#[pyfunction]
fn verify_witness(target: u64, xs: Vec<u64>, p: u64, k: u32, epsilon: &str) -> PyResult<bool> {
    let pr = problem(p, k, epsilon)?;
    Ok(modrecip::verify_witness(&Witness { target, xs }, &pr))
}

#[pyfunction]
fn h_profile(t: &PyResidueSet) -> Vec<Complex64> {
    modrecip::h_profile(&t.inner)
}

#[pyfunction]
fn f_profile(t: &PyResidueSet) -> Vec<Complex64> {
    modrecip::f_profile(&t.inner)
}

/// Exact counts of `x1 y1 + ... + xJ yJ = r` over `T`, indexed by `r`.
#[pyfunction]
fn covering_counts(py: Python<'_>, t: &PyResidueSet, j: u64) -> PyResult<Vec<BigUint>> {
    py.detach(|| exp_sums::covering_count_vector(&t.inner, j))
        .map_err(err)
}

#[pyfunction]
fn check_covering_positivity<'py>(
    py: Python<'py>,
    t: &PyResidueSet,
    j: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| modrecip::check_covering_positivity(&t.inner, j))
        .map_err(err)?;
    json_to_py(py, &report)
}

#[pyfunction]
#[pyo3(name = "min_covering_j")]
fn py_min_covering_j(t: &PyResidueSet, max_j: u64) -> Option<u64> {
    min_covering_j(&t.inner, max_j)
}

#[pymodule]
pub fn pymodrecip(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ModRecipError", m.py().get_type::<ModRecipError>())?;
    m.add_class::<PyResidueSet>()?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(mod_inv, m)?)?;
    m.add_function(wrap_pyfunction!(recip_power, m)?)?;
    m.add_function(wrap_pyfunction!(primes_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(compute_u, m)?)?;
    m.add_function(wrap_pyfunction!(compute_j, m)?)?;
    m.add_function(wrap_pyfunction!(sumset, m)?)?;
    m.add_function(wrap_pyfunction!(productset, m)?)?;
    m.add_function(wrap_pyfunction!(grow_until, m)?)?;
    m.add_function(wrap_pyfunction!(build_prime_reciprocal_set, m)?)?;
    m.add_function(wrap_pyfunction!(build_smooth_set, m)?)?;
    m.add_function(wrap_pyfunction!(min_terms, m)?)?;
    m.add_function(wrap_pyfunction!(n_max, m)?)?;
    m.add_function(wrap_pyfunction!(witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(h_profile, m)?)?;
    m.add_function(wrap_pyfunction!(f_profile, m)?)?;
    m.add_function(wrap_pyfunction!(covering_counts, m)?)?;
    m.add_function(wrap_pyfunction!(check_covering_positivity, m)?)?;
    m.add_function(wrap_pyfunction!(py_min_covering_j, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
