//! Exact computation of representations
//! `a = 1/x_1^k + ... + 1/x_N^k (mod p)` with `1 <= x_i <= p^ε`, together
//! with the sum-product and exponential-sum machinery that controls them.
//!
//! - [`field`]: arithmetic in Z/pZ and deterministic primality
//! - [`base_sets`]: prime reciprocal base sets and smooth sets
//! - [`growth`]: residue sets, sumset/productset kernels, growth iteration
//! - [`exp_sums`]: exponential sums, bilinear bound, covering counts
//! - [`representer`]: minimal witnesses and N(ε, k, p) profiles
//! - [`cli`]: the `modrecip` command-line front end

pub mod base_sets;
pub mod cli;
pub mod convolution;
pub mod error;
pub mod exp_sums;
pub mod field;
pub mod growth;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod representer;

pub use base_sets::{
    build_prime_reciprocal_set, build_smooth_set, check_multiplicative_conditions, compute_u,
    primes_up_to, BaseSetSpec, DistinctnessReport, PrimeReciprocalSet, SmoothSet,
};
pub use error::{Error, Result};
pub use exp_sums::{
    check_covering_positivity, compute_j, covering_counts, f_profile, h_profile,
    pair_product_multiplicity, verify_bilinear_bound, CoveringCount, ExpSumProfile,
};
pub use field::{is_prime, make_field, mod_inv, recip_power, PrimeField, Residue};
pub use growth::{
    grow_step, grow_until, n_bound, productset, sumset, term_budget, GrowthConfig, GrowthOp,
    GrowthTrace, ResidueSet,
};
pub use rational::{parse_rational, Rational};
pub use representer::{
    base_reciprocals, min_terms, n_max, scan, verify_witness, LayerTable, ReprProblem, Witness,
};
