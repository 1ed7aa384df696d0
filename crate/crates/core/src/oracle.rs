//! Brute-force ground truth by exhaustive enumeration over small symmetric
//! groups. Nothing here uses the formula routes.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{
    all_permutations, canonical_of_type, compose_raw, for_each_in_class, kappa_raw, long_cycle,
    Partition,
};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational, Var};

pub const MAX_N_ENV: &str = "CYCLEFORGE_MAX_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Largest n for walking a conjugacy class (or all of `S_n`).
    pub max_n_class: usize,
    /// Largest n for walking ordered pairs of n-cycles.
    pub max_n_pairs: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_n_class: 9,
            max_n_pairs: 7,
        }
    }
}

impl OracleConfig {
    /// Defaults, with both caps replaced by `CYCLEFORGE_MAX_N` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(cap) if cap > 0 => OracleConfig {
                max_n_class: cap,
                max_n_pairs: cap,
            },
            _ => OracleConfig::default(),
        }
    }

    fn check_class(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_n_class {
            return Err(Error::CapExceeded {
                what,
                n,
                cap: self.max_n_class,
            });
        }
        Ok(())
    }

    fn check_pairs(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_n_pairs {
            return Err(Error::CapExceeded {
                what,
                n,
                cap: self.max_n_pairs,
            });
        }
        Ok(())
    }
}

/// True when points `0..k` all lie in the cycle through 0.
fn first_k_share_cycle(images: &[usize], k: usize) -> bool {
    let mut hits = 0;
    let mut x = 0;
    loop {
        if x < k {
            hits += 1;
        }
        x = images[x];
        if x == 0 {
            break;
        }
    }
    hits == k
}

fn counts_to_poly(counts: Vec<u64>) -> Polynomial {
    let coeffs: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Polynomial::from_bigints(Var::Q, &coeffs)
}

/// Counts `w` of type `lambda` by the number of cycles of `fixed * w`.
fn cycle_count_poly(fixed: &[usize], lambda: &Partition) -> Polynomial {
    let mut counts = vec![0u64; lambda.n() + 1];
    for_each_in_class(lambda, |w| {
        counts[kappa_raw(&compose_raw(fixed, w))] += 1;
    });
    counts_to_poly(counts)
}

/// Sum over `w` of type `lambda` of `q^kappa((1,...,n) w)`, literally.
pub fn brute_p_lambda(lambda: &Partition, cfg: &OracleConfig) -> Result<Polynomial> {
    cfg.check_class("P_lambda enumeration", lambda.n())?;
    Ok(cycle_count_poly(long_cycle(lambda.n()).raw(), lambda))
}

/// Probability that `1..=k` share a cycle of `u v` for uniformly random
/// n-cycles `u, v`, over all ordered pairs.
pub fn brute_pi(n: usize, k: usize, cfg: &OracleConfig) -> Result<Rational> {
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { n, k });
    }
    cfg.check_pairs("n-cycle pair enumeration", n)?;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for_each_in_class(&Partition::single(n), |c| cycles.push(c.to_vec()));
    let hits: u64 = cycles
        .par_iter()
        .map(|u| {
            cycles
                .iter()
                .filter(|v| first_k_share_cycle(&compose_raw(u, v), k))
                .count() as u64
        })
        .sum();
    let total = (cycles.len() as u64).pow(2);
    Ok(Rational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Number of ordered pairs of n-cycles `(u, v)` with `u v` equal to the
/// canonical permutation of type `lambda`.
pub fn brute_boccara_count(lambda: &Partition, cfg: &OracleConfig) -> Result<BigInt> {
    let n = lambda.n();
    cfg.check_class("n-cycle enumeration", n)?;
    let w = canonical_of_type(lambda);
    let mut count = 0u64;
    // v = u^{-1} w must itself be an n-cycle
    for_each_in_class(&Partition::single(n), |u| {
        let mut inv = vec![0; n];
        for (i, &x) in u.iter().enumerate() {
            inv[x] = i;
        }
        if kappa_raw(&compose_raw(&inv, w.raw())) == 1 {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

/// `P_{lambda,mu}(q)` with the canonical representative of type `mu`.
///
/// For `n <= 6` every representative of the class of `mu` is tried and the
/// results must coincide.
pub fn brute_p_lambda_mu(
    lambda: &Partition,
    mu: &Partition,
    cfg: &OracleConfig,
) -> Result<Polynomial> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch {
            left: lambda.n(),
            right: mu.n(),
        });
    }
    cfg.check_class("P_lambda_mu enumeration", lambda.n())?;
    let poly = cycle_count_poly(canonical_of_type(mu).raw(), lambda);
    if lambda.n() <= 6 {
        let mut reps = Vec::new();
        for_each_in_class(mu, |r| reps.push(r.to_vec()));
        for rep in reps {
            let other = cycle_count_poly(&rep, lambda);
            if other != poly {
                return Err(Error::ClassFunctionViolation(format!(
                    "P_{lambda},{mu} differs between representatives: {poly} vs {other}"
                )));
            }
        }
    }
    Ok(poly)
}

/// Fraction of all `w` in `S_n` with `1..=k` in one cycle.
pub fn brute_same_cycle_uniform(n: usize, k: usize, cfg: &OracleConfig) -> Result<Rational> {
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { n, k });
    }
    cfg.check_class("S_n enumeration", n)?;
    let all = all_permutations(n);
    let hits = all.iter().filter(|w| first_k_share_cycle(w.raw(), k)).count();
    Ok(Rational::new(BigInt::from(hits), BigInt::from(all.len())))
}
