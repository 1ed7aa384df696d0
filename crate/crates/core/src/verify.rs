//! The aggregated invariant suite behind `cycleforge verify`.
//!
//! Formula-only sweeps run at their fixed depths. Sweeps that enumerate
//! permutations are limited by `max_n` and by the oracle caps.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{
    all_permutations, compose, enumerate_class, factorial, partitions_of, stirling_first,
    Partition,
};
use crate::cycle_poly::{g_poly, hook_character, p_lambda, p_ncycle, r_part, Method};
use crate::oracle::{
    brute_boccara_count, brute_p_lambda, brute_p_lambda_mu, brute_pi, brute_same_cycle_uniform,
    OracleConfig,
};
use crate::poly::{int, rat, Polynomial, Rational, Var};
use crate::probability::{boccara_count, f_series_coeff, pi_closed, pi_sum};
use crate::roots::{coeff_profile, theorem4_sweep, verify_real_part};

pub const ROUTE_DEPTH: usize = 12;
pub const NCYCLE_DEPTH: usize = 10;
pub const MASS_DEPTH: usize = 20;
pub const PROBABILITY_DEPTH: usize = 30;
pub const THEOREM4_SEED: u64 = 2009;
pub const THEOREM4_PER_REGIME: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: String,
    pub depth: String,
    pub cases: usize,
    pub passed: bool,
    /// First failure, if any.
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub oracle: OracleConfig,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(max_n: usize, oracle: OracleConfig) -> Self {
        VerifyConfig {
            max_n,
            oracle,
            seed: THEOREM4_SEED,
        }
    }

    fn class_depth(&self, stated: usize) -> usize {
        stated.min(self.max_n).min(self.oracle.max_n_class)
    }

    fn pair_depth(&self, stated: usize) -> usize {
        stated.min(self.max_n).min(self.oracle.max_n_pairs)
    }
}

struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn finish(self, module: &'static str, name: &str, depth: String) -> CheckResult {
        CheckResult {
            module,
            name: name.to_string(),
            depth,
            cases: self.cases,
            passed: self.failure.is_none(),
            detail: self.failure,
        }
    }
}

fn range(lo: usize, hi: usize) -> String {
    if hi < lo {
        "skipped".to_string()
    } else {
        format!("{lo} <= n <= {hi}")
    }
}

fn nonempty_partitions(max: usize) -> impl Iterator<Item = Partition> {
    (1..=max).flat_map(partitions_of)
}

fn check_class_sizes() -> CheckResult {
    let hi = 8;
    let mut t = Tally::new();
    for n in 0..=hi {
        let total: BigInt = partitions_of(n).iter().map(Partition::class_size).sum();
        t.check(total == factorial(n), || format!("n = {n}: sum of class sizes {total}"));
    }
    t.finish("permutations_partitions", "class sizes sum to n!", range(0, hi))
}

fn check_conjugate_products(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.class_depth(8);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = Tally::new();
    for n in 1..=hi {
        let all = all_permutations(n);
        for _ in 0..50 {
            let u = all.choose(&mut rng).unwrap();
            let v = all.choose(&mut rng).unwrap();
            let (a, b) = (compose(u, v).cycle_type(), compose(v, u).cycle_type());
            t.check(a == b, || format!("u = {u}, v = {v}: {a} vs {b}"));
        }
    }
    t.finish("permutations_partitions", "type(uv) = type(vu)", range(1, hi))
}

fn check_class_enumeration(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.class_depth(7);
    let mut t = Tally::new();
    for lambda in (0..=hi).flat_map(partitions_of) {
        let count = enumerate_class(&lambda, cfg.oracle.max_n_class).map(|c| c.len());
        let ok = count.as_ref().is_ok_and(|c| BigInt::from(*c) == lambda.class_size());
        t.check(ok, || format!("{lambda}: enumerated {count:?}"));
    }
    t.finish("permutations_partitions", "class enumeration count", range(0, hi))
}

fn check_stirling(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.class_depth(7);
    let mut t = Tally::new();
    for n in 0..=hi {
        let mut counts = vec![0u64; n + 1];
        for w in all_permutations(n) {
            counts[w.kappa()] += 1;
        }
        for (k, &c) in counts.iter().enumerate() {
            t.check(BigInt::from(c) == stirling_first(n, k), || {
                format!("c({n},{k}) = {} but {c} permutations", stirling_first(n, k))
            });
        }
    }
    t.finish("permutations_partitions", "Stirling numbers count by cycles", range(0, hi))
}

fn check_route_agreement() -> CheckResult {
    let mut t = Tally::new();
    let results: Vec<(Partition, Result<bool, String>)> = nonempty_partitions(ROUTE_DEPTH)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|lambda| {
            let polys: Result<Vec<Polynomial>, _> = Method::FORMULA_ROUTES
                .iter()
                .map(|&m| p_lambda(&lambda, m).map(|p| p.poly))
                .collect();
            let r = polys
                .map(|ps| ps.windows(2).all(|w| w[0] == w[1]))
                .map_err(|e| e.to_string());
            (lambda, r)
        })
        .collect();
    for (lambda, r) in results {
        t.check(r == Ok(true), || format!("{lambda}: {r:?}"));
    }
    t.finish("cycle_polynomials", "operator = gprime = hook", range(1, ROUTE_DEPTH))
}

fn check_oracle_agreement(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.class_depth(8);
    let mut t = Tally::new();
    let lambdas: Vec<Partition> = nonempty_partitions(hi).collect();
    let results: Vec<(Partition, bool)> = lambdas
        .into_par_iter()
        .map(|lambda| {
            let formula = p_lambda(&lambda, Method::Operator).map(|p| p.poly);
            let brute = brute_p_lambda(&lambda, &cfg.oracle);
            let ok = matches!((&formula, &brute), (Ok(a), Ok(b)) if a == b);
            (lambda, ok)
        })
        .collect();
    for (lambda, ok) in results {
        t.check(ok, || format!("{lambda}: formula and enumeration differ"));
    }
    t.finish("cycle_polynomials", "formula = brute-force P_lambda", range(1, hi))
}

fn check_cycle_poly_invariants() -> CheckResult {
    let mut t = Tally::new();
    for lambda in nonempty_partitions(ROUTE_DEPTH) {
        match p_lambda(&lambda, Method::Operator) {
            Ok(p) => {
                let v = p.invariant_violations();
                t.check(v.is_empty(), || format!("{lambda}: {}", v.join("; ")));
            }
            Err(e) => t.check(false, || format!("{lambda}: {e}")),
        }
    }
    t.finish(
        "cycle_polynomials",
        "mass n!/z, degree n-len+1, parity, nonnegative integers",
        range(1, ROUTE_DEPTH),
    )
}

fn check_hook_characters() -> CheckResult {
    let mut t = Tally::new();
    for lambda in nonempty_partitions(ROUTE_DEPTH) {
        let n = lambda.n();
        let coeffs: Vec<BigInt> = (0..n)
            .map(|i| {
                let chi = hook_character(&lambda, i).value;
                if i % 2 == 0 {
                    chi
                } else {
                    -chi
                }
            })
            .collect();
        let g = g_poly(&lambda).unwrap();
        let sign = if (n - lambda.len()) % 2 == 0 { 1 } else { -1 };
        let ok = Polynomial::from_bigints(Var::T, &coeffs) == g
            && hook_character(&lambda, 0).value.is_one()
            && hook_character(&lambda, n - 1).value == BigInt::from(sign);
        t.check(ok, || format!("{lambda}: hook characters inconsistent with g"));
    }
    t.finish("cycle_polynomials", "hook characters reassemble g", range(1, ROUTE_DEPTH))
}

fn check_ncycle(cfg: &VerifyConfig) -> CheckResult {
    let brute_hi = cfg.class_depth(8);
    let mut t = Tally::new();
    for n in 1..=NCYCLE_DEPTH {
        let lambda = Partition::single(n);
        let stirling = p_ncycle(n);
        let operator = p_lambda(&lambda, Method::Operator);
        let ok = matches!((&stirling, &operator), (Ok(a), Ok(b)) if a.poly == b.poly);
        t.check(ok, || format!("n = {n}: {stirling:?} vs {operator:?}"));
        if n <= brute_hi {
            let brute = brute_p_lambda(&lambda, &cfg.oracle);
            let ok = matches!((&stirling, &brute), (Ok(a), Ok(b)) if &a.poly == b);
            t.check(ok, || format!("n = {n}: Stirling form vs enumeration differ"));
        }
    }
    t.finish(
        "cycle_polynomials",
        "n-cycle Stirling form (exact division)",
        format!("{}; enumeration {}", range(1, NCYCLE_DEPTH), range(1, brute_hi)),
    )
}

fn check_imaginary_zeros() -> CheckResult {
    let mut t = Tally::new();
    let lambdas: Vec<Partition> = nonempty_partitions(ROUTE_DEPTH).collect();
    let results: Vec<(Partition, Option<String>)> = lambdas
        .into_par_iter()
        .map(|lambda| {
            let why = match p_lambda(&lambda, Method::Operator) {
                Ok(p) => {
                    let r = verify_real_part(&p.poly, &Rational::zero());
                    let deg_ok = p.poly.degree() == Some(lambda.n() + 1 - lambda.len());
                    if !r.verdict {
                        r.witness
                    } else if !deg_ok {
                        Some(format!("degree {:?}", p.poly.degree()))
                    } else {
                        None
                    }
                }
                Err(e) => Some(e.to_string()),
            };
            (lambda, why)
        })
        .collect();
    for (lambda, why) in results {
        t.check(why.is_none(), || format!("{lambda}: {}", why.clone().unwrap()));
    }
    t.finish("root_analysis", "all zeros of P_lambda on Re q = 0", range(1, ROUTE_DEPTH))
}

fn check_profiles() -> CheckResult {
    let mut t = Tally::new();
    for lambda in nonempty_partitions(ROUTE_DEPTH) {
        let profile = p_lambda(&lambda, Method::Operator)
            .and_then(|p| r_part(&p))
            .map(|r| coeff_profile(&r));
        t.check(profile.as_ref().is_ok_and(|p| p.all()), || {
            format!("{lambda}: {profile:?}")
        });
    }
    t.finish(
        "root_analysis",
        "R_lambda log-concave, unimodal, no internal zeros",
        range(1, ROUTE_DEPTH),
    )
}

fn check_theorem4(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new();
    for case in theorem4_sweep(cfg.seed, THEOREM4_PER_REGIME) {
        let failed: Vec<String> = case
            .outcome
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        t.check(case.outcome.verdict, || {
            format!("case {} g = {} n = {}: {}", case.index, case.g, case.outcome.n, failed.join("; "))
        });
    }
    t.finish(
        "root_analysis",
        "shift-operator images of unimodular g",
        format!("{} seeded cases, seed {}", 2 * THEOREM4_PER_REGIME, cfg.seed),
    )
}

fn check_factorization_mass() -> CheckResult {
    let mut t = Tally::new();
    for n in 2..=MASS_DEPTH {
        let total: Result<BigInt, _> = partitions_of(n)
            .iter()
            .map(|l| boccara_count(l).map(|c| c * l.class_size()))
            .sum();
        let expect = factorial(n - 1).pow(2);
        t.check(total.as_ref() == Ok(&expect), || format!("n = {n}: {total:?} vs {expect}"));
    }
    t.finish(
        "factorization_probabilities",
        "sum of class size * factorizations = ((n-1)!)^2",
        range(2, MASS_DEPTH),
    )
}

fn check_factorization_parity(cfg: &VerifyConfig) -> CheckResult {
    let brute_hi = cfg.class_depth(8);
    let mut t = Tally::new();
    for lambda in nonempty_partitions(ROUTE_DEPTH) {
        let count = boccara_count(&lambda);
        let ok = count
            .as_ref()
            .is_ok_and(|c| c.is_zero() == !lambda.is_even_type());
        t.check(ok, || format!("{lambda}: count {count:?}"));
        if lambda.n() <= brute_hi {
            let brute = brute_boccara_count(&lambda, &cfg.oracle);
            let ok = matches!((&count, &brute), (Ok(a), Ok(b)) if a == b);
            t.check(ok, || format!("{lambda}: {count:?} vs enumeration {brute:?}"));
        }
    }
    t.finish(
        "factorization_probabilities",
        "factorization count vanishes exactly on odd types",
        format!("{}; enumeration {}", range(1, ROUTE_DEPTH), range(1, brute_hi)),
    )
}

fn check_probability_routes() -> CheckResult {
    let mut t = Tally::new();
    let cases: Vec<(usize, usize)> = (2..=PROBABILITY_DEPTH)
        .flat_map(|n| [(n, 2), (n, 3)])
        .filter(|&(n, k)| k <= n)
        .collect();
    for (n, k) in cases {
        let sum = pi_sum(n, k).map(|r| r.value);
        let closed = pi_closed(n, k).map(|r| r.value);
        let ok = matches!((&sum, &closed), (Ok(a), Ok(b)) if a == b);
        t.check(ok, || format!("n = {n}, k = {k}: sum {sum:?} vs closed {closed:?}"));
        if k == 2 {
            let series = f_series_coeff(n) / int(n as i64 - 1);
            t.check(sum.as_ref() == Ok(&series), || {
                format!("n = {n}: sum {sum:?} vs series {series}")
            });
        }
    }
    t.finish(
        "factorization_probabilities",
        "partition sum = closed form = series",
        range(2, PROBABILITY_DEPTH),
    )
}

fn check_probability_brute(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.pair_depth(7);
    let mut t = Tally::new();
    for n in 2..=hi {
        for k in 2..=n.min(4) {
            let brute = brute_pi(n, k, &cfg.oracle);
            let sum = pi_sum(n, k).map(|r| r.value);
            let ok = matches!((&brute, &sum), (Ok(a), Ok(b)) if a == b);
            t.check(ok, || format!("n = {n}, k = {k}: brute {brute:?} vs sum {sum:?}"));
            if k <= 3 {
                let closed = pi_closed(n, k).map(|r| r.value);
                let ok = matches!((&brute, &closed), (Ok(a), Ok(b)) if a == b);
                t.check(ok, || format!("n = {n}, k = {k}: brute {brute:?} vs closed {closed:?}"));
            }
        }
    }
    t.finish(
        "factorization_probabilities",
        "pair enumeration = partition sum (k = 2, 3, 4)",
        range(2, hi),
    )
}

fn check_uniform_same_cycle(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.class_depth(7);
    let mut t = Tally::new();
    for n in 1..=hi {
        for k in 1..=n {
            let got = brute_same_cycle_uniform(n, k, &cfg.oracle);
            t.check(got.as_ref() == Ok(&rat(1, k as i64)), || {
                format!("n = {n}, k = {k}: {got:?}")
            });
        }
    }
    t.finish("oracle", "uniform permutation: 1..k share a cycle w.p. 1/k", range(1, hi))
}

fn check_class_function(cfg: &VerifyConfig) -> CheckResult {
    let hi = cfg.class_depth(6);
    let mut t = Tally::new();
    for n in 1..=hi {
        let parts = partitions_of(n);
        for lambda in &parts {
            for mu in &parts {
                let r = brute_p_lambda_mu(lambda, mu, &cfg.oracle);
                t.check(r.is_ok(), || format!("{lambda}, {mu}: {r:?}"));
            }
        }
    }
    t.finish("oracle", "P_lambda,mu independent of the representative", range(1, hi))
}

fn check_counterexample(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new();
    let lambda = Partition::new(vec![3, 3, 2]).unwrap();
    if cfg.class_depth(8) >= 8 {
        let expect = Polynomial::from_ints(Var::Q, &[0, 0, 660, 0, 424, 0, 35, 0, 1]);
        let got = brute_p_lambda_mu(&lambda, &lambda, &cfg.oracle);
        t.check(got.as_ref() == Ok(&expect), || format!("got {got:?}"));
        let verdict = verify_real_part(&expect, &Rational::zero()).verdict;
        t.check(!verdict, || "real-part check accepted the counterexample".into());
    }
    let depth = if t.cases == 0 { "skipped".into() } else { "n = 8".into() };
    t.finish("oracle", "P_(3,3,2),(3,3,2) has zeros off Re q = 0", depth)
}

/// Runs every check, in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckResult> {
    vec![
        check_class_sizes(),
        check_conjugate_products(cfg),
        check_class_enumeration(cfg),
        check_stirling(cfg),
        check_route_agreement(),
        check_oracle_agreement(cfg),
        check_cycle_poly_invariants(),
        check_hook_characters(),
        check_ncycle(cfg),
        check_imaginary_zeros(),
        check_profiles(),
        check_theorem4(cfg),
        check_factorization_mass(),
        check_factorization_parity(cfg),
        check_probability_routes(),
        check_probability_brute(cfg),
        check_uniform_same_cycle(cfg),
        check_class_function(cfg),
        check_counterexample(cfg),
    ]
}
