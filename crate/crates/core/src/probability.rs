//! Probability that `1, ..., k` share a cycle of the product of two uniformly
//! random n-cycles, by four independent routes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{factorial, partitions_of, Partition};
use crate::error::{Error, Result};
use crate::oracle::{brute_pi, OracleConfig};
use crate::poly::{integrate_unit_interval, int, rat, rational_string, Polynomial, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Closed,
    BoccaraSum,
    Series,
    Brute,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::BoccaraSum => "boccara_sum",
            Route::Series => "series",
            Route::Brute => "brute",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;

    /// Accepts the CLI spellings `closed|boccara|series|brute` as well as
    /// `boccara_sum`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "closed" => Ok(Route::Closed),
            "boccara" | "boccara_sum" => Ok(Route::BoccaraSum),
            "series" => Ok(Route::Series),
            "brute" => Ok(Route::Brute),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbabilityResult {
    pub n: usize,
    pub k: usize,
    #[serde(with = "rational_string")]
    pub value: Rational,
    pub route: Route,
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::KOutOfRange { n, k });
    }
    Ok(())
}

/// Largest n for which the integrand is expanded in `i128`: the absolute
/// coefficient sum of the integrand is at most `2^n`.
pub const MAX_FACTORIZATION_N: usize = 120;

/// Integer coefficients of `prod_i (x^lambda_i - (x - 1)^lambda_i)`,
/// ascending.
fn integrand_coeffs(lambda: &Partition) -> Vec<i128> {
    let mut acc = vec![1i128];
    for &part in lambda.parts() {
        // x^a - (x-1)^a = -sum_{j<a} C(a,j) (-1)^(a-j) x^j
        let mut factor = vec![0i128; part];
        let mut binom = 1i128;
        for (j, slot) in factor.iter_mut().enumerate() {
            let sign = if (part - j) % 2 == 0 { -1 } else { 1 };
            *slot = sign * binom;
            binom = binom * (part - j) as i128 / (j + 1) as i128;
        }
        let mut next = vec![0i128; acc.len() + factor.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// `prod_i (x^lambda_i - (x - 1)^lambda_i)`.
pub fn boccara_integrand(lambda: &Partition) -> Polynomial {
    let coeffs: Vec<BigInt> = integrand_coeffs(lambda).into_iter().map(BigInt::from).collect();
    Polynomial::from_bigints(Var::X, &coeffs)
}

/// Number of ordered pairs of n-cycles whose product is a fixed permutation
/// of type `lambda`: `(n-1)!` times the unit-interval integral of the
/// integrand above.
pub fn boccara_count(lambda: &Partition) -> Result<BigInt> {
    let n = lambda.n();
    if n == 0 || n > MAX_FACTORIZATION_N {
        return Err(Error::InvalidArgument(format!(
            "factorization count needs 1 <= n <= {MAX_FACTORIZATION_N}, got {n}"
        )));
    }
    let value = integrate_unit_interval(&boccara_integrand(lambda))
        * Rational::from_integer(factorial(n - 1));
    if !value.is_integer() {
        return Err(Error::NonIntegral {
            context: format!("factorization count for {lambda}"),
            degree: 0,
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}

/// Probability that `k` marked points lie in one cycle of a permutation of
/// type `lambda`: `sum_i (lambda_i)_k / (n)_k`.
pub fn same_cycle_prob_given_type(lambda: &Partition, k: usize) -> Result<Rational> {
    let n = lambda.n();
    check_k(n, k)?;
    let falling = |a: usize| -> BigInt {
        if a < k {
            BigInt::zero()
        } else {
            (0..k).fold(BigInt::one(), |acc, j| acc * (a - j))
        }
    };
    let num: BigInt = lambda.parts().iter().map(|&a| falling(a)).sum();
    Ok(Rational::new(num, falling(n)))
}

/// Sum over cycle types of (pairs with that product type) times the
/// conditional same-cycle probability, normalized by `((n-1)!)^2`.
pub fn pi_sum(n: usize, k: usize) -> Result<ProbabilityResult> {
    check_k(n, k)?;
    let terms = partitions_of(n)
        .into_par_iter()
        .map(|lambda| {
            let pairs = boccara_count(&lambda)?;
            if pairs.is_zero() {
                return Ok(Rational::zero());
            }
            let weight = Rational::from_integer(lambda.class_size() * pairs);
            Ok(weight * same_cycle_prob_given_type(&lambda, k)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let total: Rational = terms.into_iter().fold(Rational::zero(), |a, b| a + b);
    let norm = factorial(n - 1);
    Ok(ProbabilityResult {
        n,
        k,
        value: total / Rational::from_integer(&norm * &norm),
        route: Route::BoccaraSum,
    })
}

/// Closed forms for `k = 2` (n >= 2) and `k = 3` (n >= 3).
pub fn pi_closed(n: usize, k: usize) -> Result<ProbabilityResult> {
    if k != 2 && k != 3 {
        return Err(Error::NoClosedForm(k));
    }
    check_k(n, k)?;
    let m = n as i64;
    let value = match (k, n % 2 == 1) {
        (2, true) => rat(1, 2),
        (2, false) => rat(1, 2) - rat(2, (m - 1) * (m + 2)),
        (3, true) => rat(1, 3) + rat(1, (m - 2) * (m + 3)),
        (_, _) => rat(1, 3) - rat(3, (m - 1) * (m + 2)),
    };
    Ok(ProbabilityResult {
        n,
        k,
        value,
        route: Route::Closed,
    })
}

/// Coefficient of `t^n` in
/// `F(t) = log(1 - t^2)/t^2 + 3/2 + (t - 1/2)/(1 - t)^2`.
pub fn f_series_coeff(n: usize) -> Rational {
    // log(1 - t^2)/t^2 = -sum_{j>=1} t^(2j-2)/j
    let log_part = if n % 2 == 0 {
        -rat(1, (n / 2 + 1) as i64)
    } else {
        Rational::zero()
    };
    // (t - 1/2) sum_m (m+1) t^m  has  m - (m+1)/2 = (m-1)/2  at t^m
    let rational_part = rat(n as i64 - 1, 2);
    let constant = if n == 0 { rat(3, 2) } else { Rational::zero() };
    log_part + rational_part + constant
}

/// `k = 2` probability read off the series: `[t^n]F / (n - 1)`.
pub fn pi_series(n: usize) -> Result<ProbabilityResult> {
    check_k(n, 2)?;
    Ok(ProbabilityResult {
        n,
        k: 2,
        value: f_series_coeff(n) / int(n as i64 - 1),
        route: Route::Series,
    })
}

pub fn pi_brute(n: usize, k: usize, cfg: &OracleConfig) -> Result<ProbabilityResult> {
    Ok(ProbabilityResult {
        n,
        k,
        value: brute_pi(n, k, cfg)?,
        route: Route::Brute,
    })
}

/// Dispatch by route. The series route only exists for `k = 2`.
pub fn pi(n: usize, k: usize, route: Route, cfg: &OracleConfig) -> Result<ProbabilityResult> {
    match route {
        Route::Closed => pi_closed(n, k),
        Route::BoccaraSum => pi_sum(n, k),
        Route::Series if k == 2 => pi_series(n),
        Route::Series => Err(Error::MethodNotApplicable {
            method: "series".into(),
            lambda: format!("k = {k}"),
        }),
        Route::Brute => pi_brute(n, k, cfg),
    }
}
