//! Cycle-count polynomials `P_lambda(q)`: the number of permutations `w` of
//! type `lambda`, weighted by `q` to the number of cycles of `(1,...,n) w`.
//!
//! Three closed routes are provided (shift operator on `g_lambda`, shift
//! operator on the undivided product, and the hook-character sum), plus the
//! Stirling-number form for `lambda = (n)` and the brute-force oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, stirling_first_row, Partition};
use crate::error::{Error, Result};
use crate::oracle::{brute_p_lambda, OracleConfig};
use crate::poly::{apply_shift_operator, falling_factorial, format_rational, Polynomial, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Operator,
    Gprime,
    Hook,
    Stirling,
    Oracle,
}

impl Method {
    pub const FORMULA_ROUTES: [Method; 3] = [Method::Operator, Method::Gprime, Method::Hook];

    pub fn name(self) -> &'static str {
        match self {
            Method::Operator => "operator",
            Method::Gprime => "gprime",
            Method::Hook => "hook",
            Method::Stirling => "stirling",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "operator" => Ok(Method::Operator),
            "gprime" => Ok(Method::Gprime),
            "hook" => Ok(Method::Hook),
            "stirling" => Ok(Method::Stirling),
            "oracle" => Ok(Method::Oracle),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

/// `P_lambda(q)` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePolynomial {
    pub lambda: Partition,
    pub poly: Polynomial,
    pub method: Method,
}

impl CyclePolynomial {
    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    /// Checks nonnegative integer coefficients, total mass `n!/z`, degree
    /// `n - len + 1` and `P(-q) = (-1)^(n - len + 1) P(q)`. Returns every violation.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.n();
        if self.poly.coeffs().iter().any(|c| !c.is_integer() || c.is_negative()) {
            out.push(format!("coefficients of {} are not nonnegative integers", self.poly));
        }
        let mass = self.poly.eval(&Rational::one());
        let size = Rational::from_integer(self.lambda.class_size());
        if mass != size {
            out.push(format!("P(1) = {mass}, class size is {size}"));
        }
        let expected_degree = n + 1 - self.lambda.len();
        if self.poly.degree() != Some(expected_degree) {
            out.push(format!(
                "degree {:?}, expected {expected_degree}",
                self.poly.degree()
            ));
        }
        // sign(sigma w) pins the parity of the cycle count of every term
        let reflected = self.poly.reflect();
        let parity_ok = if expected_degree % 2 == 0 {
            reflected == self.poly
        } else {
            reflected == -&self.poly
        };
        if !parity_ok {
            out.push(format!(
                "P(-q) != (-1)^{expected_degree} P(q) for {}",
                self.poly
            ));
        }
        out
    }
}

/// `prod_j (1 - t^lambda_j)`.
pub fn g_prime_poly(lambda: &Partition) -> Polynomial {
    lambda.parts().iter().fold(Polynomial::one(Var::T), |acc, &part| {
        let factor = &Polynomial::one(Var::T)
            - &Polynomial::monomial(Var::T, Rational::one(), part);
        &acc * &factor
    })
}

/// `g_lambda(t) = prod_j (1 - t^lambda_j) / (1 - t)`, degree `n - 1`.
pub fn g_poly(lambda: &Partition) -> Result<Polynomial> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("empty partition has no g polynomial".into()));
    }
    g_prime_poly(lambda).exact_div(&Polynomial::from_ints(Var::T, &[1, -1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookCharacter {
    pub value: BigInt,
    /// False when `i` lies outside `0..n`; `value` is then 0 by convention.
    pub in_range: bool,
}

/// Character of the hook `<n-i, 1^i>` at cycle type `lambda`, read off as
/// `(-1)^i [t^i] g_lambda(t)`.
pub fn hook_character(lambda: &Partition, i: usize) -> HookCharacter {
    let n = lambda.n();
    if lambda.is_empty() || i >= n {
        return HookCharacter {
            value: BigInt::zero(),
            in_range: false,
        };
    }
    let g = g_poly(lambda).expect("nonempty partition");
    let c = g.coeff(i).to_integer();
    HookCharacter {
        value: if i % 2 == 0 { c } else { -c },
        in_range: true,
    }
}

fn require_nonempty(lambda: &Partition) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::InvalidPartition("P_lambda needs n >= 1".into()));
    }
    Ok(())
}

fn finish(lambda: &Partition, poly: Polynomial, method: Method) -> Result<CyclePolynomial> {
    poly.integer_coeffs(&format!("P_{lambda} via {method}"))?;
    Ok(CyclePolynomial {
        lambda: lambda.clone(),
        poly,
        method,
    })
}

/// `P_lambda(q)` by the requested route. Non-integral coefficients are
/// reported as errors, never rounded.
pub fn p_lambda(lambda: &Partition, method: Method) -> Result<CyclePolynomial> {
    require_nonempty(lambda)?;
    let n = lambda.n();
    let z_inv = Rational::new(BigInt::one(), lambda.z());
    let poly = match method {
        Method::Operator => {
            let g = g_poly(lambda)?;
            apply_shift_operator(&g, &falling_factorial(n as i64 - 1, n)).scale(&z_inv)
        }
        Method::Gprime => {
            let g = g_prime_poly(lambda);
            let scale = Rational::new(BigInt::one(), lambda.z() * (n + 1));
            apply_shift_operator(&g, &falling_factorial(n as i64, n + 1)).scale(&scale)
        }
        Method::Hook => {
            let mut acc = Polynomial::zero(Var::Q);
            for i in 0..n {
                let chi = hook_character(lambda, i).value;
                let weight = if i % 2 == 0 { chi } else { -chi };
                if weight.is_zero() {
                    continue;
                }
                let term = falling_factorial((n - i) as i64 - 1, n);
                acc = &acc + &term.scale(&Rational::from_integer(weight));
            }
            acc.scale(&z_inv)
        }
        Method::Stirling => {
            if lambda.len() != 1 {
                return Err(Error::MethodNotApplicable {
                    method: method.to_string(),
                    lambda: lambda.to_string(),
                });
            }
            return p_ncycle(n);
        }
        Method::Oracle => brute_p_lambda(lambda, &OracleConfig::default())?,
    };
    finish(lambda, poly, method)
}

/// `P_(n)(q)` from Stirling numbers: `c(n+1, k) / C(n+1, 2)` for
/// `k = n (mod 2)`, zero otherwise. Every division must be exact.
pub fn p_ncycle(n: usize) -> Result<CyclePolynomial> {
    if n == 0 {
        return Err(Error::InvalidPartition("P_n needs n >= 1".into()));
    }
    let denom = binomial(n + 1, 2);
    let row = stirling_first_row(n + 1);
    let mut coeffs = vec![BigInt::zero(); n + 2];
    for k in (0..=n + 1).filter(|k| k % 2 == n % 2) {
        if !(&row[k] % &denom).is_zero() {
            return Err(Error::InexactDivision(format!(
                "c({}, {k}) = {} is not divisible by C({}, 2) = {denom}",
                n + 1,
                row[k],
                n + 1
            )));
        }
        coeffs[k] = &row[k] / &denom;
    }
    Ok(CyclePolynomial {
        lambda: Partition::single(n),
        poly: Polynomial::from_bigints(Var::Q, &coeffs),
        method: Method::Stirling,
    })
}

/// `R` with `P(q) = R(q^2)` (`parity` even) or `P(q) = q R(q^2)` (`parity`
/// odd). For `P_lambda` the parity is that of `n - len + 1`, which agrees with
/// `n` exactly when `lambda` has an odd number of parts.
pub fn r_part_of(poly: &Polynomial, parity: usize) -> Result<Polynomial> {
    let offset = parity % 2;
    let mut coeffs = Vec::new();
    for (degree, c) in poly.coeffs().iter().enumerate() {
        if degree % 2 != offset {
            if !c.is_zero() {
                return Err(Error::ParityViolation {
                    parity,
                    degree,
                    value: format_rational(c),
                });
            }
        } else {
            coeffs.push(c.clone());
        }
    }
    Ok(Polynomial::new(Var::X, coeffs))
}

pub fn r_part(p: &CyclePolynomial) -> Result<Polynomial> {
    r_part_of(&p.poly, p.n() + 1 - p.lambda.len())
}
