//! Exact rational numbers and dense univariate polynomials.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty coefficient list. Every operation is
//! exact; there is no floating point anywhere in this module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `n` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `n` or `p/q` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidCoefficient(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Nominal indeterminate. Purely descriptive: arithmetic never checks it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    #[default]
    Q,
    T,
    X,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::Q => 'q',
            Var::T => 't',
            Var::X => 'x',
        }
    }
}

/// Dense polynomial with rational coefficients.
///
/// Equality compares coefficients only; the indeterminate tag is metadata.
#[derive(Clone, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
    var: Var,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs, var }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(var: Var, coeffs: &[BigInt]) -> Self {
        Self::new(var, coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero(var: Var) -> Self {
        Polynomial { coeffs: Vec::new(), var }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// `c * var^k`
    pub fn monomial(var: Var, c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    /// `var + a`
    pub fn linear(var: Var, a: Rational) -> Self {
        Self::new(var, vec![a, Rational::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(self.var, coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// `f(var + a)` by Horner's scheme in the binomial `var + a`.
    pub fn translate(&self, a: &Rational) -> Self {
        let lin = Self::linear(self.var, a.clone());
        let mut acc = Self::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(self.var, c.clone());
        }
        acc
    }

    /// `f(var - i)`, one unit step at a time.
    pub fn shift_back(&self, i: usize) -> Self {
        let minus_one = -Rational::one();
        (0..i).fold(self.clone(), |f, _| f.translate(&minus_one))
    }

    /// `f(var^2)`-style stretch: maps `c_i var^i` to `c_i var^(i*k)`.
    pub fn stretch(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(self.var, coeffs)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.var), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(self.var, quot), Self::new(self.var, rem))
    }

    /// Quotient when `divisor` divides `self`, otherwise `InexactDivision`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!(
                "({self}) / ({divisor}) leaves remainder {r}"
            )))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or the first non-integral one as an error.
    pub fn integer_coeffs(&self, context: &str) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(degree, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral {
                        context: context.to_string(),
                        degree,
                        value: format_rational(c),
                    })
                }
            })
            .collect()
    }

    /// `f(-var)`
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i.is_odd() { -c } else { c.clone() })
            .collect();
        Self::new(self.var, coeffs)
    }

    /// Coefficients as `n` / `p/q` strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(var: Var, coeffs: &[S]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(var, coeffs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::new(self.var, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::new(self.var, coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(self.var, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn coefficient_text(c: &Rational, is_const: bool) -> String {
    let a = c.abs();
    if is_const {
        format_rational(&a)
    } else if a.is_one() {
        String::new()
    } else if a.is_integer() {
        format_rational(&a)
    } else {
        format!("({})", format_rational(&a))
    }
}

/// Descending degree, e.g. `q^3 + 3q^2 - (1/2)q + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", coefficient_text(c, i == 0))?;
            match i {
                0 => {}
                1 => write!(f, "{x}")?,
                _ => write!(f, "{x}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        Polynomial::from_strings(Var::Q, &raw).map_err(de::Error::custom)
    }
}

/// Serde adapter for a single `Rational` as a `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

/// Expansion of `(q + offset)(q + offset - 1)...(q + offset - n + 1)`.
pub fn falling_factorial(offset: i64, n: usize) -> Polynomial {
    (0..n as i64).fold(Polynomial::one(Var::Q), |acc, j| {
        &acc * &Polynomial::linear(Var::Q, int(offset - j))
    })
}

/// `g(E) f` where `E f(q) = f(q - 1)`: the sum of `g_i f(q - i)`.
pub fn apply_shift_operator(g: &Polynomial, f: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(f.var());
    let mut shifted = f.clone();
    for (i, gi) in g.coeffs().iter().enumerate() {
        if i > 0 {
            shifted = shifted.shift_back(1);
        }
        if !gi.is_zero() {
            acc = &acc + &shifted.scale(gi);
        }
    }
    acc
}

/// Exact value of the integral of `f` over `[0, 1]`.
pub fn integrate_unit_interval(f: &Polynomial) -> Rational {
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c / BigInt::from(i + 1))
        .fold(Rational::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(Var::Q, c)
    }

    fn t(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(Var::T, c)
    }

    #[test]
    fn falling_factorial_small() {
        assert_eq!(falling_factorial(2, 3), q(&[0, 2, 3, 1]));
        assert_eq!(falling_factorial(0, 0), q(&[1]));
        assert_eq!(falling_factorial(5, 4).degree(), Some(4));
    }

    #[test]
    fn falling_factorial_gives_stirling_coefficients() {
        // (q+3)_4 = q(q+1)(q+2)(q+3); c(4,k) = 0, 6, 11, 6, 1
        assert_eq!(falling_factorial(3, 4), q(&[0, 6, 11, 6, 1]));
    }

    #[test]
    fn shift_operator_examples() {
        let f = q(&[3, -1, 4, 1, 5]);
        assert_eq!(apply_shift_operator(&t(&[1]), &f), f);

        // (1 - E)(q+2)_3 = 3 (q+1)_2
        let lhs = apply_shift_operator(&t(&[1, -1]), &falling_factorial(2, 3));
        assert_eq!(lhs, falling_factorial(1, 2).scale(&int(3)));

        // (1 - E)^2 (q+1)_2 = 2
        assert_eq!(
            apply_shift_operator(&t(&[1, -2, 1]), &falling_factorial(1, 2)),
            q(&[2])
        );
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(integrate_unit_interval(&q(&[1])), int(1));
        assert_eq!(integrate_unit_interval(&q(&[-1, 2])), int(0));
        assert_eq!(integrate_unit_interval(&q(&[1, -3, 3])), rat(1, 2));
        assert_eq!(integrate_unit_interval(&Polynomial::zero(Var::X)), int(0));
    }

    #[test]
    fn zero_polynomial_is_empty() {
        let p = q(&[1, 2]) - q(&[1, 2]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert!(p.coeffs().is_empty());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn rationals_normalize() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(parse_rational(" 4/-6 ").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn display_descending() {
        assert_eq!(q(&[0, 1, 0, 1]).to_string(), "q^3 + q");
        assert_eq!(q(&[-1, 0, 3]).to_string(), "3q^2 - 1");
        assert_eq!(t(&[1, -1]).to_string(), "-t + 1");
        let p = Polynomial::new(Var::X, vec![rat(1, 2), rat(-3, 4)]);
        assert_eq!(p.to_string(), "-(3/4)x + 1/2");
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = q(&[-1, 0, 1]); // (q-1)(q+1)
        let b = q(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), q(&[-1, 1]));
        assert!(matches!(q(&[1, 0, 1]).exact_div(&b), Err(Error::InexactDivision(_))));
        let g = (&a * &q(&[2, 1])).gcd(&(&a * &q(&[3, 1])));
        assert_eq!(g, a);
    }

    #[test]
    fn translate_and_reflect() {
        let f = q(&[0, 0, 1]);
        assert_eq!(f.translate(&int(1)), q(&[1, 2, 1]));
        assert_eq!(f.shift_back(2), q(&[4, -4, 1]));
        assert_eq!(q(&[1, 2, 3]).reflect(), q(&[1, -2, 3]));
    }

    #[test]
    fn json_strings() {
        let p = Polynomial::new(Var::Q, vec![rat(1, 2), int(0), int(-3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","0","-3"]"#);
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
