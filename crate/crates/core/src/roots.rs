//! Exact root-location checks: Sturm counting, vertical-line certification,
//! shift-operator images of polynomials with unimodular zeros, and
//! coefficient-sequence shape.
//!
//! Nothing here approximates a root. "Every zero has real part `alpha`" is
//! certified by translating to `s = q - alpha`, requiring the support to sit
//! in one parity class, writing the result as `s^m h(s^2)` and proving with
//! Sturm sequences that `h` has only real, nonpositive zeros.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    apply_shift_operator, falling_factorial, format_rational, rat, rational_string, Polynomial,
    Rational, Var,
};

/// Interval endpoint for Sturm counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(Rational),
}

impl Bound {
    fn rank(&self) -> (i8, Option<&Rational>) {
        match self {
            Bound::NegInf => (-1, None),
            Bound::At(r) => (0, Some(r)),
            Bound::PosInf => (1, None),
        }
    }

    fn lt(&self, other: &Bound) -> bool {
        match (self.rank(), other.rank()) {
            ((0, Some(a)), (0, Some(b))) => a < b,
            ((a, _), (b, _)) => a < b,
        }
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at(p: &Polynomial, at: &Bound) -> i8 {
    let Some(lc) = p.leading() else { return 0 };
    match at {
        Bound::At(x) => sign(&p.eval(x)),
        Bound::PosInf => sign(lc),
        Bound::NegInf => {
            let s = sign(lc);
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

/// `f / gcd(f, f')`: same distinct roots, all simple.
pub fn square_free_part(f: &Polynomial) -> Polynomial {
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return f.clone();
    }
    f.div_rem(&g).0
}

/// Yun's square-free factorization: `f = c * prod a_i^i`, returned as
/// `(a_i, i)` for the nonconstant `a_i`.
pub fn square_free_decomposition(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let mut c = df.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Sturm chain `p0 = f, p1 = f', p_{i+1} = -rem(p_{i-1}, p_i)`.
pub fn sturm_chain(f: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let len = chain.len();
        if chain[len - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[len - 2].div_rem(&chain[len - 1]).1;
        chain.push(-&r);
    }
}

fn variations(chain: &[Polynomial], at: &Bound) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign_at(p, at)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_real_root_count(f: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !lo.lt(hi) {
        return Ok(0);
    }
    let chain = sturm_chain(&square_free_part(f));
    Ok(variations(&chain, lo).saturating_sub(variations(&chain, hi)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootLocationReport {
    pub polynomial: Polynomial,
    #[serde(with = "rational_string")]
    pub alpha: Rational,
    pub verdict: bool,
    /// First failed check, when the verdict is false.
    pub witness: Option<String>,
}

impl RootLocationReport {
    fn pass(p: &Polynomial, alpha: &Rational) -> Self {
        RootLocationReport {
            polynomial: p.clone(),
            alpha: alpha.clone(),
            verdict: true,
            witness: None,
        }
    }

    fn fail(p: &Polynomial, alpha: &Rational, why: String) -> Self {
        RootLocationReport {
            polynomial: p.clone(),
            alpha: alpha.clone(),
            verdict: false,
            witness: Some(why),
        }
    }
}

/// Decides whether every complex zero of `p` has real part exactly `alpha`.
pub fn verify_real_part(p: &Polynomial, alpha: &Rational) -> RootLocationReport {
    if p.is_zero() {
        return RootLocationReport::fail(p, alpha, "zero polynomial".into());
    }
    let shifted = p.translate(alpha);
    let low = shifted.valuation().unwrap();
    if let Some((deg, _)) = shifted
        .coeffs()
        .iter()
        .enumerate()
        .find(|(i, c)| !c.is_zero() && (i - low) % 2 == 1)
    {
        return RootLocationReport::fail(
            p,
            alpha,
            format!(
                "parity support: after q -> s + {}, degrees {low} and {deg} both appear",
                format_rational(alpha)
            ),
        );
    }
    // shifted(s) = s^low h(s^2)
    let h_coeffs = shifted.coeffs()[low..].iter().step_by(2).cloned().collect();
    let h = Polynomial::new(Var::X, h_coeffs);
    for (factor, mult) in square_free_decomposition(&h) {
        let deg = factor.degree().unwrap();
        let real = sturm_real_root_count(&factor, &Bound::NegInf, &Bound::At(Rational::zero()))
            .expect("nonzero factor");
        if real != deg {
            return RootLocationReport::fail(
                p,
                alpha,
                format!(
                    "sturm count: factor {factor} (multiplicity {mult}) of h has {real} of {deg} \
                     roots in (-inf, 0]"
                ),
            );
        }
    }
    RootLocationReport::pass(p, alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffProfile {
    pub log_concave: bool,
    pub no_internal_zeros: bool,
    pub unimodal: bool,
}

impl CoeffProfile {
    pub fn all(&self) -> bool {
        self.log_concave && self.no_internal_zeros && self.unimodal
    }
}

/// Shape of the coefficient sequence between the first and last nonzero
/// coefficients.
pub fn coeff_profile(r: &Polynomial) -> CoeffProfile {
    let Some(first) = r.valuation() else {
        return CoeffProfile {
            log_concave: true,
            no_internal_zeros: true,
            unimodal: true,
        };
    };
    let c = &r.coeffs()[first..];
    let log_concave = c
        .windows(3)
        .all(|w| &w[1] * &w[1] >= &w[0] * &w[2]);
    let no_internal_zeros = c.iter().all(|x| !x.is_zero());
    let mut descending = false;
    let mut unimodal = true;
    for w in c.windows(2) {
        if w[1] < w[0] {
            descending = true;
        } else if w[1] > w[0] && descending {
            unimodal = false;
        }
    }
    CoeffProfile {
        log_concave,
        no_internal_zeros,
        unimodal,
    }
}

/// `prod_j (1 - t^a_j) * (1 + t)^b`: every zero is a root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularFamily {
    pub cyclotomic: Vec<usize>,
    pub plus_one: usize,
}

impl UnimodularFamily {
    pub fn poly(&self) -> Polynomial {
        let one = Polynomial::one(Var::T);
        let mut g = Polynomial::from_ints(Var::T, &[1, 1]).pow(self.plus_one);
        for &a in &self.cyclotomic {
            g = &g * &(&one - &Polynomial::monomial(Var::T, Rational::one(), a));
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.cyclotomic.iter().sum::<usize>() + self.plus_one
    }
}

impl fmt::Display for UnimodularFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.cyclotomic {
            write!(f, "(1-t^{a})")?;
        }
        if self.plus_one > 0 || self.cyclotomic.is_empty() {
            write!(f, "(1+t)^{}", self.plus_one)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem4Outcome {
    pub n: usize,
    pub d: usize,
    /// Multiplicity of 1 as a root of `g`.
    pub m: usize,
    #[serde(with = "rational_string")]
    pub alpha: Rational,
    pub p: Polynomial,
    /// Cofactor of `(q+n-d-1)_{n-d}` when `d <= n - 1` and the division is exact.
    pub q: Option<Polynomial>,
    pub checks: Vec<Check>,
    pub reports: Vec<RootLocationReport>,
    pub verdict: bool,
}

/// Multiplicity of `t = 1` as a root of `g`, by repeated division by `1 - t`.
pub fn root_one_multiplicity(g: &Polynomial) -> usize {
    let one_minus_t = Polynomial::from_ints(Var::T, &[1, -1]);
    let mut m = 0;
    let mut rest = g.clone();
    while let Ok(next) = rest.exact_div(&one_minus_t) {
        rest = next;
        m += 1;
    }
    m
}

/// `P = g(E)(q+n-1)_n` and the degree, divisibility and real-part claims
/// for it. `g` must have all zeros on the unit circle; callers build it from
/// [`UnimodularFamily`].
pub fn theorem4_case(g: &Polynomial, n: usize) -> Result<Theorem4Outcome> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let m = root_one_multiplicity(g);
    let alpha = rat(d as i64 - n as i64 + 1, 2);
    let p = apply_shift_operator(g, &falling_factorial(n as i64 - 1, n));
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    let mut q_out = None;

    if d < n {
        let divisor = falling_factorial((n - d) as i64 - 1, n - d);
        match p.exact_div(&divisor) {
            Ok(q) => {
                checks.push(Check::new("divisibility", true, format!("P = ({divisor}) * ({q})")));
                let ok = q.degree() == Some(d - m);
                checks.push(Check::new(
                    "degree Q",
                    ok,
                    format!("deg Q = {:?}, expected {}", q.degree(), d - m),
                ));
                let report = verify_real_part(&q, &alpha);
                checks.push(Check::new(
                    "real part Q",
                    report.verdict,
                    report.witness.clone().unwrap_or_default(),
                ));
                reports.push(report);
                q_out = Some(q);
            }
            Err(e) => checks.push(Check::new("divisibility", false, e.to_string())),
        }
    }
    if d + 1 >= n {
        if m > n {
            checks.push(Check::new(
                "degree P",
                p.is_zero(),
                format!("m = {m} > n = {n} forces P = 0, got {p}"),
            ));
        } else {
            let ok = p.degree() == Some(n - m);
            checks.push(Check::new(
                "degree P",
                ok,
                format!("deg P = {:?}, expected {}", p.degree(), n - m),
            ));
            let report = verify_real_part(&p, &alpha);
            checks.push(Check::new(
                "real part P",
                report.verdict,
                report.witness.clone().unwrap_or_default(),
            ));
            reports.push(report);
        }
    }
    let verdict = checks.iter().all(|c| c.passed);
    Ok(Theorem4Outcome {
        n,
        d,
        m,
        alpha,
        p,
        q: q_out,
        checks,
        reports,
        verdict,
    })
}

/// Which side of `d = n - 1` a random case is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `d <= n - 1`
    Divisible,
    /// `d >= n - 1`
    HighDegree,
}

pub const SWEEP_MAX_N: usize = 12;
pub const SWEEP_MAX_D: usize = 16;

/// Random member of the unimodular family and an `n <= 12` in the given
/// regime, `d <= 16`, with `m <= n` so that `P` is nonzero.
pub fn draw_case<R: Rng>(rng: &mut R, regime: Regime) -> (UnimodularFamily, usize) {
    let n = rng.gen_range(1..=SWEEP_MAX_N);
    let d = match regime {
        Regime::Divisible => rng.gen_range(0..n),
        Regime::HighDegree => rng.gen_range(n - 1..=SWEEP_MAX_D),
    };
    let mut family = UnimodularFamily {
        cyclotomic: Vec::new(),
        plus_one: 0,
    };
    let mut left = d;
    while left > 0 {
        if family.cyclotomic.len() >= n || rng.gen_bool(0.3) {
            family.plus_one += 1;
            left -= 1;
        } else {
            let a = rng.gen_range(1..=left);
            family.cyclotomic.push(a);
            left -= a;
        }
    }
    (family, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCase {
    pub index: usize,
    pub regime: Regime,
    pub g: String,
    pub outcome: Theorem4Outcome,
}

/// `per_regime` cases on each side of `d = n - 1`, reproducible from `seed`.
pub fn theorem4_sweep(seed: u64, per_regime: usize) -> Vec<SweepCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(2 * per_regime);
    for regime in [Regime::Divisible, Regime::HighDegree] {
        for _ in 0..per_regime {
            let (family, n) = draw_case(&mut rng, regime);
            let outcome = theorem4_case(&family.poly(), n).expect("family polynomial is nonzero");
            out.push(SweepCase {
                index: out.len(),
                regime,
                g: family.to_string(),
                outcome,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn x(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(Var::X, c)
    }

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(Var::Q, c)
    }

    fn all_reals(f: &Polynomial) -> usize {
        sturm_real_root_count(f, &Bound::NegInf, &Bound::PosInf).unwrap()
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(all_reals(&q(&[1, 0, 1])), 0);
        assert_eq!(
            sturm_real_root_count(&x(&[2, 3, 1]), &Bound::NegInf, &Bound::At(int(0))).unwrap(),
            2
        );
        assert_eq!(all_reals(&x(&[0, 660, 424, 35, 1])), 2);
        assert_eq!(
            sturm_real_root_count(&Polynomial::zero(Var::X), &Bound::NegInf, &Bound::PosInf),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(all_reals(&x(&[5])), 0);
    }

    #[test]
    fn sturm_half_open_interval() {
        // roots -1 and -2
        let f = x(&[2, 3, 1]);
        let count = |lo: i64, hi: i64| {
            sturm_real_root_count(&f, &Bound::At(int(lo)), &Bound::At(int(hi))).unwrap()
        };
        assert_eq!(count(-2, -1), 1);
        assert_eq!(count(-3, -2), 1);
        assert_eq!(count(-1, 0), 0);
        assert_eq!(count(0, -5), 0);
    }

    #[test]
    fn sturm_counts_repeated_roots_once() {
        let f = &x(&[1, 1]).pow(3) * &x(&[-2, 1]);
        assert_eq!(all_reals(&f), 2);
    }

    #[test]
    fn square_free_decomposition_recovers_multiplicities() {
        let a = x(&[1, 1]);
        let b = x(&[1, 0, 1]);
        let f = &a.pow(3) * &b.pow(2);
        let parts = square_free_decomposition(&f);
        assert_eq!(parts, vec![(b, 2), (a, 3)]);
    }

    #[test]
    fn real_part_examples() {
        assert!(verify_real_part(&q(&[0, 1, 0, 1]), &int(0)).verdict);
        let p332 = q(&[0, 0, 660, 0, 424, 0, 35, 0, 1]);
        let report = verify_real_part(&p332, &int(0));
        assert!(!report.verdict);
        assert!(report.witness.unwrap().starts_with("sturm count"));
        for n in 1..8i64 {
            let lin = q(&[n - 2, 2]);
            assert!(verify_real_part(&lin, &rat(2 - n, 2)).verdict);
            assert!(!verify_real_part(&lin, &rat(3 - n, 2)).verdict);
        }
    }

    #[test]
    fn real_part_rejects_real_roots_off_line() {
        // roots 1 and -1 both real: shifted support is fine but h has a positive root
        let r = verify_real_part(&q(&[-1, 0, 1]), &int(0));
        assert!(!r.verdict);
        // roots 0 and 1
        let r = verify_real_part(&q(&[0, -1, 1]), &int(0));
        assert!(r.witness.unwrap().starts_with("parity support"));
        // (q^2 + 1)^2 q: repeated imaginary roots
        assert!(verify_real_part(&(&q(&[1, 0, 1]).pow(2) * &q(&[0, 1])), &int(0)).verdict);
        assert!(verify_real_part(&q(&[7]), &int(3)).verdict);
        assert!(!verify_real_part(&Polynomial::zero(Var::Q), &int(0)).verdict);
    }

    #[test]
    fn real_part_half_integer_shift() {
        // (q + 1/2)^2 + 4 = q^2 + q + 17/4
        let p = Polynomial::new(Var::Q, vec![rat(17, 4), int(1), int(1)]);
        assert!(verify_real_part(&p, &rat(-1, 2)).verdict);
        assert!(!verify_real_part(&p, &int(0)).verdict);
    }

    #[test]
    fn profile_examples() {
        assert!(coeff_profile(&x(&[1, 1])).all());
        let bad = coeff_profile(&x(&[1, 0, 1]));
        assert!(!bad.no_internal_zeros);
        assert!(!bad.log_concave);
        let p = coeff_profile(&x(&[0, 0, 1, 3, 1]));
        assert!(p.all());
        let not_unimodal = coeff_profile(&x(&[3, 1, 3]));
        assert!(!not_unimodal.unimodal);
        assert!(!not_unimodal.log_concave);
        assert!(not_unimodal.no_internal_zeros);
    }

    #[test]
    fn theorem4_examples() {
        // g = 1 - t: P = n (q+n-2)_{n-1}, Q = n
        for n in 2..9 {
            let out = theorem4_case(&Polynomial::from_ints(Var::T, &[1, -1]), n).unwrap();
            assert!(out.verdict, "{:?}", out.checks);
            assert_eq!(out.p, falling_factorial(n as i64 - 2, n - 1).scale(&int(n as i64)));
            assert_eq!(out.q, Some(q(&[n as i64])));
            assert_eq!(out.m, 1);
        }
        // g = 1 + t, n = 4: Q = 2q + 2, zero at -1
        let out = theorem4_case(&Polynomial::from_ints(Var::T, &[1, 1]), 4).unwrap();
        assert!(out.verdict);
        assert_eq!(out.q, Some(q(&[2, 2])));
        assert_eq!(out.alpha, int(-1));
        assert_eq!(out.p, &falling_factorial(2, 3) * &q(&[2, 2]));
    }

    #[test]
    fn root_one_multiplicity_counts() {
        let fam = UnimodularFamily {
            cyclotomic: vec![3, 1, 2],
            plus_one: 2,
        };
        assert_eq!(root_one_multiplicity(&fam.poly()), 3);
        assert_eq!(fam.poly().degree(), Some(8));
        assert_eq!(root_one_multiplicity(&Polynomial::one(Var::T)), 0);
    }

    #[test]
    fn sweep_is_reproducible() {
        let a = theorem4_sweep(7, 5);
        let b = theorem4_sweep(7, 5);
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.g, y.g);
            assert_eq!(x.outcome, y.outcome);
        }
    }

    #[test]
    fn report_json_shape() {
        let r = verify_real_part(&q(&[0, 1, 0, 1]), &rat(1, 2));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["alpha"], "1/2");
        assert_eq!(v["verdict"], false);
        assert!(v["witness"].is_string());
        assert_eq!(v["polynomial"], serde_json::json!(["0", "1", "0", "1"]));
    }
}
