//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use num_bigint::BigInt;

use cycleforge_core::combinat::{binomial, partitions_of, stirling_first, Partition};
use cycleforge_core::cycle_poly::{p_lambda, p_ncycle, Method};
use cycleforge_core::oracle::{brute_p_lambda, brute_p_lambda_mu, brute_pi, OracleConfig};
use cycleforge_core::poly::{int, rat, Polynomial, Rational, Var};
use cycleforge_core::probability::{f_series_coeff, pi_closed, pi_sum};
use cycleforge_core::roots::{theorem4_sweep, verify_real_part};

type Outcome = Result<String, String>;

fn ensure(cond: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(failure())
    }
}

fn k2_formula(n: usize) -> Rational {
    let m = n as i64;
    if n % 2 == 1 {
        rat(1, 2)
    } else {
        rat(1, 2) - rat(2, (m - 1) * (m + 2))
    }
}

fn k3_formula(n: usize) -> Rational {
    let m = n as i64;
    if n % 2 == 1 {
        rat(1, 3) + rat(1, (m - 2) * (m + 3))
    } else {
        rat(1, 3) - rat(3, (m - 1) * (m + 2))
    }
}

fn sum_matches_k2() -> Outcome {
    for n in 2..=30 {
        let got = pi_sum(n, 2).map_err(|e| e.to_string())?.value;
        ensure(got == k2_formula(n), || format!("n = {n}: {got} != {}", k2_formula(n)))?;
    }
    Ok("pi_sum(n, 2) = closed form for 2 <= n <= 30".into())
}

fn sum_matches_k3() -> Outcome {
    for n in 3..=30 {
        let got = pi_sum(n, 3).map_err(|e| e.to_string())?.value;
        ensure(got == k3_formula(n), || format!("n = {n}: {got} != {}", k3_formula(n)))?;
    }
    Ok("pi_sum(n, 3) = closed form for 3 <= n <= 30".into())
}

fn brute_matches_closed() -> Outcome {
    let cfg = OracleConfig::default();
    let mut cases = 0;
    for n in 2..=7 {
        for k in [2, 3] {
            if k > n {
                continue;
            }
            let brute = brute_pi(n, k, &cfg).map_err(|e| e.to_string())?;
            let closed = pi_closed(n, k).map_err(|e| e.to_string())?.value;
            ensure(brute == closed, || format!("n = {n}, k = {k}: brute {brute}, closed {closed}"))?;
            cases += 1;
        }
    }
    Ok(format!("brute_pi = closed form, {cases} cases with n <= 7, k in {{2, 3}}"))
}

fn series_matches_sum() -> Outcome {
    for n in 2..=30 {
        let sum = pi_sum(n, 2).map_err(|e| e.to_string())?.value;
        let coeff = f_series_coeff(n);
        let expected = int(n as i64 - 1) * sum;
        ensure(coeff == expected, || format!("n = {n}: [t^n]F = {coeff}, (n-1) pi = {expected}"))?;
    }
    Ok("[t^n]F(t) = (n-1) pi_sum(n, 2) for 2 <= n <= 30".into())
}

fn routes_agree() -> Outcome {
    let cfg = OracleConfig::default();
    let mut with_oracle = 0;
    let mut total = 0;
    for n in 1..=12 {
        for lambda in partitions_of(n) {
            let reference = p_lambda(&lambda, Method::Operator).map_err(|e| e.to_string())?.poly;
            for method in [Method::Gprime, Method::Hook] {
                let other = p_lambda(&lambda, method).map_err(|e| e.to_string())?.poly;
                ensure(other == reference, || format!("{lambda}: {method} gives {other}, operator {reference}"))?;
            }
            if n <= 8 {
                let brute = brute_p_lambda(&lambda, &cfg).map_err(|e| e.to_string())?;
                ensure(brute == reference, || format!("{lambda}: oracle {brute}, formula {reference}"))?;
                with_oracle += 1;
            }
            total += 1;
        }
    }
    Ok(format!(
        "operator = gprime = hook on {total} partitions (n <= 12), = oracle on {with_oracle} (n <= 8)"
    ))
}

fn ncycle_stirling() -> Outcome {
    let cfg = OracleConfig::default();
    for n in 1..=10 {
        let p = p_ncycle(n).map_err(|e| e.to_string())?.poly;
        let denom = binomial(n + 1, 2);
        for k in 0..=n + 1 {
            let c = p.coeff(k);
            if (n + k) % 2 == 1 {
                ensure(c == int(0), || format!("n = {n}: coefficient of q^{k} is {c}"))?;
                continue;
            }
            let s = stirling_first(n + 1, k);
            ensure(&s % &denom == BigInt::from(0), || format!("C({}, 2) does not divide c({}, {k})", n + 1, n + 1))?;
            let expected = Rational::from_integer(s / &denom);
            ensure(c == expected, || format!("n = {n}, k = {k}: {c} != {expected}"))?;
        }
        if n <= 8 {
            let brute = brute_p_lambda(&Partition::single(n), &cfg).map_err(|e| e.to_string())?;
            ensure(brute == p, || format!("n = {n}: oracle {brute}, Stirling {p}"))?;
        }
    }
    Ok("P_(n) = sum c(n+1,k)/C(n+1,2) q^k, exact, for n <= 10; oracle agrees for n <= 8".into())
}

fn zeros_imaginary() -> Outcome {
    let mut at_12 = 0;
    for n in 1..=12 {
        for lambda in partitions_of(n) {
            let p = p_lambda(&lambda, Method::Operator).map_err(|e| e.to_string())?.poly;
            let expected = n + 1 - lambda.len();
            ensure(p.degree() == Some(expected), || format!("{lambda}: degree {:?}, expected {expected}", p.degree()))?;
            let report = verify_real_part(&p, &int(0));
            ensure(report.verdict, || format!("{lambda}: {}", report.witness.clone().unwrap_or_default()))?;
            if n == 12 {
                at_12 += 1;
            }
        }
    }
    Ok(format!("every zero of P_lambda has real part 0, degree n - len + 1, n <= 12 ({at_12} at n = 12)"))
}

fn counterexample() -> Outcome {
    let lambda = Partition::new(vec![3, 3, 2]).unwrap();
    let p = brute_p_lambda_mu(&lambda, &lambda, &OracleConfig::default()).map_err(|e| e.to_string())?;
    let expected = Polynomial::from_ints(Var::Q, &[0, 0, 660, 0, 424, 0, 35, 0, 1]);
    ensure(p == expected, || format!("got {p}"))?;
    let report = verify_real_part(&p, &int(0));
    ensure(!report.verdict, || "verify_real_part accepted it".into())?;
    Ok(format!(
        "P_(3,3,2),(3,3,2) = {p}; real part 0 rejected ({})",
        report.witness.unwrap_or_default()
    ))
}

fn shift_operator_sweep() -> Outcome {
    let sweep = theorem4_sweep(2009, 50);
    ensure(sweep.len() == 100, || format!("{} cases", sweep.len()))?;
    let mut with_division = 0;
    for case in &sweep {
        let o = &case.outcome;
        let names: Vec<&str> = o.checks.iter().map(|c| c.name.as_str()).collect();
        if o.d < o.n {
            ensure(names.contains(&"divisibility") && names.contains(&"degree Q") && names.contains(&"real part Q"), || {
                format!("case {}: missing part (a) checks {names:?}", case.index)
            })?;
            with_division += 1;
        }
        if o.d + 1 >= o.n {
            ensure(names.contains(&"degree P") && names.contains(&"real part P"), || {
                format!("case {}: missing part (b) checks {names:?}", case.index)
            })?;
        }
        if let Some(c) = o.checks.iter().find(|c| !c.passed) {
            return Err(format!("case {} g = {} n = {}: {} ({})", case.index, case.g, o.n, c.name, c.detail));
        }
    }
    Ok(format!("100 seeded cases (seed 2009), {with_division} with d <= n - 1"))
}

fn verify_command() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_cycleforge"))
        .args(["verify", "--max-n", "8"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let summary = stdout.lines().last().unwrap_or("").to_string();
    ensure(out.status.code() == Some(0), || format!("exit {:?}: {summary}", out.status.code()))?;
    Ok(format!(
        "`cycleforge verify --max-n 8` exits 0: {summary}; parity checked as P(-q) = (-1)^(n-len+1) P(q)"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("two-point probability, partition sum vs closed form", sum_matches_k2),
        ("three-point probability, partition sum vs closed form", sum_matches_k3),
        ("pair enumeration vs closed forms", brute_matches_closed),
        ("generating function vs partition sum", series_matches_sum),
        ("P_lambda routes and oracle", routes_agree),
        ("n-cycle Stirling form", ncycle_stirling),
        ("zeros of P_lambda on the imaginary axis", zeros_imaginary),
        ("two-class counterexample", counterexample),
        ("shift-operator sweep", shift_operator_sweep),
        ("structural invariants via verify", verify_command),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
