use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser, Subcommand};
use serde_json::{json, Map, Value};

use cycleforge_core::cycle_poly::{p_lambda, p_ncycle, r_part, r_part_of};
use cycleforge_core::oracle::{brute_boccara_count, brute_p_lambda, brute_p_lambda_mu};
use cycleforge_core::poly::{format_rational, parse_rational};
use cycleforge_core::probability::{boccara_count, pi, pi_brute};
use cycleforge_core::roots::{coeff_profile, theorem4_sweep, verify_real_part};
use cycleforge_core::verify::{run_all, VerifyConfig};
use cycleforge_core::{
    combinat::{binomial, stirling_first_row},
    Error, Method, OracleConfig, Partition, Polynomial, Rational, Route, Var,
};

mod render;

use render::{render_checks, Outcome, Status};

#[derive(Parser)]
#[command(name = "cycleforge", version)]
#[command(about = "Exact cycle-count polynomials and same-cycle probabilities for products with n-cycles")]
struct Cli {
    /// Emit one JSON object instead of plain text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle-count polynomial P_lambda(q)
    Pq {
        /// Cycle type, e.g. 3,3,2 (any order)
        #[arg(long)]
        lambda: Partition,
        /// Must equal the size of lambda when given
        #[arg(long)]
        n: Option<usize>,
        /// operator | gprime | hook | stirling
        #[arg(long, default_value = "operator", value_parser = parse_method)]
        method: Method,
        /// Also enumerate by brute force and compare
        #[arg(long)]
        oracle: bool,
    },
    /// P_{lambda,mu}(q) by enumeration, using the canonical element of type mu
    Plm {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// Probability that 1..k share a cycle of the product of two random n-cycles
    Prob {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// closed | boccara | series | brute
        #[arg(long, default_value = "closed", value_parser = parse_route)]
        method: Route,
        #[arg(long)]
        oracle: bool,
    },
    /// Number of ordered pairs of n-cycles with product a fixed permutation of type lambda
    Boccara {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        oracle: bool,
    },
    /// Root location and coefficient shape for P_lambda or an explicit polynomial
    Roots {
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        lambda: Option<Partition>,
        /// JSON array of coefficient strings, ascending degree, e.g. '["0","1","0","1"]'
        #[arg(long)]
        poly: Option<String>,
        /// Claimed common real part of the zeros
        #[arg(long, default_value = "0")]
        alpha: String,
    },
    /// Number of n-cycles w with w(1,...,n) having k cycles, for every k
    Cnk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Seeded random sweep of shift-operator images of unimodular g
    Theorem4 {
        #[arg(long, default_value_t = 2009)]
        seed: u64,
        /// Total cases, split evenly between d <= n-1 and d >= n-1
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Run the whole invariant suite
    Verify {
        /// Depth for checks that enumerate permutations
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s.parse::<Method>()? {
        Method::Oracle => Err("use --oracle to compare against enumeration".into()),
        m => Ok(m),
    }
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse()
}

/// Input problems exit 2; failed identities exit 1.
fn classify(e: &Error) -> Status {
    match e {
        Error::NonIntegral { .. } | Error::InexactDivision(_) | Error::ClassFunctionViolation(_) => {
            Status::Failed
        }
        _ => Status::Invalid,
    }
}

fn lambda_params(lambda: &Partition) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(lambda.n()));
    m.insert("lambda".into(), json!(lambda.parts()));
    m
}

fn cmd_pq(lambda: Partition, n: Option<usize>, method: Method, oracle: bool) -> Result<Outcome, Error> {
    if let Some(n) = n {
        if n != lambda.n() {
            return Err(Error::SizeMismatch {
                left: n,
                right: lambda.n(),
            });
        }
    }
    let p = p_lambda(&lambda, method)?;
    let mut out = Outcome::new("pq", lambda_params(&lambda));
    out.field("method", json!(method.name()));
    out.field("poly", json!(p.poly));
    out.route(method.name());
    out.line(format!("P_{}(q) = {}", lambda, p.poly));
    if oracle {
        let brute = brute_p_lambda(&lambda, &OracleConfig::from_env())?;
        out.route("oracle");
        out.agreement(p.poly == brute, &format!("{method}: {}", p.poly), &format!("oracle: {brute}"));
    }
    Ok(out)
}

fn cmd_plm(lambda: Partition, mu: Partition) -> Result<Outcome, Error> {
    let poly = brute_p_lambda_mu(&lambda, &mu, &OracleConfig::from_env())?;
    let mut out = Outcome::new("plm", lambda_params(&lambda));
    out.field("mu", json!(mu.parts()));
    out.field("method", json!("oracle"));
    out.field("poly", json!(poly));
    out.route("oracle");
    out.line(format!("P_{},{}(q) = {}", lambda, mu, poly));
    Ok(out)
}

fn cmd_prob(n: usize, k: usize, route: Route, oracle: bool) -> Result<Outcome, Error> {
    let cfg = OracleConfig::from_env();
    let r = pi(n, k, route, &cfg)?;
    let mut params = Map::new();
    params.insert("n".into(), json!(n));
    params.insert("k".into(), json!(k));
    let mut out = Outcome::new("prob", params);
    let method = match route {
        Route::BoccaraSum => "boccara",
        other => other.name(),
    };
    out.field("method", json!(method));
    out.field("value", json!(format_rational(&r.value)));
    out.route(route.name());
    out.line(format_rational(&r.value));
    if oracle && route != Route::Brute {
        let brute = pi_brute(n, k, &cfg)?;
        out.route("brute");
        out.agreement(
            r.value == brute.value,
            &format!("{}: {}", route, format_rational(&r.value)),
            &format!("brute: {}", format_rational(&brute.value)),
        );
    }
    Ok(out)
}

fn cmd_boccara(lambda: Partition, oracle: bool) -> Result<Outcome, Error> {
    let count = boccara_count(&lambda)?;
    let mut out = Outcome::new("boccara", lambda_params(&lambda));
    out.field("method", json!("boccara"));
    out.field("value", json!(count.to_string()));
    out.route("integral");
    out.line(count.to_string());
    if oracle {
        let brute = brute_boccara_count(&lambda, &OracleConfig::from_env())?;
        out.route("oracle");
        out.agreement(count == brute, &format!("integral: {count}"), &format!("oracle: {brute}"));
    }
    Ok(out)
}

fn parse_poly_arg(raw: &str) -> Result<Polynomial, Error> {
    let bad = || Error::InvalidCoefficient(raw.to_string());
    let value: Value = serde_json::from_str(raw).map_err(|_| bad())?;
    let items = value.as_array().ok_or_else(bad)?;
    let coeffs = items
        .iter()
        .map(|v| match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<Rational>, Error>>()?;
    Ok(Polynomial::new(Var::Q, coeffs))
}

fn cmd_roots(lambda: Option<Partition>, poly: Option<String>, alpha: String) -> Result<Outcome, Error> {
    let alpha = parse_rational(&alpha)?;
    let (mut out, p, r) = match (lambda, poly) {
        (Some(lambda), _) => {
            let p = p_lambda(&lambda, Method::Operator)?;
            let r = r_part(&p)?;
            let mut out = Outcome::new("roots", lambda_params(&lambda));
            out.line(format!("P_{}(q) = {}", lambda, p.poly));
            (out, p.poly, Some(r))
        }
        (None, Some(raw)) => {
            let p = parse_poly_arg(&raw)?;
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            // R exists when the support has a single parity
            let n = p.degree().unwrap();
            let r = r_part_of(&p, n).ok();
            let mut params = Map::new();
            params.insert("poly".into(), json!(p));
            let mut out = Outcome::new("roots", params);
            out.line(format!("P(q) = {p}"));
            (out, p, r)
        }
        (None, None) => unreachable!("clap requires one of --lambda / --poly"),
    };
    let report = verify_real_part(&p, &alpha);
    out.route("sturm");
    out.line(format!(
        "every zero has real part {}: {}",
        format_rational(&alpha),
        report.verdict
    ));
    if let Some(w) = &report.witness {
        out.line(format!("witness: {w}"));
    }
    let mut ok = report.verdict;
    out.field("report", serde_json::to_value(&report).unwrap());
    match r {
        Some(r) => {
            let profile = coeff_profile(&r);
            ok &= profile.all();
            out.line(format!("R(x) = {r}"));
            out.line(format!(
                "R coefficients: log_concave {}, no_internal_zeros {}, unimodal {}",
                profile.log_concave, profile.no_internal_zeros, profile.unimodal
            ));
            out.field("r", json!(r));
            out.field("profile", serde_json::to_value(profile).unwrap());
        }
        None => out.line("R(x): support has mixed parity".to_string()),
    }
    if !ok {
        out.status = Status::Failed;
    }
    Ok(out)
}

fn cmd_cnk(n: usize, oracle: bool) -> Result<Outcome, Error> {
    let p = p_ncycle(n)?;
    let row = stirling_first_row(n + 1);
    let denom = binomial(n + 1, 2);
    let mut params = Map::new();
    params.insert("n".into(), json!(n));
    let mut out = Outcome::new("cnk", params);
    out.field("method", json!("stirling"));
    out.field("poly", json!(p.poly));
    out.route("stirling");
    out.line(format!("n = {n}, C(n+1,2) = {denom}"));
    out.line(format!("{:>3}  {:>24}  {:>20}", "k", "c(n+1,k)", "count"));
    let mut rows = Vec::new();
    for k in 1..=n {
        let count = p.poly.coeff(k);
        out.line(format!(
            "{:>3}  {:>24}  {:>20}",
            k,
            row[k].to_string(),
            format_rational(&count)
        ));
        rows.push(json!({
            "k": k,
            "stirling": row[k].to_string(),
            "count": format_rational(&count),
        }));
    }
    out.field("rows", Value::Array(rows));
    if oracle {
        let brute = brute_p_lambda(&Partition::single(n), &OracleConfig::from_env())?;
        out.route("oracle");
        out.agreement(p.poly == brute, &format!("stirling: {}", p.poly), &format!("oracle: {brute}"));
    }
    Ok(out)
}

fn cmd_theorem4(seed: u64, cases: usize) -> Result<Outcome, Error> {
    let per_regime = cases.div_ceil(2);
    let sweep = theorem4_sweep(seed, per_regime);
    let mut params = Map::new();
    params.insert("seed".into(), json!(seed));
    params.insert("cases".into(), json!(sweep.len()));
    let mut out = Outcome::new("theorem4", params);
    out.route("sturm");
    let mut passed = 0;
    for case in &sweep {
        let o = &case.outcome;
        if o.verdict {
            passed += 1;
        }
        out.line(format!(
            "{:>3} {:<11} n={:<2} d={:<2} m={:<2} Re={:<5} {} g={}",
            case.index,
            match case.regime {
                cycleforge_core::roots::Regime::Divisible => "d<=n-1",
                cycleforge_core::roots::Regime::HighDegree => "d>=n-1",
            },
            o.n,
            o.d,
            o.m,
            format_rational(&o.alpha),
            if o.verdict { "ok" } else { "FAIL" },
            case.g
        ));
        for c in o.checks.iter().filter(|c| !c.passed) {
            out.line(format!("      {}: {}", c.name, c.detail));
        }
    }
    out.line(format!("{passed}/{} cases passed", sweep.len()));
    out.field("passed", json!(passed));
    out.field("results", serde_json::to_value(&sweep).unwrap());
    if passed != sweep.len() {
        out.status = Status::Failed;
    }
    Ok(out)
}

fn cmd_verify(max_n: usize) -> Result<Outcome, Error> {
    let cfg = VerifyConfig::new(max_n, OracleConfig::from_env());
    let results = run_all(&cfg);
    let mut params = Map::new();
    params.insert("max_n".into(), json!(max_n));
    let mut out = Outcome::new("verify", params);
    for line in render_checks(&results) {
        out.line(line);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.field("checks", serde_json::to_value(&results).unwrap());
    out.field("failed", json!(failed));
    if failed > 0 {
        out.status = Status::Failed;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let started = Instant::now();
    let result = match cli.command {
        Command::Pq {
            lambda,
            n,
            method,
            oracle,
        } => cmd_pq(lambda, n, method, oracle),
        Command::Plm { lambda, mu } => cmd_plm(lambda, mu),
        Command::Prob { n, k, method, oracle } => cmd_prob(n, k, method, oracle),
        Command::Boccara { lambda, oracle } => cmd_boccara(lambda, oracle),
        Command::Roots { lambda, poly, alpha } => cmd_roots(lambda, poly, alpha),
        Command::Cnk { n, oracle } => cmd_cnk(n, oracle),
        Command::Theorem4 { seed, cases } => cmd_theorem4(seed, cases),
        Command::Verify { max_n } => cmd_verify(max_n),
    };
    match result {
        Ok(mut out) => {
            out.elapsed_ms = started.elapsed().as_millis();
            out.emit(cli.json);
            out.status.exit_code()
        }
        Err(e) => {
            let status = classify(&e);
            eprintln!("error: {e}");
            if status == Status::Invalid {
                eprintln!("{}", Cli::command().render_usage());
            }
            status.exit_code()
        }
    }
}
