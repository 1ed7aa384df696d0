use std::process::ExitCode;

use serde_json::{json, Map, Value};

use cycleforge_core::verify::CheckResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verdict came back false or two routes disagreed.
    Failed,
    /// Bad arguments or a refused computation.
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> ExitCode {
        ExitCode::from(match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Invalid => 2,
        })
    }
}

/// Everything a subcommand produced, printed once at the end.
pub struct Outcome {
    pub command: &'static str,
    fields: Map<String, Value>,
    routes: Vec<String>,
    lines: Vec<String>,
    pub elapsed_ms: u128,
    pub status: Status,
}

impl Outcome {
    pub fn new(command: &'static str, params: Map<String, Value>) -> Self {
        Outcome {
            command,
            fields: params,
            routes: Vec::new(),
            lines: Vec::new(),
            elapsed_ms: 0,
            status: Status::Ok,
        }
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn route(&mut self, name: &str) {
        self.routes.push(name.to_string());
    }

    pub fn line(&mut self, line: String) {
        self.lines.push(line);
    }

    /// Records a cross-check; on disagreement both values are printed and the
    /// command fails.
    pub fn agreement(&mut self, agree: bool, ours: &str, theirs: &str) {
        self.field("agree", json!(agree));
        if agree {
            self.line(format!("cross-check ({}): agree", self.routes.join(" vs ")));
        } else {
            self.status = Status::Failed;
            self.line("cross-check: DISAGREE".to_string());
            self.line(format!("  {ours}"));
            self.line(format!("  {theirs}"));
            self.field("mismatch", json!([ours, theirs]));
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        obj.insert("routes".into(), json!(self.routes));
        obj.insert("elapsed_ms".into(), json!(self.elapsed_ms as u64));
        Value::Object(obj)
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string(&self.to_json()).unwrap());
        } else {
            for line in &self.lines {
                println!("{line}");
            }
        }
    }
}

pub fn render_checks(results: &[CheckResult]) -> Vec<String> {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut lines = vec![format!(
        "{:<4}  {:<28}  {:<width$}  {:>6}  {}",
        "",
        "module",
        "check",
        "cases",
        "depth"
    )];
    for r in results {
        lines.push(format!(
            "{:<4}  {:<28}  {:<width$}  {:>6}  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.module,
            r.name,
            r.cases,
            r.depth
        ));
        if let Some(d) = &r.detail {
            lines.push(format!("      first failure: {d}"));
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    lines.push(format!(
        "{} of {} checks passed",
        results.len() - failed,
        results.len()
    ));
    lines
}
