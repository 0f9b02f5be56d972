//! Scenarios: named, ordered steps with optional expectations, and the runner.
//!
//! ```toml
//! name = "heisenberg-small"
//!
//! [parameters]
//! p = 3
//!
//! [[steps]]
//! name = "twists"
//! op = "heisenberg.twists"
//! args = { p = "$p" }
//! expect = { status = "pass", values = { group_order = 27 } }
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::cache;
use crate::config::Settings;
use crate::error::{CliError, OpError};
use crate::ops::{self, Args, Ctx, OpDef};
use crate::report::{Report, Status, StepReport};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub name: String,
    pub op: String,
    #[serde(default)]
    pub args: BTreeMap<String, Value>,
    #[serde(default)]
    pub expect: Option<Expectation>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub status: Option<Status>,
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
}

pub const BUILTINS: &[(&str, &str)] = &[
    ("heisenberg", "twist calculus on Heisenberg(p) (--p, default 5)"),
    ("asp", "the affine symplectic group ASp(n,2) (--n, default 2)"),
    ("metaplectic", "ASp(n,2) and its metaplectic lift (--n, default 2)"),
    ("quadratic", "the quadratic example on ASp(n,2) (--n, default 2)"),
    ("m11cubic", "the cubic form over GF(243) and M11"),
    ("lagrangian", "Lagrangian subgroups of (Z/p^2)^2 (--p, default 5)"),
    ("mcc", "the groups M(C,c) for C = Z/n (--n, default 5)"),
];

impl Scenario {
    pub fn parse(text: &str, source_name: &str) -> Result<Scenario, CliError> {
        let sc: Scenario = toml::from_str(text).map_err(|e| CliError::parse(source_name, e.to_string()))?;
        if sc.steps.is_empty() {
            return Err(CliError::parse(source_name, "a scenario needs at least one step"));
        }
        Ok(sc)
    }

    /// Replace parameters by name; only declared parameters may be set.
    pub fn override_parameters(&mut self, overrides: &BTreeMap<String, String>) -> Result<(), CliError> {
        for (k, raw) in overrides {
            let Some(current) = self.parameters.get_mut(k) else {
                let known: Vec<&String> = self.parameters.keys().collect();
                return Err(CliError::Usage(format!("scenario {} has no parameter `{k}` (parameters: {known:?})", self.name)));
            };
            *current = if current.is_i64() {
                json!(raw.parse::<i64>().map_err(|_| CliError::Usage(format!("parameter `{k}` must be an integer, got `{raw}`")))?)
            } else {
                json!(raw)
            };
        }
        Ok(())
    }

    fn substitute(&self, step: &Step) -> Result<BTreeMap<String, Value>, CliError> {
        step.args
            .iter()
            .map(|(k, v)| {
                let v = match v.as_str().and_then(|s| s.strip_prefix('$')) {
                    Some(param) => self.parameters.get(param).cloned().ok_or_else(|| {
                        CliError::Usage(format!("step `{}` refers to unknown parameter `${param}`", step.name))
                    })?,
                    None => v.clone(),
                };
                Ok((k.clone(), v))
            })
            .collect()
    }
}

fn step(name: &str, op: &str, args: Value, expect: Option<Value>) -> Step {
    let args = serde_json::from_value(args).expect("builtin arguments are an object");
    let expect = expect.map(|e| Expectation { status: None, values: serde_json::from_value(e).expect("builtin expectations are an object") });
    Step { name: name.into(), op: op.into(), args, expect }
}

/// The builtin scenario `name` with its default parameters.
pub fn builtin(name: &str) -> Option<Scenario> {
    let (parameters, steps) = match name {
        "heisenberg" => (
            json!({ "p": 5 }),
            vec![
                step("twists", "heisenberg.twists", json!({ "p": "$p" }), None),
                step("presentations", "presentation.lemma", json!({ "p": "$p" }), None),
                step("commutator", "heisenberg.commutator", json!({ "p": "$p" }), None),
                step("circ", "heisenberg.circ", json!({ "p": "$p" }), None),
                step("skew", "skew.rule", json!({ "p": "$p" }), None),
                step("separation", "separation", json!({ "family": "heisenberg", "p": "$p" }), None),
                step("triangular", "heisenberg.triangular", json!({ "p": "$p" }), None),
            ],
        ),
        "asp" => (json!({ "n": 2 }), vec![step("asp", "asp.group", json!({ "n": "$n" }), None)]),
        "metaplectic" => (
            json!({ "n": 2 }),
            vec![
                step("asp", "asp.group", json!({ "n": "$n" }), None),
                step("lift", "metaplectic.lift", json!({ "n": "$n" }), None),
            ],
        ),
        "quadratic" => (
            json!({ "n": 2 }),
            vec![
                step("example", "quadratic.example", json!({ "n": "$n" }), None),
            ],
        ),
        "m11cubic" => (
            json!({}),
            vec![step(
                "cubic",
                "m11cubic",
                json!({}),
                Some(json!({ "closure_order": 7920, "stabilizer_closure_order": 660, "coboundary_feasible": false })),
            )],
        ),
        "lagrangian" => (json!({ "p": 5 }), vec![step("lagrangian", "lagrangian", json!({ "p": "$p" }), None)]),
        "mcc" => (json!({ "n": 5 }), vec![step("mcc", "mcc", json!({ "n": "$n" }), None)]),
        _ => return None,
    };
    Some(Scenario {
        name: name.into(),
        parameters: serde_json::from_value(parameters).expect("builtin parameters are an object"),
        steps,
    })
}

/// Expectations that follow from the parameters of a builtin scenario.
pub fn add_builtin_expectations(sc: &mut Scenario) {
    let int = |k: &str| sc.parameters.get(k).and_then(Value::as_i64);
    let mut extra: Vec<(&str, Value)> = Vec::new();
    let mut more_steps = Vec::new();
    match sc.name.as_str() {
        "heisenberg" => {
            let p = int("p").unwrap_or(0);
            extra.push(("twists", json!({ "group_order": p * p * p, "center_order": p })));
        }
        "asp" | "metaplectic" => {
            let n = int("n").unwrap_or(0);
            if let Some(order) = asp_order(n) {
                extra.push(("asp", json!({ "order": order })));
                if sc.name == "metaplectic" {
                    extra.push(("lift", json!({ "quotient_order": order })));
                }
            }
        }
        "quadratic" => {
            let n = int("n").unwrap_or(0);
            if n >= 4 {
                extra.push(("example", json!({ "coboundary_feasible": false })));
            }
            if n == 2 {
                more_steps.push(step("h1", "quadratic.h1", json!({ "n": "$n" }), None));
                more_steps.push(step("separation", "separation", json!({ "family": "quadratic" }), None));
            }
        }
        "mcc" => {
            let n = int("n").unwrap_or(0);
            extra.push(("mcc", json!({ "order": n * n * n })));
        }
        _ => {}
    }
    for (name, values) in extra {
        if let Some(s) = sc.steps.iter_mut().find(|s| s.name == name) {
            let values: BTreeMap<String, Value> = serde_json::from_value(values).expect("object");
            s.expect.get_or_insert_with(Expectation::default).values.extend(values);
        }
    }
    sc.steps.extend(more_steps);
}

/// |ASp(n,2)| = 2ⁿ·|Sp(n,2)|.
fn asp_order(n: i64) -> Option<u64> {
    if n <= 0 || n % 2 != 0 || n > 8 {
        return None;
    }
    let k = (n / 2) as u32;
    let mut sp: u64 = 2u64.pow(k * k);
    for i in 1..=k {
        sp *= 4u64.pow(i) - 1;
    }
    Some(2u64.pow(n as u32) * sp)
}

/// What to do around each step.
pub struct RunOptions<'a> {
    pub settings: &'a Settings,
    pub base: &'a Path,
    pub timing: bool,
    /// Receives progress lines (cache hits, timings).
    pub log: &'a mut dyn FnMut(&str),
}

pub struct RunResult {
    pub report: Report,
    pub exit_code: i32,
}

fn compare(step: &StepReport, key: &str, want: &Value) -> Option<String> {
    let got = step.outcome.values.get(key).cloned().or_else(|| step.outcome.checks.get(key).map(|b| json!(b)));
    match got {
        None => Some(format!("{key}: no such value")),
        Some(got) if got != *want => Some(format!("{key}: expected {want}, got {got}")),
        Some(_) => None,
    }
}

pub fn run(sc: &Scenario, opts: RunOptions<'_>) -> Result<RunResult, CliError> {
    // Resolve and type-check every step before anything runs.
    let mut prepared: Vec<(&Step, &'static OpDef, Args)> = Vec::new();
    for s in &sc.steps {
        let op = ops::lookup(&s.op).ok_or_else(|| {
            CliError::Usage(format!("step `{}` names unknown operation `{}`", s.name, s.op))
        })?;
        let raw = sc.substitute(s)?;
        let args = op.prepare(&raw, opts.base, &s.name)?;
        prepared.push((s, op, args));
    }
    let snapshot = opts.settings.snapshot();
    let mut ctx = Ctx::new(opts.settings.limits.clone());
    let mut steps = Vec::new();
    let mut timing = BTreeMap::new();
    let mut halted = false;
    let mut internal = false;
    for (s, op, args) in prepared {
        let mut report = StepReport {
            name: s.name.clone(),
            op: op.name.into(),
            args: args.values.clone(),
            status: Status::Skipped,
            outcome: Default::default(),
            expectation_failures: Vec::new(),
            error: None,
        };
        if halted {
            steps.push(report);
            continue;
        }
        let started = Instant::now();
        let key = cache::key(op.name, &args.key_material(), &snapshot);
        let cached = if opts.settings.use_cache { cache::load(&opts.settings.cache_dir, &key) } else { None };
        let result = match cached {
            Some(outcome) => {
                (opts.log)(&format!("cache hit: {} ({})", s.name, &key[..12]));
                Ok(outcome)
            }
            None => {
                let r = op.execute(&mut ctx, &args);
                if let (true, Ok(outcome)) = (opts.settings.use_cache, &r) {
                    (opts.log)(&format!("cache miss: {} ({})", s.name, &key[..12]));
                    if let Err(e) = cache::store(&opts.settings.cache_dir, &key, outcome) {
                        (opts.log)(&format!("cache write failed: {e}"));
                    }
                }
                r
            }
        };
        let secs = started.elapsed().as_secs_f64();
        (opts.log)(&format!("time {}: {secs:.3}s", s.name));
        if opts.timing {
            timing.insert(s.name.clone(), (secs * 1000.0).round() / 1000.0);
        }
        match result {
            Ok(outcome) => {
                report.status = if outcome.checks.values().any(|ok| !ok) {
                    Status::Fail
                } else if !outcome.unchecked.is_empty() {
                    Status::Unchecked
                } else {
                    Status::Pass
                };
                report.outcome = outcome;
            }
            Err(e) => {
                internal |= matches!(e, OpError::Internal(_));
                report.status = Status::Fail;
                report.error = Some(e.to_string());
                halted = true;
            }
        }
        let expect = s.expect.clone().unwrap_or_default();
        match expect.status {
            Some(want) if want != report.status => report
                .expectation_failures
                .push(format!("status: expected {}, got {}", want.as_str(), report.status.as_str())),
            None if report.status == Status::Fail => report.expectation_failures.push("status: expected pass, got fail".into()),
            _ => {}
        }
        if report.error.is_none() {
            for (k, want) in &expect.values {
                if let Some(msg) = compare(&report, k, want) {
                    report.expectation_failures.push(msg);
                }
            }
        }
        steps.push(report);
    }
    let failed = steps.iter().any(|s| !s.expectation_failures.is_empty());
    let status = if failed {
        Status::Fail
    } else if steps.iter().any(|s| s.status == Status::Skipped) {
        Status::Skipped
    } else if steps.iter().any(|s| s.status == Status::Unchecked) {
        Status::Unchecked
    } else {
        Status::Pass
    };
    let exit_code = if internal {
        2
    } else if failed {
        1
    } else {
        0
    };
    let report = Report {
        scenario: sc.name.clone(),
        parameters: sc.parameters.clone(),
        config: snapshot,
        status,
        steps,
        timing: opts.timing.then_some(timing),
    };
    Ok(RunResult { report, exit_code })
}
