//! The built-in regression corpus: small scenarios for every construction,
//! each with the outcome it must produce.

use serde_json::Value;

use crate::report::{run_command, Report};
use crate::scenario::{name_of, parse_json, RunError};

macro_rules! entry {
    ($file:literal) => {
        ($file, include_str!(concat!("../corpus/", $file)))
    };
}

/// `(file name, JSON text)` for every built-in scenario.
pub static CORPUS: &[(&str, &str)] = &[
    entry!("q-line.json"),
    entry!("q-times-q.json"),
    entry!("pm-plane.json"),
    entry!("half-plane-mirror.json"),
    entry!("c3-rotation-chart.json"),
    entry!("reflection-index2.json"),
    entry!("trivial-chart.json"),
    entry!("klein-four-index2.json"),
    entry!("qxq-x-axis-full.json"),
    entry!("qxq-diagonal.json"),
    entry!("qxq-diagonal-not-invariant.json"),
    entry!("reflection-line.json"),
    entry!("z2-square.json"),
    entry!("z2-square-regular.json"),
    entry!("z2-square-empty.json"),
    entry!("pm-circle.json"),
    entry!("z2-identity.json"),
    entry!("half-plane-x.json"),
    entry!("half-plane-mirror-y.json"),
    entry!("qxq-square.json"),
    entry!("qxq-circle.json"),
    entry!("swap-sum.json"),
    entry!("pm-to-sign.json"),
    entry!("space-half-turn.json"),
    entry!("c3-axis.json"),
    entry!("cube-reflections.json"),
    entry!("square-symmetry-plane.json"),
    entry!("plane-to-plane-pm.json"),
    entry!("bad-equivariance.json"),
    entry!("malformed-rational.json"),
    entry!("z2-line-obstruction.json"),
    entry!("klein-plane-obstruction.json"),
    entry!("c3-obstruction.json"),
    entry!("reflection-obstruction.json"),
    entry!("sard-square.json"),
    entry!("sard-linear.json"),
    entry!("sard-constant.json"),
    entry!("four-types.json"),
    entry!("parity-abb.json"),
    entry!("type-c-retraction.json"),
    entry!("disk-pm-retraction.json"),
    entry!("disk-pm-retraction-quadric.json"),
    entry!("borsuk-manifold.json"),
    entry!("qxq-embedding.json"),
    entry!("qxq-embedding-wrong-theta.json"),
    entry!("parity-interval.json"),
    entry!("parity-loop.json"),
    entry!("parity-mixed.json"),
    entry!("mirror-end.json"),
    entry!("two-mirrors.json"),
    entry!("open-port.json"),
];

#[derive(Clone, Debug)]
pub struct CorpusOutcome {
    pub name: String,
    pub anchor: String,
    pub command: String,
    pub exit: i32,
    pub expected_exit: i32,
    pub mismatches: Vec<String>,
    pub report: Option<Report>,
}

impl CorpusOutcome {
    pub fn passed(&self) -> bool {
        self.exit == self.expected_exit && self.mismatches.is_empty()
    }
}

pub fn scenarios() -> Vec<Value> {
    CORPUS.iter().map(|(f, text)| parse_json(text).unwrap_or_else(|e| panic!("corpus file {f}: {e}"))).collect()
}

pub fn find(name: &str) -> Option<Value> {
    scenarios().into_iter().find(|v| name_of(v) == name)
}

fn close(a: &Value, b: &Value) -> bool {
    match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) if a.is_number() && b.is_number() => x == y,
        _ => a == b,
    }
}

/// Runs one scenario and compares the result with its `"expect"` block:
/// `exit`, `equals` (JSON pointer to value), `at_least` (pointer to number)
/// and `error_contains`.
pub fn run_entry(v: &Value) -> CorpusOutcome {
    let s = |k: &str| v.get(k).and_then(Value::as_str).unwrap_or("").to_string();
    let expect = v.get("expect").cloned().unwrap_or(Value::Null);
    let expected_exit = expect.get("exit").and_then(Value::as_i64).unwrap_or(0) as i32;
    let mut mismatches = Vec::new();
    let result = run_command(&s("command"), v);
    let (exit, report) = match result {
        Ok(r) => (r.exit_code(), Some(r)),
        Err(e) => {
            if let Some(want) = expect.get("error_contains").and_then(Value::as_str) {
                if !e.to_string().contains(want) {
                    mismatches.push(format!("error {e:?} does not mention {want:?}"));
                }
            }
            (e.exit_code(), None)
        }
    };
    if let Some(r) = &report {
        if let Some(eq) = expect.get("equals").and_then(Value::as_object) {
            for (ptr, want) in eq {
                match r.value.pointer(ptr) {
                    Some(got) if close(got, want) => {}
                    got => mismatches.push(format!("{ptr}: expected {want}, got {}", got.map_or("nothing".into(), |g| g.to_string()))),
                }
            }
        }
        if let Some(lb) = expect.get("at_least").and_then(Value::as_object) {
            for (ptr, want) in lb {
                let got = r.value.pointer(ptr).and_then(Value::as_f64);
                let want = want.as_f64().unwrap_or(f64::INFINITY);
                if !got.is_some_and(|g| g >= want) {
                    mismatches.push(format!("{ptr}: expected at least {want}, got {got:?}"));
                }
            }
        }
    }
    CorpusOutcome { name: name_of(v), anchor: s("anchor"), command: s("command"), exit, expected_exit, mismatches, report }
}

/// Runs every scenario whose anchor contains `anchor`. With `corrupt`, the
/// named scenario's expected exit code is flipped, which must make the run
/// fail; this exercises the runner itself.
pub fn run_corpus(anchor: Option<&str>, corrupt: Option<&str>) -> Result<Vec<CorpusOutcome>, RunError> {
    let mut out = Vec::new();
    for mut v in scenarios() {
        let a = v.get("anchor").and_then(Value::as_str).unwrap_or("");
        if anchor.is_some_and(|want| !a.contains(want)) {
            continue;
        }
        if corrupt == Some(name_of(&v).as_str()) {
            let old = v.pointer("/expect/exit").and_then(Value::as_i64).unwrap_or(0);
            v["expect"]["exit"] = Value::from(if old == 0 { 2 } else { 0 });
        }
        out.push(run_entry(&v));
    }
    if let Some(c) = corrupt {
        if !out.iter().any(|o| o.name == c) {
            return Err(RunError::Input { path: "--corrupt".into(), message: format!("no scenario named {c:?}") });
        }
    }
    Ok(out)
}
