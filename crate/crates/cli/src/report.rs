//! Report assembly. Reports are plain JSON with sorted keys, so identical
//! (input, seed, command) runs emit identical bytes; wall-clock timing is
//! added only on request for exactly that reason.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub details: Option<String>,
}

impl Check {
    pub fn pass(name: &'static str, details: Option<String>) -> Self {
        Check {
            name,
            passed: true,
            details,
        }
    }
}

pub fn input_digest(command: &str, canonical_input: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(command.as_bytes());
    hasher.update(b"\n");
    hasher.update(canonical_input.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn render(
    command: &str,
    digest: &str,
    seed: u64,
    results: Value,
    checks: &[Check],
    timing_ms: Option<u128>,
) -> String {
    let verification: Vec<Value> = checks
        .iter()
        .map(|c| {
            let mut v = json!({
                "check": c.name,
                "passed": c.passed,
            });
            if let Some(d) = &c.details {
                v["details"] = json!(d);
            }
            v
        })
        .collect();
    let mut report = json!({
        "command": command,
        "input_digest": digest,
        "seed": seed,
        "results": results,
        "verification": verification,
    });
    if let Some(ms) = timing_ms {
        report["timing_ms"] = json!(ms);
    }
    let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
    out.push('\n');
    out
}
