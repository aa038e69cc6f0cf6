//! The JSON envelope every subcommand prints on stdout.
//!
//! Envelopes are deterministic: identical inputs produce byte-identical
//! output. Keys are emitted in sorted order, and every numeric value is
//! an exact decimal integer (unbounded; never floating point, never
//! scientific notation).

use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Number, Value};

/// Exact decimal JSON number from an unbounded integer.
pub fn exact(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

/// Assemble the envelope: command echo, parameters, result payload,
/// engine version, and provenance notes.
pub fn envelope(command: &str, parameters: Value, result: Value, notes: &[String]) -> Value {
    json!({
        "command": command,
        "parameters": parameters,
        "result": result,
        "engine_version": env!("CARGO_PKG_VERSION"),
        "notes": notes,
    })
}

pub fn print_envelope(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable envelope")
    );
}
