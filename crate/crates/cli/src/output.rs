//! Human and JSON rendering of exact values.

use std::fmt;

use massforge::{LaurentPoly, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// What a command prints, and whether it counts as success.
pub struct Report {
    pub ok: bool,
    pub text: String,
}

impl Report {
    pub fn new(ok: bool, text: String) -> Self {
        Self { ok, text }
    }

    pub fn json(ok: bool, value: Value) -> Self {
        let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
        text.push('\n');
        Self { ok, text }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// `a/b`, with `(≈ x)` appended when `decimal` is set.
pub fn rational(r: &Rational, decimal: bool) -> String {
    match (decimal, r.to_f64()) {
        (true, Some(x)) => format!("{r} (≈ {x:.10})"),
        _ => r.to_string(),
    }
}

/// Sparse `[[coeff, q_exponent], ...]`.
pub fn poly_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.q_terms()
            .into_iter()
            .map(|(e, c)| json!([c.to_string(), e]))
            .collect(),
    )
}
