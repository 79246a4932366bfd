//! Reports printed by every subcommand.
//!
//! JSON reports have the fields `command`, `inputs`, `outputs`, `seed` and
//! `version`. Integers and rationals are decimal strings. Timing appears
//! only in the human-readable output, so a JSON report is reproduced exactly
//! by re-running its echoed inputs.

use std::time::Duration;

use apolarity::poly::LinearForm;
use serde_json::{json, Map, Value};

pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub seed: u64,
    /// Lines for the human-readable form.
    pub text: Vec<String>,
    /// All computations succeeded and every check passed.
    pub ok: bool,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: &'static str, seed: u64) -> Self {
        Self {
            command,
            inputs: Map::new(),
            outputs: Map::new(),
            seed,
            text: Vec::new(),
            ok: true,
            elapsed: Duration::ZERO,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "seed": self.seed.to_string(),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.text.join("\n");
        out.push_str(&format!("\n({} ms, seed {})", self.elapsed.as_millis(), self.seed));
        out
    }
}

pub fn int(n: usize) -> Value {
    Value::String(n.to_string())
}

pub fn ints(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&n| int(n)).collect())
}

/// A linear form as its coefficient vector together with a readable form.
pub fn linear_form(t: &LinearForm, vars: &[String]) -> Value {
    json!({
        "coefficients": t.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "form": t.display(vars),
    })
}

pub fn strings<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use apolarity::linalg::qr;

    #[test]
    fn rationals_are_exact_strings() {
        let t = LinearForm::new(vec![qr(3, 2), qr(-1, 1)]);
        let v = linear_form(&t, &["x".into(), "y".into()]);
        assert_eq!(v["coefficients"], json!(["3/2", "-1"]));
        assert_eq!(int(12), json!("12"));
    }

    #[test]
    fn schema_fields() {
        let mut r = Report::new("perp", 5);
        r.input("polynomial", "x^2").output("total", int(3));
        let v = r.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "inputs", "outputs", "seed", "version"]);
        assert_eq!(v["seed"], json!("5"));
    }
}
