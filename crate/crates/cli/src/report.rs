//! Report envelope. Maps are key-sorted, so equal inputs give equal bytes.

use serde_json::{json, Map, Value};

use convexa_core::rational;

pub const SCHEMA_VERSION: u64 = 1;

pub struct Report {
    pub verb: &'static str,
    pub pass: bool,
    pub seed: Option<u64>,
    pub inputs: Value,
    pub result: Value,
}

fn is_rational(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    match body.split_once('/') {
        Some((n, d)) => {
            !n.is_empty() && !d.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) && d.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Every "p/q" string under `v`, keyed by JSON pointer, as a decimal.
fn collect(v: &Value, at: &mut String, out: &mut Map<String, Value>) {
    match v {
        Value::String(s) if is_rational(s) => {
            if let Ok(q) = rational::parse(s) {
                let d = rational::to_f64(&q);
                if let Some(n) = serde_json::Number::from_f64(d) {
                    out.insert(at.clone(), Value::Number(n));
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                let len = at.len();
                at.push_str(&format!("/{i}"));
                collect(x, at, out);
                at.truncate(len);
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                let len = at.len();
                at.push('/');
                at.push_str(&escape(k));
                collect(x, at, out);
                at.truncate(len);
            }
        }
        _ => {}
    }
}

pub fn decimals(result: &Value) -> Value {
    let mut out = Map::new();
    collect(result, &mut "/result".to_string(), &mut out);
    Value::Object(out)
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "verb": self.verb,
            "status": if self.pass { "pass" } else { "fail" },
            "exit_code": self.exit_code(),
            "inputs": self.inputs,
            "result": self.result,
            "decimals": decimals(&self.result),
        });
        if let Some(s) = self.seed {
            v["seed"] = json!(s);
        }
        v
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_mirror_rationals_only() {
        let r = json!({"x": "1/4", "ys": ["-3/2", "label", "7"], "a/b": {"z": "2/1"}});
        let d = decimals(&r);
        assert_eq!(d["/result/x"], json!(0.25));
        assert_eq!(d["/result/ys/0"], json!(-1.5));
        assert_eq!(d["/result/a~1b/z"], json!(2.0));
        assert_eq!(d.as_object().unwrap().len(), 3);
    }
}
