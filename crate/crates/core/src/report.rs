//! JSON encodings shared by reports: integers as numbers when they fit in
//! `i64` (strings otherwise), rationals as `"p/q"` strings.

use num_traits::ToPrimitive;
use serde_json::Value;

use crate::arith::{Int, Matrix, Rat};

pub fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn rat_json(x: &Rat) -> Value {
    Value::from(x.to_string())
}

pub fn vec_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rat_vec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn matrix_json(m: &Matrix<Int>) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(m.row(i))).collect())
}

/// Pretty JSON where arrays holding only scalars stay on one line, so
/// vectors print as `[1, 0, 0]` and matrices as one row per line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::from(key.as_str()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rendering_round_trips() {
        let v = json!({"a": [[1, 2], [3, 4]], "b": {"c": "x", "d": []}, "e": null});
        let text = render(&v);
        assert!(text.contains("[1, 2]"));
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }
}
