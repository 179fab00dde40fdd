use commdet_core::{Mat2, RingValue};
use num_bigint::BigInt;
use serde_json::{Number, Value};

use crate::Format;

/// Exact JSON number; relies on `arbitrary_precision`.
pub fn int(k: &BigInt) -> Value {
    Value::Number(k.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn ring(v: &RingValue) -> Value {
    match v.as_integer() {
        Some(k) => int(k),
        None => Value::String(v.to_string()),
    }
}

pub fn mat(m: &Mat2) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|v| ring(v)).collect()))
            .collect(),
    )
}

/// One newline-terminated document.
pub fn document(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{v}\n"),
        Format::Text => {
            let mut out = String::new();
            flatten("", v, &mut out);
            out
        }
    }
}

/// `key: value` lines; nested objects use dotted keys, arrays stay inline JSON.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, child, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn big_numbers_stay_exact() {
        let k: BigInt = "70033609379857422334564".parse().unwrap();
        assert_eq!(int(&k).to_string(), "70033609379857422334564");
        assert_eq!(int(&-k).to_string(), "-70033609379857422334564");
    }

    #[test]
    fn text_flattening() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": "x y"}});
        assert_eq!(document(&v, Format::Text), "a: 1\nb.c: [1,2]\nb.d: x y\n");
        assert_eq!(
            document(&v, Format::Json),
            "{\"a\":1,\"b\":{\"c\":[1,2],\"d\":\"x y\"}}\n"
        );
    }
}
