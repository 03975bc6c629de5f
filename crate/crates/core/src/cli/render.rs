use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn walk(prefix: &str, v: &Value, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{prefix} = {s}\n"));
        return;
    }
    match v {
        Value::Array(xs) => {
            // strings get a line each, other scalars share one
            let flat: Option<Vec<String>> = if xs.iter().any(Value::is_string) {
                None
            } else {
                xs.iter().map(scalar).collect()
            };
            match flat {
                Some(items) => out.push_str(&format!("{prefix} = [{}]\n", items.join(", "))),
                None if xs.is_empty() => out.push_str(&format!("{prefix} = []\n")),
                None => {
                    for (k, x) in xs.iter().enumerate() {
                        walk(&format!("{prefix}[{k}]"), x, out);
                    }
                }
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, x, out);
            }
        }
        _ => unreachable!(),
    }
}

/// One `key = value` line per leaf; arrays of scalars stay on one line and
/// `null` (a step skipped by a size bound) prints as `-`.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": null}, "e": [[0], [1]], "f": ["x, y"], "g": []});
        assert_eq!(
            super::text(&v),
            "a = 1\nb.c = [1, 2]\nb.d = -\ne[0] = [0]\ne[1] = [1]\nf[0] = x, y\ng = []\n"
        );
    }
}
