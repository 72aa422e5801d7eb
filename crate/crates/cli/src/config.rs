use std::path::Path;

use anyhow::{bail, Context};
use serde_json::Value;

/// Turns `{"command": "profile", "ks": [8, 10], "no_verify": true}` into
/// `ptflab profile --ks 8,10 --no-verify`, so file configs go through the
/// same parser and validation as flags.
pub fn argv_from_file(path: &Path) -> anyhow::Result<Vec<String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    argv_from_json(&value)
}

pub fn argv_from_json(value: &Value) -> anyhow::Result<Vec<String>> {
    let Value::Object(map) = value else { bail!("config must be a JSON object") };
    let Some(Value::String(command)) = map.get("command") else {
        bail!("config needs a string \"command\" field")
    };
    let mut argv = vec!["ptflab".to_string(), command.clone()];
    // serde_json keeps keys sorted, so the argument order is stable
    for (key, v) in map {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => argv.push(flag),
            Value::Number(num) => argv.extend([flag, num.to_string()]),
            Value::String(s) => argv.extend([flag, s.clone()]),
            Value::Array(items) => {
                let parts: anyhow::Result<Vec<String>> = items
                    .iter()
                    .map(|item| match item {
                        Value::Number(num) => Ok(num.to_string()),
                        Value::String(s) => Ok(s.clone()),
                        other => bail!("unsupported list entry {other} for {key}"),
                    })
                    .collect();
                argv.extend([flag, parts?.join(",")]);
            }
            Value::Object(_) => bail!("nested objects are not supported ({key})"),
        }
    }
    Ok(argv)
}
