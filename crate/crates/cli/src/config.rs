//! Merging of `--config` JSON files with command-line flags.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

/// Overlays the flags that were given on top of the config file at `path`.
///
/// Keys unknown to the command are rejected. A flag counts as given when it
/// is not null and not a `false` switch.
pub fn merge<A>(flags: &A, path: Option<&Path>) -> CliResult<A>
where
    A: Serialize + DeserializeOwned + Default + Clone,
{
    let Some(path) = path else {
        return Ok(flags.clone());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parsed: Value = serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    let Value::Object(mut base) = parsed else {
        return Err(CliError::config(format!("{}: config must be a JSON object", path.display())));
    };
    let allowed = object(&A::default())?;
    if let Some(k) = base.keys().find(|k| !allowed.contains_key(*k)) {
        return Err(CliError::config(format!("{}: unknown key {k:?}", path.display())));
    }
    for (k, v) in object(flags)? {
        if !v.is_null() && v != Value::Bool(false) {
            base.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(base)).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

pub fn object<A: Serialize>(a: &A) -> CliResult<Map<String, Value>> {
    match serde_json::to_value(a) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(CliError::config("arguments do not serialize to an object")),
        Err(e) => Err(CliError::config(e.to_string())),
    }
}

/// Unwraps a parameter that must come from a flag or the config file.
pub fn required<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::config(format!("missing required parameter --{flag}")))
}
