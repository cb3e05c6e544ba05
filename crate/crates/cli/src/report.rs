//! Report envelope shared by every command.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the compact JSON form of `config` (object keys sorted).
pub fn config_hash<C: Serialize + ?Sized>(config: &C) -> String {
    let value = serde_json::to_value(config).expect("configs serialize");
    let bytes = serde_json::to_vec(&value).expect("values serialize");
    format!("{:x}", Sha256::digest(&bytes))
}

/// `body` plus `version`, `command` and `config_hash`.
pub fn envelope<C: Serialize + ?Sized>(command: &str, config: &C, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("version".into(), VERSION.into());
    out.insert("command".into(), command.into());
    out.insert("config_hash".into(), config_hash(config).into());
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}
