use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use bgprod_core::groupalg::FiniteGroup;
use bgprod_core::{ENGINE_VERSION, SIGN_CONVENTIONS};

use crate::config::Settings;

pub const SCHEMA_VERSION: u32 = 1;

/// SHA-256 of the sign-convention table.
pub fn convention_fingerprint() -> String {
    let mut h = Sha256::new();
    for (key, rule) in SIGN_CONVENTIONS {
        h.update(key.as_bytes());
        h.update(b"=");
        h.update(rule.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

pub fn group_json(g: &FiniteGroup) -> Value {
    json!({ "name": g.name(), "order": g.order() })
}

#[derive(Debug)]
pub struct Report {
    pub command: Value,
    pub groups: Vec<Value>,
    pub result: Value,
    pub timings: Option<Value>,
}

impl Report {
    pub fn new(command: Value, result: Value) -> Self {
        Report {
            command,
            groups: Vec::new(),
            result,
            timings: None,
        }
    }

    pub fn with_group(mut self, g: &FiniteGroup) -> Self {
        self.groups.push(group_json(g));
        self
    }

    /// Pretty JSON with sorted keys; timings only when requested.
    pub fn to_json_string(&self, settings: &Settings) -> String {
        let mut body = Map::new();
        body.insert("schema_version".into(), json!(SCHEMA_VERSION));
        body.insert("engine_version".into(), json!(ENGINE_VERSION));
        body.insert("conventions".into(), json!(convention_fingerprint()));
        body.insert("command".into(), self.command.clone());
        body.insert("groups".into(), Value::Array(self.groups.clone()));
        body.insert("result".into(), self.result.clone());
        if settings.timings {
            if let Some(t) = &self.timings {
                body.insert("timings".into(), t.clone());
            }
        }
        serde_json::to_string_pretty(&Value::Object(body)).expect("serializable")
    }
}
