//! Content-addressed store of result records, one JSON file per input hash.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use super::input::InputFile;
use crate::config::Config;

/// sha256 over the canonical input, command, normalized flags, config and version.
pub fn input_hash(input: &InputFile, command: &str, flags: &[(String, String)], config: &Config) -> String {
    let mut flags = flags.to_vec();
    flags.sort();
    let mut h = Sha256::new();
    h.update(input.canonical().as_bytes());
    h.update(format!("command {command}\n").as_bytes());
    for (k, v) in &flags {
        h.update(format!("flag {k}={v}\n").as_bytes());
    }
    h.update(serde_json::to_string(config).expect("config serializes").as_bytes());
    h.update(format!("\nversion {}\n", env!("CARGO_PKG_VERSION")).as_bytes());
    hex::encode(h.finalize())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// A stored record for `hash`, or None. Unreadable or mismatched entries
    /// are reported and ignored.
    pub fn load(&self, hash: &str) -> Option<Value> {
        let path = self.path(hash);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Value>(&text) {
            Ok(v) if v.get("input_hash").and_then(Value::as_str) == Some(hash) && v.get("command").is_some() => Some(v),
            Ok(_) => {
                log::warn!("ignoring cache entry {}: hash mismatch", display(&path));
                None
            }
            Err(e) => {
                log::warn!("ignoring corrupt cache entry {}: {e}", display(&path));
                None
            }
        }
    }

    pub fn store(&self, hash: &str, record: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{hash}.json.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(record).expect("record serializes"))?;
        fs::rename(tmp, self.path(hash))
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}
