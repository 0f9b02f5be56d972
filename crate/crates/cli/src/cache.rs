//! Content-addressed store of step outcomes.
//!
//! The key hashes the operation, its arguments (group specs and twist files
//! are passed by content) and the configuration snapshot. Each entry carries a
//! checksum of its payload; a mismatch is treated as a miss.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::ConfigSnapshot;
use crate::report::Outcome;

#[derive(Serialize, Deserialize)]
struct Entry {
    checksum: String,
    payload: String,
}

pub fn key(op: &str, args: &std::collections::BTreeMap<String, Value>, config: &ConfigSnapshot) -> String {
    let doc = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "op": op,
        "args": args,
        "config": config,
    });
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(&key[..2]).join(format!("{key}.json"))
}

/// A stored outcome, or None when absent or corrupt.
pub fn load(dir: &Path, key: &str) -> Option<Outcome> {
    let text = std::fs::read_to_string(path_for(dir, key)).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if hex::encode(Sha256::digest(entry.payload.as_bytes())) != entry.checksum {
        return None;
    }
    serde_json::from_str(&entry.payload).ok()
}

pub fn store(dir: &Path, key: &str, outcome: &Outcome) -> std::io::Result<()> {
    let payload = serde_json::to_string(outcome).expect("outcome serializes");
    let entry = Entry { checksum: hex::encode(Sha256::digest(payload.as_bytes())), payload };
    let path = path_for(dir, key);
    std::fs::create_dir_all(path.parent().expect("cache path has a parent"))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(&entry).expect("entry serializes"))?;
    std::fs::rename(tmp, path)
}
