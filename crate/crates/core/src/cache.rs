//! On-disk cache of JSON results, one file per entry named by a digest of
//! the key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CACHE_SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "BISETKIT_CACHE";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// The explicit directory if given, else `BISETKIT_CACHE`, else none.
    pub fn configure(dir: Option<PathBuf>, no_cache: bool) -> Self {
        if no_cache {
            return Cache::disabled();
        }
        match dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Cache::at(d),
            None => Cache::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(command: &str, args: &[String]) -> String {
        let canonical = json!([CACHE_SCHEMA_VERSION, command, args]).to_string();
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn path(&self, command: &str, args: &[String]) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", Cache::key(command, args))))
    }

    /// The cached payload, or `None` when absent, stale or unreadable. A
    /// corrupted entry is reported on standard error and ignored.
    pub fn get(&self, command: &str, args: &[String]) -> Option<Value> {
        let path = self.path(command, args)?;
        let text = fs::read_to_string(&path).ok()?;
        let entry: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => {
                eprintln!("warning: ignoring corrupted cache entry {}: {e}", path.display());
                return None;
            }
        };
        let fresh = entry["schema_version"] == json!(CACHE_SCHEMA_VERSION)
            && entry["command"] == json!(command)
            && entry["args"] == json!(args);
        if !fresh {
            return None;
        }
        match entry.get("payload") {
            Some(p) => Some(p.clone()),
            None => {
                eprintln!("warning: ignoring corrupted cache entry {}: no payload", path.display());
                None
            }
        }
    }

    /// Writes atomically through a temporary file and a rename.
    pub fn put(&self, command: &str, args: &[String], payload: &Value) -> Result<()> {
        let Some(path) = self.path(command, args) else {
            return Ok(());
        };
        let dir = self.dir.as_ref().expect("enabled");
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let entry = json!({
            "schema_version": CACHE_SCHEMA_VERSION,
            "command": command,
            "args": args,
            "created_at": created_at,
            "payload": payload,
        });
        let tmp = dir.join(format!(".{}.{}.tmp", Cache::key(command, args), std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(|e| io_error(&tmp, e))?;
        file.write_all(entry.to_string().as_bytes())
            .and_then(|_| file.sync_all())
            .map_err(|e| io_error(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| io_error(&path, e))
    }
}
