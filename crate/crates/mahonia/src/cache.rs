//! Content-addressed cache for distribution polynomials.
//!
//! The verifier recomputes the same `(statistic, avoidance class, n)`
//! distributions thousands of times across scans; this module memoizes them
//! in memory and, when `MAHONIA_CACHE_DIR` is set, persists them as JSON
//! files named by the SHA-256 of a canonical key string. Files carry the
//! full key alongside the polynomial so a hash collision or a stale file is
//! detected rather than silently trusted. Disk publication is atomic:
//! entries are written to a temporary file in the cache directory and then
//! renamed into place, so concurrent writers can only ever race to install
//! identical content.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::qpoly::QPoly;
use crate::{Error, Result};

/// Environment variable naming the on-disk cache directory. When unset the
/// cache is memory-only.
pub const CACHE_DIR_ENV: &str = "MAHONIA_CACHE_DIR";

/// On-disk representation of one cached distribution.
#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    dist: QPoly,
}

/// A two-level (memory, optional disk) cache from canonical key strings to
/// distribution polynomials.
pub struct DistCache {
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<String, QPoly>>,
}

impl DistCache {
    /// A memory-only cache.
    pub fn in_memory() -> Self {
        DistCache {
            dir: None,
            mem: Mutex::new(HashMap::new()),
        }
    }

    /// A cache persisting under the given directory (created on first write).
    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        DistCache {
            dir: Some(dir.into()),
            mem: Mutex::new(HashMap::new()),
        }
    }

    /// Reads `MAHONIA_CACHE_DIR`; empty or unset means memory-only.
    pub fn from_env() -> Self {
        match std::env::var(CACHE_DIR_ENV) {
            Ok(dir) if !dir.is_empty() => DistCache::with_dir(dir),
            _ => DistCache::in_memory(),
        }
    }

    /// The disk directory, when persistence is enabled.
    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// The canonical key for a distribution request. `stat` and `class`
    /// must already be canonical renderings (the `Display` forms of
    /// [`crate::StatSpec`] and a sorted pattern list).
    pub fn distribution_key(stat: &str, class: &str, n: usize) -> String {
        format!("dist;stat={stat};avoid={class};n={n}")
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let digest = Sha256::digest(key.as_bytes());
        let mut name = String::with_capacity(69);
        for byte in digest {
            name.push_str(&format!("{byte:02x}"));
        }
        name.push_str(".json");
        Some(dir.join(name))
    }

    /// Looks a key up in memory, then on disk. A readable file whose stored
    /// key disagrees with the request is reported as [`Error::Cache`].
    pub fn lookup(&self, key: &str) -> Result<Option<QPoly>> {
        if let Some(hit) = self.mem.lock().expect("cache lock").get(key) {
            return Ok(Some(hit.clone()));
        }
        let Some(path) = self.path_for(key) else {
            return Ok(None);
        };
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => {
                return Err(Error::Cache(format!(
                    "reading {}: {e}",
                    path.display()
                )))
            }
        };
        let entry: Entry = serde_json::from_str(&text)
            .map_err(|e| Error::Cache(format!("parsing {}: {e}", path.display())))?;
        if entry.key != key {
            return Err(Error::Cache(format!(
                "key mismatch in {}: stored {:?}, requested {:?}",
                path.display(),
                entry.key,
                key
            )));
        }
        self.mem
            .lock()
            .expect("cache lock")
            .insert(key.to_string(), entry.dist.clone());
        Ok(Some(entry.dist))
    }

    /// Stores a value in memory and, when enabled, on disk via an atomic
    /// temp-file-then-rename publish.
    pub fn publish(&self, key: &str, dist: &QPoly) -> Result<()> {
        self.mem
            .lock()
            .expect("cache lock")
            .insert(key.to_string(), dist.clone());
        let Some(path) = self.path_for(key) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)
            .map_err(|e| Error::Cache(format!("creating {}: {e}", dir.display())))?;
        let entry = Entry {
            key: key.to_string(),
            dist: dist.clone(),
        };
        let text = serde_json::to_string(&entry)
            .map_err(|e| Error::Cache(format!("encoding entry: {e}")))?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)
            .map_err(|e| Error::Cache(format!("creating temp file in {}: {e}", dir.display())))?;
        tmp.write_all(text.as_bytes())
            .map_err(|e| Error::Cache(format!("writing temp file: {e}")))?;
        tmp.persist(&path)
            .map_err(|e| Error::Cache(format!("publishing {}: {e}", path.display())))?;
        Ok(())
    }

    /// Returns the cached value for `key`, computing and publishing it on a
    /// miss.
    pub fn get_or_compute(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<QPoly>,
    ) -> Result<QPoly> {
        if let Some(hit) = self.lookup(key)? {
            return Ok(hit);
        }
        let value = compute()?;
        self.publish(key, &value)?;
        Ok(value)
    }
}

impl Default for DistCache {
    fn default() -> Self {
        DistCache::from_env()
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::q_factorial;

    #[test]
    fn memory_roundtrip() {
        let cache = DistCache::in_memory();
        let key = DistCache::distribution_key("maj", "132", 4);
        assert_eq!(cache.lookup(&key).unwrap(), None);
        let mut calls = 0;
        let value = cache
            .get_or_compute(&key, || {
                calls += 1;
                Ok(q_factorial(4))
            })
            .unwrap();
        assert_eq!(value, q_factorial(4));
        let again = cache
            .get_or_compute(&key, || unreachable!("second call must hit"))
            .unwrap();
        assert_eq!(again, value);
        assert_eq!(calls, 1);
    }

    #[test]
    fn disk_roundtrip_and_key_verification() {
        let dir = tempfile::tempdir().unwrap();
        let key = DistCache::distribution_key("inv", "231,312", 5);
        {
            let cache = DistCache::with_dir(dir.path());
            cache.publish(&key, &q_factorial(5)).unwrap();
        }
        // A fresh cache instance re-reads the same file.
        let cache = DistCache::with_dir(dir.path());
        assert_eq!(cache.lookup(&key).unwrap(), Some(q_factorial(5)));
        // Exactly one entry on disk, and it survives re-publication.
        cache.publish(&key, &q_factorial(5)).unwrap();
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        // Corrupting the stored key is detected, not trusted.
        let path = files[0].as_ref().unwrap().path();
        let text = fs::read_to_string(&path)
            .unwrap()
            .replace("avoid=231,312", "avoid=999");
        fs::write(&path, text).unwrap();
        let fresh = DistCache::with_dir(dir.path());
        assert!(matches!(fresh.lookup(&key), Err(Error::Cache(_))));
    }
}
