//! On-disk cache of count tables, one JSON file per graph key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use sawcantor_core::saw::{SawCountTable, SawCounter};
use sawcantor_core::{CayleyGraph, Result};
use sha2::{Digest, Sha256};

use crate::report::CountsJson;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "SAWCANTOR_CACHE_DIR";

/// `$SAWCANTOR_CACHE_DIR`, else `$XDG_CACHE_HOME/sawcantor`, else
/// `$HOME/.cache/sawcantor`, else a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return dir.into();
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("sawcantor");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("sawcantor");
    }
    std::env::temp_dir().join("sawcantor")
}

/// Wraps a counter; complete tables are stored and reused when long enough.
pub struct Cached<C> {
    inner: C,
    dir: PathBuf,
    hits: AtomicUsize,
    log: Mutex<Vec<String>>,
}

impl<C: SawCounter> Cached<C> {
    pub fn new(inner: C, dir: impl Into<PathBuf>) -> Self {
        Cached {
            inner,
            dir: dir.into(),
            hits: AtomicUsize::new(0),
            log: Mutex::new(Vec::new()),
        }
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    /// Cache events since the last call (hits, rejected entries, write errors).
    pub fn drain_log(&self) -> Vec<String> {
        std::mem::take(&mut self.log.lock().unwrap())
    }

    fn note(&self, msg: String) {
        self.log.lock().unwrap().push(msg);
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        let name: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.json"))
    }

    fn lookup(&self, g: &CayleyGraph, n_max: usize) -> Option<SawCountTable> {
        let key = g.key();
        let path = self.path_for(&key);
        let text = fs::read_to_string(&path).ok()?;
        let stored: CountsJson = match serde_json::from_str(&text) {
            Ok(s) => s,
            Err(e) => {
                self.note(format!(
                    "cache: ignoring unreadable {}: {e}",
                    path.display()
                ));
                return None;
            }
        };
        if stored.graph_key != key || stored.truncated || stored.n_max < n_max {
            return None;
        }
        let mut table = match stored.to_table() {
            Ok(t) => t,
            Err(e) => {
                self.note(format!("cache: ignoring {}: {e}", path.display()));
                return None;
            }
        };
        if let Err(e) = table.check_low_order(g.degree()) {
            self.note(format!("cache: rejecting entry for {key}: {e}"));
            return None;
        }
        table.counts.truncate(n_max + 1);
        table.requested_n_max = n_max;
        self.hits.fetch_add(1, Ordering::Relaxed);
        self.note(format!("cache hit: {key} (n <= {n_max})"));
        Some(table)
    }

    fn store(&self, table: &SawCountTable) -> std::io::Result<()> {
        // only called after a miss: any existing entry is shorter or invalid
        let path = self.path_for(&table.graph_key);
        write_atomic(
            &path,
            serde_json::to_string_pretty(&CountsJson::from_table(table))?.as_bytes(),
        )
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

impl<C: SawCounter> SawCounter for Cached<C> {
    fn count(&self, g: &CayleyGraph, n_max: usize) -> Result<SawCountTable> {
        if let Some(t) = self.lookup(g, n_max) {
            return Ok(t);
        }
        let table = self.inner.count(g, n_max)?;
        if !table.truncated() {
            if let Err(e) = self.store(&table) {
                self.note(format!("cache: could not write {}: {e}", g.key()));
            }
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sawcantor_core::saw::Sequential;

    #[test]
    fn round_trip_and_reuse_shorter() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cached::new(Sequential::default(), dir.path());
        let g = CayleyGraph::parse("Z^2").unwrap();
        let first = c.count(&g, 8).unwrap();
        assert_eq!(c.hits(), 0);
        assert_eq!(c.count(&g, 8).unwrap(), first);
        let shorter = c.count(&g, 5).unwrap();
        assert_eq!(c.hits(), 2);
        assert_eq!(shorter.counts[..], first.counts[..6]);
        assert_eq!(shorter.requested_n_max, 5);
        // a longer request recomputes and replaces the entry
        assert_eq!(c.count(&g, 9).unwrap().n_max(), 9);
        assert_eq!(c.hits(), 2);
        assert!(c
            .drain_log()
            .iter()
            .any(|l| l.starts_with("cache hit: Z^2")));
    }

    #[test]
    fn corrupted_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cached::new(Sequential::default(), dir.path());
        let g = CayleyGraph::parse("Z^2").unwrap();
        let good = c.count(&g, 6).unwrap();
        let path = c.path_for(&g.key());
        let text = fs::read_to_string(&path)
            .unwrap()
            .replace("\"12\"", "\"13\"");
        fs::write(&path, text).unwrap();
        assert_eq!(c.count(&g, 6).unwrap(), good);
        assert_eq!(c.hits(), 0);
        assert!(c.drain_log().iter().any(|l| l.contains("rejecting")));
        fs::write(&path, "not json").unwrap();
        assert_eq!(c.count(&g, 6).unwrap(), good);
    }
}
