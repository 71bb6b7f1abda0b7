//! Content-addressed store for reduced Groebner bases.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use mlsing_core::groebner::{CachedBasis, GbCache, GbStats, ENGINE_VERSION};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    generators: Vec<String>,
    stats: GbStats,
}

/// One JSON file per basis, named by the SHA-256 of the key. Writes go to a
/// temporary file first and are renamed into place.
pub struct DiskCache {
    dir: PathBuf,
    disabled: AtomicBool,
    counter: AtomicU64,
}

pub fn digest(key: &str) -> String {
    hex::encode(Sha256::digest(key.as_bytes()))
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache {
            dir: dir.into(),
            disabled: AtomicBool::new(false),
            counter: AtomicU64::new(0),
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", digest(key)))
    }

    fn disable(&self, why: &str) {
        if !self.disabled.swap(true, Ordering::SeqCst) {
            eprintln!(
                "warning: basis cache at {} disabled: {why}",
                self.dir.display()
            );
        }
    }

    fn write(&self, key: &str, value: &CachedBasis) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            version: ENGINE_VERSION.to_string(),
            key: key.to_string(),
            generators: value.generators.clone(),
            stats: value.stats,
        };
        let body = serde_json::to_vec(&entry).map_err(std::io::Error::other)?;
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let tmp = self
            .dir
            .join(format!(".{}.{}.{n}.tmp", digest(key), std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&body)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, self.path(key)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

impl GbCache for DiskCache {
    fn lookup(&self, key: &str) -> Option<CachedBasis> {
        if self.disabled.load(Ordering::Relaxed) {
            return None;
        }
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: Entry = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => {
                log::debug!("ignoring corrupt cache entry: {e}");
                return None;
            }
        };
        if entry.version != ENGINE_VERSION || entry.key != key {
            return None;
        }
        Some(CachedBasis {
            generators: entry.generators,
            stats: entry.stats,
        })
    }

    fn store(&self, key: &str, value: &CachedBasis) {
        if self.disabled.load(Ordering::Relaxed) {
            return;
        }
        if let Err(e) = self.write(key, value) {
            self.disable(&e.to_string());
        }
    }
}
