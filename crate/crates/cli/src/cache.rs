//! Append-only record store, one file per root system.
//!
//! Each line is `{"key", "value", "sha256"}` where the checksum covers the key
//! and the canonical JSON of the value. Lines that fail to parse or whose
//! checksum does not match are ignored, so the value is recomputed and a
//! fresh record appended.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    value: Value,
    sha256: String,
}

fn checksum(key: &str, value: &Value) -> String {
    let mut h = Sha256::new();
    h.update(key.as_bytes());
    h.update(b"\n");
    h.update(value.to_string().as_bytes());
    hex::encode(h.finalize())
}

pub struct Cache {
    path: Option<PathBuf>,
    records: HashMap<String, Value>,
    writer: Option<File>,
    pub corrupt: usize,
    pub hits: usize,
    pub misses: usize,
}

impl Cache {
    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        Cache {
            path: None,
            records: HashMap::new(),
            writer: None,
            corrupt: 0,
            hits: 0,
            misses: 0,
        }
    }

    pub fn open(dir: &Path, system: &str) -> Result<Self> {
        let path = dir.join(format!("{system}.jsonl"));
        let mut cache = Cache {
            path: Some(path.clone()),
            ..Cache::disabled()
        };
        if path.exists() {
            let file = File::open(&path).with_context(|| format!("reading cache {}", path.display()))?;
            for line in BufReader::new(file).lines() {
                let line = line?;
                match serde_json::from_str::<Record>(&line) {
                    Ok(r) if checksum(&r.key, &r.value) == r.sha256 => {
                        cache.records.insert(r.key, r.value);
                    }
                    _ => cache.corrupt += 1,
                }
            }
        }
        Ok(cache)
    }

    pub fn get<T: for<'de> Deserialize<'de>>(&mut self, key: &str) -> Option<T> {
        let v = self.records.get(key)?;
        match serde_json::from_value(v.clone()) {
            Ok(t) => {
                self.hits += 1;
                Some(t)
            }
            Err(_) => {
                // Well-formed but of the wrong shape: treat as corrupt.
                self.corrupt += 1;
                self.records.remove(key);
                None
            }
        }
    }

    pub fn put<T: Serialize>(&mut self, key: &str, value: &T) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let value = serde_json::to_value(value)?;
        if self.writer.is_none() {
            if let Some(dir) = path.parent() {
                fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
            }
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening cache {}", path.display()))?;
            self.writer = Some(file);
        }
        let record = Record {
            key: key.to_string(),
            sha256: checksum(key, &value),
            value: value.clone(),
        };
        let w = self.writer.as_mut().expect("writer opened above");
        writeln!(w, "{}", serde_json::to_string(&record)?)?;
        self.records.insert(key.to_string(), value);
        Ok(())
    }

    /// Look up `key`, computing and appending it on a miss.
    pub fn get_or_insert<T, F>(&mut self, key: &str, compute: F) -> Result<T>
    where
        T: Serialize + for<'de> Deserialize<'de>,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        self.misses += 1;
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::open(dir.path(), "A1").unwrap();
        c.put("k1", &vec![1, 2, 3]).unwrap();
        c.put("k2", &"two").unwrap();
        drop(c);

        let mut c = Cache::open(dir.path(), "A1").unwrap();
        assert_eq!(c.get::<Vec<i32>>("k1"), Some(vec![1, 2, 3]));
        assert_eq!(c.corrupt, 0);
        drop(c);

        let path = dir.path().join("A1.jsonl");
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&path, text).unwrap();
        let mut c = Cache::open(dir.path(), "A1").unwrap();
        assert_eq!(c.corrupt, 1);
        assert_eq!(c.get::<Vec<i32>>("k1"), None);
        assert_eq!(c.get::<String>("k2").as_deref(), Some("two"));
        let v: Vec<i32> = c.get_or_insert("k1", || Ok(vec![1, 2, 3])).unwrap();
        assert_eq!(v, vec![1, 2, 3]);
        assert_eq!(c.misses, 1);
    }

    #[test]
    fn disabled_cache_stores_nothing() {
        let mut c = Cache::disabled();
        c.put("k", &1).unwrap();
        assert_eq!(c.get::<i32>("k"), None);
    }
}
