//! On-disk cache of computed sequence entries.
//!
//! One JSON object per line, `{"kind":"u","d":3,"n":6,"value":"820150272000"}`,
//! sorted by `(kind, d, n)`. Values are decimal strings. Writes go to a
//! sibling temporary file that is then renamed over the cache.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequence::{SequenceKind, SequenceTable};

pub const DEFAULT_CACHE_PATH: &str = "./magicount-cache.ndjson";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub kind: SequenceKind,
    pub d: u32,
    pub n: usize,
    pub value: String,
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cache {path} line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("cache disagrees at {kind}(d={d}, n={n}): cached {cached}, computed {computed}")]
    Conflict {
        kind: SequenceKind,
        d: u32,
        n: usize,
        cached: String,
        computed: String,
    },
}

type Key = (SequenceKind, u32, usize);

#[derive(Debug, Clone, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<Key, BigUint>,
    dirty: bool,
}

impl Cache {
    /// An in-memory cache that never touches the filesystem.
    pub fn disabled() -> Self {
        Self::default()
    }

    /// Load `path`, or start empty if it does not exist.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut cache = Cache {
            path: Some(path.clone()),
            ..Self::default()
        };
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        for (index, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |message: String| CacheError::Parse {
                path: path.clone(),
                line: index + 1,
                message,
            };
            let record: CacheRecord =
                serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
            let value: BigUint = record
                .value
                .parse()
                .map_err(|_| parse_err(format!("value `{}` is not a non-negative integer", record.value)))?;
            let key = (record.kind, record.d, record.n);
            if cache.entries.insert(key, value).is_some() {
                return Err(parse_err(format!(
                    "duplicate record for {}(d={}, n={})",
                    record.kind, record.d, record.n
                )));
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, kind: SequenceKind, d: u32, n: usize) -> Option<&BigUint> {
        self.entries.get(&(kind, d, n))
    }

    /// The full prefix up to `n_max`, if every entry is cached.
    pub fn table(&self, kind: SequenceKind, d: u32, n_max: usize) -> Option<SequenceTable> {
        let values = (kind.first_index()..=n_max)
            .map(|n| self.get(kind, d, n).cloned())
            .collect::<Option<Vec<_>>>()?;
        Some(SequenceTable::from_values(kind, d, values))
    }

    /// Merge a computed table. Entries already cached must agree.
    pub fn insert_table(&mut self, table: &SequenceTable) -> Result<(), CacheError> {
        for (n, value) in table.iter() {
            let key = (table.kind(), table.dimension(), n);
            match self.entries.get(&key) {
                Some(cached) if cached != value => {
                    return Err(CacheError::Conflict {
                        kind: key.0,
                        d: key.1,
                        n,
                        cached: cached.to_string(),
                        computed: value.to_string(),
                    })
                }
                Some(_) => {}
                None => {
                    self.entries.insert(key, value.clone());
                    self.dirty = true;
                }
            }
        }
        Ok(())
    }

    pub fn records(&self) -> impl Iterator<Item = CacheRecord> + '_ {
        self.entries.iter().map(|(&(kind, d, n), value)| CacheRecord {
            kind,
            d,
            n,
            value: value.to_string(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for record in self.records() {
            out.push_str(&serde_json::to_string(&record).expect("record serialises"));
            out.push('\n');
        }
        out
    }

    /// Write the cache if anything changed.
    pub fn save(&mut self) -> Result<(), CacheError> {
        let Some(path) = self.path.clone() else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let io_err = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        let mut tmp_name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
        tmp_name.push(".tmp");
        let tmp = path.with_file_name(tmp_name);
        {
            let mut file = fs::File::create(&tmp).map_err(io_err)?;
            file.write_all(self.render().as_bytes()).map_err(io_err)?;
            file.sync_all().map_err(io_err)?;
        }
        fs::rename(&tmp, &path).map_err(io_err)?;
        self.dirty = false;
        Ok(())
    }

    /// Drop all entries and remove the file.
    pub fn clear(&mut self) -> Result<(), CacheError> {
        self.entries.clear();
        self.dirty = false;
        if let Some(path) = &self.path {
            match fs::remove_file(path) {
                Ok(()) => {}
                Err(e) if e.kind() == io::ErrorKind::NotFound => {}
                Err(source) => {
                    return Err(CacheError::Io {
                        path: path.clone(),
                        source,
                    })
                }
            }
        }
        Ok(())
    }

    /// `(kind, d, first n, last n, count)` per cached sequence.
    pub fn summary(&self) -> Vec<(SequenceKind, u32, usize, usize, usize)> {
        let mut out: Vec<(SequenceKind, u32, usize, usize, usize)> = Vec::new();
        for &(kind, d, n) in self.entries.keys() {
            match out.last_mut() {
                Some(last) if last.0 == kind && last.1 == d => {
                    last.3 = n;
                    last.4 += 1;
                }
                _ => out.push((kind, d, n, n, 1)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{compute_u, compute_w};

    #[test]
    fn round_trip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.ndjson");
        let mut cache = Cache::open(&path).unwrap();
        assert!(cache.is_empty());
        cache.insert_table(&compute_u(3, 6).unwrap()).unwrap();
        cache.insert_table(&compute_w(2, 4).unwrap()).unwrap();
        cache.save().unwrap();
        let first = fs::read(&path).unwrap();

        let mut reloaded = Cache::open(&path).unwrap();
        assert_eq!(reloaded.table(SequenceKind::U, 3, 6), Some(compute_u(3, 6).unwrap()));
        reloaded.insert_table(&compute_u(3, 6).unwrap()).unwrap();
        reloaded.save().unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
        assert_eq!(reloaded.render().into_bytes(), first);
        assert!(String::from_utf8(first)
            .unwrap()
            .starts_with("{\"kind\":\"u\",\"d\":3,\"n\":1,\"value\":\"1\"}\n"));
    }

    #[test]
    fn conflicts_are_reported() {
        let mut cache = Cache::disabled();
        cache.insert_table(&compute_u(2, 3).unwrap()).unwrap();
        let bogus = SequenceTable::from_values(
            SequenceKind::U,
            2,
            vec![BigUint::from(1u32), BigUint::from(2u32)],
        );
        let err = cache.insert_table(&bogus).unwrap_err();
        assert!(matches!(err, CacheError::Conflict { n: 2, .. }), "{err}");
    }

    #[test]
    fn bad_files_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.ndjson");
        fs::write(&path, "{\"kind\":\"u\",\"d\":3,\"n\":1,\"value\":\"-1\"}\n").unwrap();
        assert!(matches!(Cache::open(&path), Err(CacheError::Parse { line: 1, .. })));
        fs::write(
            &path,
            "{\"kind\":\"u\",\"d\":3,\"n\":1,\"value\":\"1\"}\n{\"kind\":\"u\",\"d\":3,\"n\":1,\"value\":\"1\"}\n",
        )
        .unwrap();
        assert!(matches!(Cache::open(&path), Err(CacheError::Parse { line: 2, .. })));
        fs::write(&path, "not json\n").unwrap();
        assert!(Cache::open(&path).is_err());
    }

    #[test]
    fn partial_tables_miss() {
        let mut cache = Cache::disabled();
        cache.insert_table(&compute_w(3, 3).unwrap()).unwrap();
        assert!(cache.table(SequenceKind::W, 3, 3).is_some());
        assert!(cache.table(SequenceKind::W, 3, 4).is_none());
        assert_eq!(cache.summary(), vec![(SequenceKind::W, 3, 0, 3, 4)]);
    }

    #[test]
    fn clear_removes_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.ndjson");
        let mut cache = Cache::open(&path).unwrap();
        cache.insert_table(&compute_u(2, 2).unwrap()).unwrap();
        cache.save().unwrap();
        assert!(path.exists());
        cache.clear().unwrap();
        assert!(!path.exists());
        assert!(cache.is_empty());
        cache.clear().unwrap();
    }
}
