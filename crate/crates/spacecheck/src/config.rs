use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::Failure;

/// key=value defaults file. Flags given on the command line win; keys the
/// subcommand never asked about are reported as errors so typos do not
/// silently change nothing.
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
    consumed: RefCell<Vec<String>>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<ConfigFile, Failure> {
        let mut entries = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            for (line_no, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Failure::usage(format!(
                        "{}:{}: expected key=value, got {line:?}",
                        path.display(),
                        line_no + 1
                    ))
                })?;
                entries.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigFile {
            entries,
            consumed: RefCell::new(Vec::new()),
        })
    }

    fn take(&self, key: &str) -> Option<String> {
        self.consumed.borrow_mut().push(key.to_string());
        self.entries.get(key).cloned()
    }

    pub fn resolve_string(&self, key: &str, flag: Option<String>) -> Result<Option<String>, Failure> {
        Ok(flag.or_else(|| self.take(key)))
    }

    pub fn resolve_path(&self, key: &str, flag: Option<PathBuf>) -> Result<Option<PathBuf>, Failure> {
        Ok(flag.or_else(|| self.take(key).map(PathBuf::from)))
    }

    pub fn resolve_f64(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>, Failure> {
        match flag {
            Some(v) => {
                self.take(key);
                Ok(Some(v))
            }
            None => self
                .take(key)
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Failure::usage(format!("config key {key}: {s:?} is not a number")))
                })
                .transpose(),
        }
    }

    pub fn resolve_u64(&self, key: &str, flag: Option<u64>) -> Result<Option<u64>, Failure> {
        match flag {
            Some(v) => {
                self.take(key);
                Ok(Some(v))
            }
            None => self
                .take(key)
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|_| Failure::usage(format!("config key {key}: {s:?} is not an integer")))
                })
                .transpose(),
        }
    }

    pub fn resolve_usize(&self, key: &str, flag: Option<usize>) -> Result<Option<usize>, Failure> {
        match flag {
            Some(v) => {
                self.take(key);
                Ok(Some(v))
            }
            None => self
                .take(key)
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Failure::usage(format!("config key {key}: {s:?} is not an integer")))
                })
                .transpose(),
        }
    }

    /// Reject keys no resolver asked about.
    pub fn finish(&self) -> Result<(), Failure> {
        let consumed = self.consumed.borrow();
        let stray: Vec<&str> = self
            .entries
            .keys()
            .filter(|k| !consumed.iter().any(|c| c == *k))
            .map(String::as_str)
            .collect();
        if stray.is_empty() {
            Ok(())
        } else {
            Err(Failure::usage(format!(
                "config keys not used by this subcommand: {}",
                stray.join(", ")
            )))
        }
    }
}
