//! Append-only JSON-lines cache of rendered outputs.
//!
//! Each line is `{"key": ..., "output": ...}`. Lookups scan the file and
//! return the first record with a matching key; unparsable lines (a torn
//! final write, say) are skipped.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliResult;

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    output: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl AsRef<Path>) -> Self {
        Cache { path: path.as_ref().to_path_buf() }
    }

    pub fn get(&self, key: &str) -> CliResult<Option<String>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if let Ok(rec) = serde_json::from_str::<Record>(&line) {
                if rec.key == key {
                    return Ok(Some(rec.output));
                }
            }
        }
        Ok(None)
    }

    pub fn put(&self, key: &str, output: &str) -> CliResult<()> {
        let mut line = serde_json::to_string(&Record { key: key.to_string(), output: output.to_string() })?;
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_first_wins() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c.jsonl"));
        assert_eq!(cache.get("a").unwrap(), None);
        cache.put("a", "one\n\"two\"\n").unwrap();
        cache.put("b", "").unwrap();
        cache.put("a", "later").unwrap();
        assert_eq!(cache.get("a").unwrap().as_deref(), Some("one\n\"two\"\n"));
        assert_eq!(cache.get("b").unwrap().as_deref(), Some(""));
        assert_eq!(std::fs::read_to_string(dir.path().join("c.jsonl")).unwrap().lines().count(), 3);
    }

    #[test]
    fn skips_torn_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        std::fs::write(&path, "{\"key\":\"x\",\"out\n").unwrap();
        let cache = Cache::new(&path);
        assert_eq!(cache.get("x").unwrap(), None);
        cache.put("x", "ok").unwrap();
        assert_eq!(cache.get("x").unwrap().as_deref(), Some("ok"));
    }
}
