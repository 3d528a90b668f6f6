//! Append-only result cache: newline-delimited JSON records keyed by
//! `(n, k, s, pattern)`. Lookups return the newest record written by the
//! current tool version; corrupted lines are skipped and counted.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use turan_core::search::Method;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheRecord {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    /// Canonical graph6 of the forbidden pattern.
    pub pattern: String,
    pub value: u64,
    pub witnesses: Vec<String>,
    pub method: Method,
    pub tool_version: String,
}

pub struct CacheLookup {
    pub record: Option<CacheRecord>,
    /// Lines that failed to parse as records.
    pub corrupt_lines: usize,
}

pub fn cache_get(
    path: &Path,
    n: usize,
    k: usize,
    s: usize,
    pattern: &str,
) -> std::io::Result<CacheLookup> {
    if !path.exists() {
        return Ok(CacheLookup {
            record: None,
            corrupt_lines: 0,
        });
    }
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut newest = None;
    let mut corrupt = 0usize;
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheRecord>(&line) {
            Ok(rec) => {
                // Records written by other versions are ignored, not
                // counted as corruption.
                if rec.tool_version == TOOL_VERSION
                    && rec.n == n
                    && rec.k == k
                    && rec.s == s
                    && rec.pattern == pattern
                {
                    newest = Some(rec);
                }
            }
            Err(_) => corrupt += 1,
        }
    }
    Ok(CacheLookup {
        record: newest,
        corrupt_lines: corrupt,
    })
}

pub fn cache_put(path: &Path, record: &CacheRecord) -> std::io::Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let line = serde_json::to_string(record).expect("record serializes");
    writeln!(file, "{line}")
}
