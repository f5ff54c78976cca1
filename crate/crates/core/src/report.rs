//! Scan CSV format and the resumable scan cache.
//!
//! The CSV has the fixed header `p,n1,ord1,n2,ord2,divides,ap1,ap2`, one
//! row per good prime in increasing order, `divides` written as `0`/`1`
//! and `\n` line endings. A cache file is the same table preceded by a
//! `#key=` line naming the curves and points it belongs to.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::support::{ReductionRecord, SupportProblem};

pub const CSV_HEADER: &str = "p,n1,ord1,n2,ord2,divides,ap1,ap2";

/// Environment variable naming a directory for scan caches.
pub const CACHE_DIR_ENV: &str = "RIGIDITY_CACHE_DIR";

const KEY_PREFIX: &str = "#key=";

pub fn record_row(r: &ReductionRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.p,
        r.n1,
        r.ord1,
        r.n2,
        r.ord2,
        u8::from(r.divides),
        r.ap1,
        r.ap2
    )
}

pub fn render_csv(records: &[ReductionRecord]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&record_row(r));
        out.push('\n');
    }
    out
}

fn parse_row(line: &str, lineno: usize) -> Result<ReductionRecord> {
    let bad = |why: &str| Error::Cache(format!("line {lineno}: {why}: `{line}`"));
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 8 {
        return Err(bad("expected 8 fields"));
    }
    let u = |i: usize| {
        fields[i]
            .parse::<u64>()
            .map_err(|_| bad("bad unsigned field"))
    };
    let s = |i: usize| {
        fields[i]
            .parse::<i64>()
            .map_err(|_| bad("bad signed field"))
    };
    let divides = match fields[5] {
        "0" => false,
        "1" => true,
        _ => return Err(bad("divides must be 0 or 1")),
    };
    Ok(ReductionRecord {
        p: u(0)?,
        n1: u(1)?,
        ord1: u(2)?,
        n2: u(3)?,
        ord2: u(4)?,
        divides,
        ap1: s(6)?,
        ap2: s(7)?,
    })
}

/// Parses a CSV table (header plus rows); rows must increase strictly in `p`.
pub fn parse_csv(text: &str) -> Result<Vec<ReductionRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => {
            return Err(Error::Cache(format!(
                "expected header `{CSV_HEADER}`, found `{}`",
                other.unwrap_or("")
            )))
        }
    }
    let mut records: Vec<ReductionRecord> = Vec::new();
    for (i, line) in lines.enumerate() {
        let rec = parse_row(line, i + 2)?;
        if records.last().is_some_and(|prev| prev.p >= rec.p) {
            return Err(Error::Cache(format!(
                "line {}: primes not increasing",
                i + 2
            )));
        }
        records.push(rec);
    }
    Ok(records)
}

/// Identifies the curves and points of a scan.
pub fn cache_key(problem: &SupportProblem) -> String {
    let (e1, e2) = problem.curves();
    let (p, q) = problem.points();
    format!(
        "E1={},{};P={};E2={},{};Q={}",
        e1.a(),
        e1.b(),
        p,
        e2.a(),
        e2.b(),
        q
    )
}

/// File name for a key inside a cache directory.
pub fn cache_file_name(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    format!("scan-{}.csv", &hex::encode(digest)[..16])
}

pub fn default_cache_path(problem: &SupportProblem) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(Path::new(&dir).join(cache_file_name(&cache_key(problem))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheFile {
    pub key: String,
    pub records: Vec<ReductionRecord>,
}

impl CacheFile {
    pub fn render(&self) -> String {
        format!("{KEY_PREFIX}{}\n{}", self.key, render_csv(&self.records))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (first, rest) = text
            .split_once('\n')
            .ok_or_else(|| Error::Cache("empty cache file".into()))?;
        let key = first
            .strip_prefix(KEY_PREFIX)
            .ok_or_else(|| Error::Cache(format!("missing `{KEY_PREFIX}` line")))?;
        Ok(CacheFile {
            key: key.to_string(),
            records: parse_csv(rest)?,
        })
    }

    /// `Ok(None)` if the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Self>> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text).map(Some),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Cache(format!("{}: {e}", path.display()))),
        }
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.render())
            .and_then(|_| fs::rename(&tmp, path))
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub reused: usize,
    pub computed: usize,
    /// The cache file existed but belonged to other parameters.
    pub invalidated: bool,
}

/// Scan all good primes `<= bound`, reusing and extending the cache at
/// `cache` when given. Only primes above the largest cached prime are
/// computed; the cache is rewritten once, after the merge.
pub fn cached_scan(
    problem: &SupportProblem,
    bound: u64,
    workers: usize,
    cache: Option<&Path>,
) -> Result<(Vec<ReductionRecord>, CacheStats)> {
    let primes = problem.good_primes(bound);
    let Some(path) = cache else {
        let records = problem.scan_primes(primes.primes(), workers)?;
        let computed = records.len();
        return Ok((
            records,
            CacheStats {
                computed,
                ..Default::default()
            },
        ));
    };
    let key = cache_key(problem);
    let mut stats = CacheStats::default();
    let mut cached = match CacheFile::load(path)? {
        Some(file) if file.key == key => file.records,
        Some(_) => {
            stats.invalidated = true;
            Vec::new()
        }
        None => Vec::new(),
    };
    let cached_max = cached.last().map_or(0, |r| r.p);
    let fresh: Vec<u64> = primes
        .primes()
        .iter()
        .copied()
        .filter(|&p| p > cached_max)
        .collect();
    let computed = problem.scan_primes(&fresh, workers)?;
    stats.computed = computed.len();
    if !computed.is_empty() || stats.invalidated {
        cached.extend(computed);
        CacheFile {
            key,
            records: cached.clone(),
        }
        .store(path)?;
    }
    let records: Vec<ReductionRecord> = cached.into_iter().filter(|r| r.p <= bound).collect();
    stats.reused = records.len() - stats.computed;
    Ok((records, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_q::{CurveQ, PointQ};

    fn problem() -> SupportProblem {
        let e = CurveQ::new(0, -2).unwrap();
        let p = PointQ::from_integers(3, 5);
        let q = e.scalar_mul(2, &p).unwrap();
        SupportProblem::new(e, p, e, q).unwrap()
    }

    #[test]
    fn csv_format() {
        let rec = ReductionRecord {
            p: 7,
            n1: 7,
            ord1: 7,
            n2: 7,
            ord2: 7,
            divides: true,
            ap1: 1,
            ap2: 1,
        };
        assert_eq!(record_row(&rec), "7,7,7,7,7,1,1,1");
        let text = render_csv(&[rec]);
        assert_eq!(text, "p,n1,ord1,n2,ord2,divides,ap1,ap2\n7,7,7,7,7,1,1,1\n");
        assert_eq!(parse_csv(&text).unwrap(), vec![rec]);
        assert!(parse_csv("p,n1\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n7,7,7,7,7,2,1,1\n")).is_err());
        let twice = format!("{CSV_HEADER}\n7,7,7,7,7,1,1,1\n7,7,7,7,7,1,1,1\n");
        assert!(parse_csv(&twice).is_err());
    }

    #[test]
    fn resume_matches_cold() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let pb = problem();
        let (cold, _) = cached_scan(&pb, 800, 1, None).unwrap();
        let (first, s1) = cached_scan(&pb, 300, 1, Some(&path)).unwrap();
        assert_eq!(s1.reused, 0);
        assert_eq!(
            first,
            cold.iter()
                .copied()
                .filter(|r| r.p <= 300)
                .collect::<Vec<_>>()
        );
        let (resumed, s2) = cached_scan(&pb, 800, 3, Some(&path)).unwrap();
        assert_eq!(resumed, cold);
        assert_eq!(s2.reused, first.len());
        // shorter bound is served from cache only
        let (short, s3) = cached_scan(&pb, 100, 1, Some(&path)).unwrap();
        assert_eq!(s3.computed, 0);
        assert!(short.iter().all(|r| r.p <= 100));
        // round trip is byte-identical
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(CacheFile::parse(&text).unwrap().render(), text);
    }

    #[test]
    fn key_mismatch_invalidates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let pb = problem();
        CacheFile {
            key: "E1=1,1;P=0:1:1;E2=1,1;Q=0:1:1".into(),
            records: vec![],
        }
        .store(&path)
        .unwrap();
        let (records, stats) = cached_scan(&pb, 100, 1, Some(&path)).unwrap();
        assert!(stats.invalidated);
        assert_eq!(stats.computed, records.len());
        assert_eq!(CacheFile::load(&path).unwrap().unwrap().key, cache_key(&pb));
    }
}
