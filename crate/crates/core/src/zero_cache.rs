//! CSV persistence for located critical-line zeros.
//!
//! Format: a `index,t,residual` header, then one row per zero, sorted by t.
//! `t` is printed with at least 12 significant digits and both reals use
//! the shortest representation that round-trips, so re-running the same
//! scan rewrites byte-identical content. Merging may insert earlier zeros
//! (re-ranking the index column) but never disturbs the t-ordering of
//! existing records.

use crate::zeta::ZeroRecord;
use std::fs;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

pub const HEADER: &str = "index,t,residual";

/// Two records closer than this in t are considered the same zero.
const T_DEDUP: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed cache at {path}, line {line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },
}

fn significant_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap_or(s);
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_start_matches('0');
    trimmed.len()
}

/// Shortest round-trip decimal, padded to `min_digits` significant digits.
pub fn format_significant(x: f64, min_digits: usize) -> String {
    let shortest = format!("{x}");
    if significant_digits(&shortest) >= min_digits || !x.is_finite() {
        shortest
    } else {
        format!("{:.*e}", min_digits - 1, x)
    }
}

/// Render records into the cache CSV format.
pub fn render(records: &[ZeroRecord]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{}\n",
            r.index,
            format_significant(r.t, 12),
            format_significant(r.residual, 1)
        ));
    }
    out
}

/// Read a cache file; a missing file is an empty cache.
pub fn read(path: &Path) -> Result<Vec<ZeroRecord>, CacheError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => {
            return Err(CacheError::Io {
                path: path.display().to_string(),
                source: e,
            })
        }
    };
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line.trim() != HEADER {
                return Err(CacheError::Parse {
                    path: path.display().to_string(),
                    line: 1,
                    reason: format!("expected header `{HEADER}`, got `{line}`"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CacheError::Parse {
                path: path.display().to_string(),
                line: i + 1,
                reason: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let parse = |f: &str, what: &str| -> Result<f64, CacheError> {
            f.trim().parse::<f64>().map_err(|e| CacheError::Parse {
                path: path.display().to_string(),
                line: i + 1,
                reason: format!("bad {what}: {e}"),
            })
        };
        let index = fields[0]
            .trim()
            .parse::<usize>()
            .map_err(|e| CacheError::Parse {
                path: path.display().to_string(),
                line: i + 1,
                reason: format!("bad index: {e}"),
            })?;
        records.push(ZeroRecord {
            index,
            t: parse(fields[1], "t")?,
            residual: parse(fields[2], "residual")?,
        });
    }
    Ok(records)
}

/// Write records (assumed t-sorted) to the cache file.
pub fn write(path: &Path, records: &[ZeroRecord]) -> Result<(), CacheError> {
    let io_err = |source| CacheError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut file = fs::File::create(path).map_err(io_err)?;
    file.write_all(render(records).as_bytes()).map_err(io_err)?;
    Ok(())
}

/// Merge newly found zeros into an existing cache: the union is sorted by
/// t, duplicates (within 1e-9 in t) keep the existing record, and indices
/// are re-assigned as the 1-based rank in the merged list.
pub fn merge(existing: &[ZeroRecord], found: &[ZeroRecord]) -> Vec<ZeroRecord> {
    let mut merged: Vec<ZeroRecord> = existing.to_vec();
    for f in found {
        if !merged.iter().any(|e| (e.t - f.t).abs() < T_DEDUP) {
            merged.push(*f);
        }
    }
    merged.sort_by(|a, b| a.t.total_cmp(&b.t));
    for (i, r) in merged.iter_mut().enumerate() {
        r.index = i + 1;
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(index: usize, t: f64, residual: f64) -> ZeroRecord {
        ZeroRecord { index, t, residual }
    }

    #[test]
    fn render_and_read_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.csv");
        let records = vec![
            rec(1, 14.134725141734694, 2.5e-12),
            rec(2, 21.022039638771556, 1.0e-11),
        ];
        write(&path, &records).unwrap();
        let back = read(&path).unwrap();
        assert_eq!(back, records);
        // writing again produces identical bytes
        let first = fs::read(&path).unwrap();
        write(&path, &back).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
    }

    #[test]
    fn missing_file_is_empty_cache() {
        let dir = tempfile::tempdir().unwrap();
        assert!(read(&dir.path().join("nope.csv")).unwrap().is_empty());
    }

    #[test]
    fn malformed_header_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        fs::write(&path, "t,index\n1,2\n").unwrap();
        assert!(matches!(
            read(&path),
            Err(CacheError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn merge_dedupes_and_reindexes() {
        let existing = vec![rec(1, 21.0220396, 1e-9)];
        let found = vec![rec(1, 14.1347251, 2e-9), rec(2, 21.0220396, 3e-9)];
        let merged = merge(&existing, &found);
        assert_eq!(merged.len(), 2);
        assert_eq!(merged[0].index, 1);
        assert!((merged[0].t - 14.1347251).abs() < 1e-12);
        assert_eq!(merged[1].index, 2);
        // the duplicate kept the existing residual
        assert_eq!(merged[1].residual, 1e-9);
    }

    #[test]
    fn twelve_significant_digits_for_t() {
        assert_eq!(format_significant(14.5, 12), "1.45000000000e1");
        let long = format_significant(14.134725141734695, 12);
        assert_eq!(long, "14.134725141734695");
        assert_eq!(long.parse::<f64>().unwrap(), 14.134725141734695);
        // f64 Display never uses scientific notation; it still round-trips
        let tiny = format_significant(2.5e-12, 1);
        assert_eq!(tiny, "0.0000000000025");
        assert_eq!(tiny.parse::<f64>().unwrap(), 2.5e-12);
    }
}
