//! Eigenvalue tables from an LMFDB-style HTTP API, cached on disk.
//!
//! The response may already be in the local table format, or be an LMFDB
//! `mf_newforms` API response with integer `traces`; the latter is
//! normalized to `λ_p = a_p / p^{(k-1)/2}`. Only forms with rational
//! coefficients (dimension 1) can be converted.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_complex::Complex64;
use serde_json::Value;

use crate::arith::{is_prime, FactoredInteger};
use crate::error::{Error, Result};
use crate::scan::EigenvalueTable;

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";
pub const URL_ENV: &str = "TWISTBOUND_LMFDB_URL";
pub const CACHE_ENV: &str = "TWISTBOUND_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("network: {0}")]
    Network(String),
    #[error("not cached and offline: {0}")]
    Offline(PathBuf),
    #[error("io on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Where a table came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Cache,
    Network,
}

/// `$TWISTBOUND_CACHE`, else `$XDG_CACHE_HOME/twistbound`, else
/// `$HOME/.cache/twistbound`, else a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("twistbound");
    }
    if let Some(h) = std::env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("twistbound");
    }
    std::env::temp_dir().join("twistbound")
}

pub fn default_base_url() -> String {
    std::env::var(URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string())
}

/// Cache file for a label. Characters outside `[A-Za-z0-9.-]` are escaped
/// so distinct labels never collide.
pub fn cache_path(dir: &Path, label: &str) -> PathBuf {
    let mut name = String::new();
    for ch in label.chars() {
        if ch.is_ascii_alphanumeric() || ch == '.' || ch == '-' {
            name.push(ch);
        } else {
            name.push_str(&format!("_{:x}_", ch as u32));
        }
    }
    dir.join(format!("{name}.json"))
}

pub fn api_url(base: &str, label: &str) -> String {
    format!(
        "{}/api/mf_newforms/?label={}&_format=json",
        base.trim_end_matches('/'),
        label
    )
}

/// Return the cached table for `label`, fetching it first unless `offline`.
pub fn fetch(label: &str, base_url: &str, cache_dir: &Path, offline: bool) -> Result<(PathBuf, Source), FetchError> {
    let path = cache_path(cache_dir, label);
    if path.exists() {
        let text = fs::read_to_string(&path).map_err(|source| FetchError::Io { path: path.clone(), source })?;
        EigenvalueTable::from_json(&text)?;
        return Ok((path, Source::Cache));
    }
    if offline {
        return Err(FetchError::Offline(path));
    }
    let body = http_get(&api_url(base_url, label))?;
    let table = parse_response(label, &body)?;
    fs::create_dir_all(cache_dir).map_err(|source| FetchError::Io { path: cache_dir.to_path_buf(), source })?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, table.to_json()).map_err(|source| FetchError::Io { path: tmp.clone(), source })?;
    fs::rename(&tmp, &path).map_err(|source| FetchError::Io { path: path.clone(), source })?;
    Ok((path, Source::Network))
}

fn http_get(url: &str) -> Result<String, FetchError> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(30)))
        .build()
        .into();
    let mut resp = agent.get(url).call().map_err(|e| FetchError::Network(format!("{url}: {e}")))?;
    resp.body_mut()
        .read_to_string()
        .map_err(|e| FetchError::Network(format!("{url}: {e}")))
}

/// Parse either the local table format or an `mf_newforms` API response.
pub fn parse_response(label: &str, body: &str) -> Result<EigenvalueTable> {
    let value: Value = serde_json::from_str(body).map_err(|e| Error::InvalidTable(e.to_string()))?;
    if value.get("ap").is_some() {
        return EigenvalueTable::from_json(body);
    }
    let record = value
        .get("data")
        .and_then(Value::as_array)
        .and_then(|d| d.first())
        .ok_or_else(|| Error::InvalidTable(format!("no record for {label}")))?;
    from_newform_record(label, record)
}

fn from_newform_record(label: &str, r: &Value) -> Result<EigenvalueTable> {
    let field = |name: &str| {
        r.get(name)
            .ok_or_else(|| Error::InvalidTable(format!("record for {label} lacks {name:?}")))
    };
    let int = |name: &str| {
        field(name)?
            .as_u64()
            .ok_or_else(|| Error::InvalidTable(format!("{name:?} is not a nonnegative integer")))
    };
    let level = int("level")?;
    let weight = int("weight")?;
    let dim = int("dim")?;
    if dim != 1 {
        return Err(Error::InvalidTable(format!(
            "{label} has coefficient field of degree {dim}; only rational forms are supported"
        )));
    }
    let traces = field("traces")?
        .as_array()
        .ok_or_else(|| Error::InvalidTable("\"traces\" is not an array".into()))?;
    let mut ap = std::collections::BTreeMap::new();
    for (i, t) in traces.iter().enumerate() {
        let n = i as u64 + 1;
        if !is_prime(n) {
            continue;
        }
        let a = t
            .as_f64()
            .ok_or_else(|| Error::InvalidTable(format!("trace at {n} is not a number")))?;
        let norm = (n as f64).powf((weight as f64 - 1.0) / 2.0);
        ap.insert(n, Complex64::new(a / norm, 0.0));
    }
    let table = EigenvalueTable {
        label: label.to_string(),
        level: FactoredInteger::factor(level).map_err(|_| Error::InvalidTable("level must be >= 1".into()))?,
        rank: 2,
        weight_parity: None,
        ap,
    };
    table.validate()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_names() {
        let d = Path::new("/c");
        assert_eq!(cache_path(d, "11.2.a.a"), PathBuf::from("/c/11.2.a.a.json"));
        assert_ne!(cache_path(d, "a/b"), cache_path(d, "a_b"));
        assert_eq!(cache_path(d, "../x").parent(), Some(d));
    }

    #[test]
    fn newform_record() {
        let body = r#"{"data":[{"label":"11.2.a.a","level":11,"weight":2,"dim":1,"traces":[1,-2,-1,2,1,2,-2,0,-2,-2,1]}]}"#;
        let t = parse_response("11.2.a.a", body).unwrap();
        assert_eq!(t.level.value(), Some(11));
        assert_eq!(t.ap.keys().copied().collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
        assert!((t.ap[&2].re + 2.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((t.ap[&11].re - 1.0 / 11f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_records() {
        assert!(parse_response("x", r#"{"data":[]}"#).is_err());
        assert!(parse_response("x", r#"{"data":[{"level":11,"weight":2,"dim":2,"traces":[]}]}"#).is_err());
        assert!(parse_response("x", "not json").is_err());
    }

    #[test]
    fn offline_miss() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            fetch("11.2.a.a", "http://127.0.0.1:9", dir.path(), true),
            Err(FetchError::Offline(_))
        ));
    }
}
