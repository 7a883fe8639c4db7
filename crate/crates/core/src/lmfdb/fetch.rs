//! Optional network client for pulling isogeny-class lists from an
//! LMFDB-style HTTP API, with an on-disk cache. Everything else in the
//! crate works offline; this module exists so datasets can be refreshed
//! without leaving the tool.
//!
//! Responses are paged JSON objects: {"data": [{"label": ..,
//! "curve_count": ..}, ..], "next": url-or-null}. Records are cached as
//! one file per (genus, q) pair; a cache hit produces the identical
//! record list with no network traffic.

use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::lmfdb::dataset::CandidateRecord;
use crate::lmfdb::label::IsogenyClassLabel;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Bump when the query or normalization changes; old cache files are
/// then ignored rather than misread.
const CACHE_REVISION: u32 = 1;

/// Where and how to fetch.
#[derive(Debug, Clone)]
pub struct FetchConfig {
    /// Endpoint serving paged isogeny-class JSON.
    pub base_url: String,
    /// Cache directory; None disables caching.
    pub cache_dir: Option<PathBuf>,
    /// Minimum delay between consecutive requests.
    pub min_delay: Duration,
    /// Total attempts per page before giving up.
    pub max_retries: u32,
}

impl Default for FetchConfig {
    fn default() -> Self {
        FetchConfig {
            base_url: "https://api.lmfdb.org/api/av_fq_isog".to_string(),
            cache_dir: None,
            min_delay: Duration::from_millis(500),
            max_retries: 3,
        }
    }
}

impl FetchConfig {
    /// Default configuration with `COVERCOUNT_LMFDB_URL` and
    /// `COVERCOUNT_CACHE_DIR` environment overrides applied.
    pub fn from_env() -> Self {
        let mut config = FetchConfig::default();
        if let Ok(url) = std::env::var("COVERCOUNT_LMFDB_URL") {
            if !url.is_empty() {
                config.base_url = url;
            }
        }
        if let Ok(dir) = std::env::var("COVERCOUNT_CACHE_DIR") {
            if !dir.is_empty() {
                config.cache_dir = Some(PathBuf::from(dir));
            }
        }
        config
    }
}

/// Pluggable HTTP GET. Implementations return the response body or a
/// human-readable failure reason; the client owns retry accounting.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> std::result::Result<String, String>;
}

/// Real HTTP transport.
pub struct HttpTransport;

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> std::result::Result<String, String> {
        let mut response = ureq::get(url).call().map_err(|e| e.to_string())?;
        response
            .body_mut()
            .read_to_string()
            .map_err(|e| e.to_string())
    }
}

/// One row as stored in the cache and received from the API.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawRow {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    curve_count: Option<u64>,
}

/// Fetches every isogeny class of the given genus over F_q, serializing
/// requests and consulting the cache first.
pub struct FetchClient {
    config: FetchConfig,
    transport: Box<dyn Transport>,
    last_request: Mutex<Option<Instant>>,
}

impl FetchClient {
    pub fn new(config: FetchConfig) -> Self {
        FetchClient::with_transport(config, Box::new(HttpTransport))
    }

    pub fn with_transport(config: FetchConfig, transport: Box<dyn Transport>) -> Self {
        FetchClient {
            config,
            transport,
            last_request: Mutex::new(None),
        }
    }

    /// Returns all classes of genus `genus` over F_q, from cache when a
    /// valid cache file exists, otherwise from the network (and then
    /// caches the normalized rows).
    pub fn fetch_candidates(&self, q: u64, genus: u32) -> Result<Vec<CandidateRecord>> {
        let field = FieldSize::new(q)?;
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        // Deterministic provenance tag, identical for cache and network
        // paths so cached and fresh record lists compare equal.
        let source = format!("{}#genus={}&q={}", self.config.base_url, genus, q);
        if let Some(rows) = self.cache_read(q, genus) {
            if let Ok(records) = materialize(&rows, q, genus, field, &source) {
                return Ok(records);
            }
            // Invalid cached content is a miss, not an error.
        }
        let rows = self.fetch_pages(q, genus)?;
        let records = materialize(&rows, q, genus, field, &source)?;
        self.cache_write(q, genus, &rows)?;
        Ok(records)
    }

    fn fetch_pages(&self, q: u64, genus: u32) -> Result<Vec<RawRow>> {
        let mut url = format!("{}?genus={}&q={}", self.config.base_url, genus, q);
        let mut rows = Vec::new();
        loop {
            let body = self.get_with_retry(&url)?;
            let page: Value = serde_json::from_str(&body)
                .map_err(|e| Error::ResponseShape(format!("response is not JSON: {e}")))?;
            let object = page
                .as_object()
                .ok_or_else(|| Error::ResponseShape("response is not a JSON object".into()))?;
            let data = object
                .get("data")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::ResponseShape("missing \"data\" array".into()))?;
            for item in data {
                rows.push(parse_item(item)?);
            }
            match object.get("next") {
                None | Some(Value::Null) => break,
                Some(Value::String(next)) => url = resolve_next(&self.config.base_url, next)?,
                Some(_) => {
                    return Err(Error::ResponseShape(
                        "\"next\" must be a string or null".into(),
                    ))
                }
            }
        }
        Ok(rows)
    }

    fn get_with_retry(&self, url: &str) -> Result<String> {
        let attempts = self.config.max_retries.max(1);
        let mut reason = String::new();
        for attempt in 1..=attempts {
            if attempt > 1 {
                // Linear backoff on top of the politeness delay.
                std::thread::sleep(self.config.min_delay * (attempt - 1));
            }
            self.wait_politely();
            match self.transport.get(url) {
                Ok(body) => return Ok(body),
                Err(e) => reason = e,
            }
        }
        Err(Error::Fetch { attempts, reason })
    }

    /// Enforces the minimum inter-request delay across this client.
    fn wait_politely(&self) {
        let mut last = self.last_request.lock().unwrap();
        if let Some(previous) = *last {
            let elapsed = previous.elapsed();
            if elapsed < self.config.min_delay {
                std::thread::sleep(self.config.min_delay - elapsed);
            }
        }
        *last = Some(Instant::now());
    }

    fn cache_path(&self, q: u64, genus: u32) -> Option<PathBuf> {
        self.config
            .cache_dir
            .as_ref()
            .map(|dir| dir.join(format!("av_g{genus}_q{q}_rev{CACHE_REVISION}.json")))
    }

    fn cache_read(&self, q: u64, genus: u32) -> Option<Vec<RawRow>> {
        let path = self.cache_path(q, genus)?;
        let text = std::fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes the cache file atomically; called only with rows that
    /// already normalized successfully.
    fn cache_write(&self, q: u64, genus: u32, rows: &[RawRow]) -> Result<()> {
        let Some(path) = self.cache_path(q, genus) else {
            return Ok(());
        };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(rows)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// One-shot convenience wrapper over a fresh HTTP client.
pub fn fetch_candidates(q: u64, genus: u32, config: &FetchConfig) -> Result<Vec<CandidateRecord>> {
    FetchClient::new(config.clone()).fetch_candidates(q, genus)
}

fn parse_item(item: &Value) -> Result<RawRow> {
    let object = item
        .as_object()
        .ok_or_else(|| Error::ResponseShape("data item is not a JSON object".into()))?;
    let label = object
        .get("label")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::ResponseShape("data item lacks a string \"label\"".into()))?;
    let curve_count = match object.get("curve_count") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| {
            Error::ResponseShape("\"curve_count\" must be a nonnegative integer".into())
        })?),
    };
    Ok(RawRow {
        label: label.to_string(),
        curve_count,
    })
}

/// Resolves a "next" link: absolute URLs pass through, absolute paths
/// are joined to the base URL's origin.
fn resolve_next(base_url: &str, next: &str) -> Result<String> {
    if next.contains("://") {
        return Ok(next.to_string());
    }
    if let Some(rest) = next.strip_prefix('/') {
        let scheme_end = base_url
            .find("://")
            .ok_or_else(|| Error::ResponseShape(format!("cannot resolve next link {next}")))?;
        let origin_end = base_url[scheme_end + 3..]
            .find('/')
            .map(|i| scheme_end + 3 + i)
            .unwrap_or(base_url.len());
        return Ok(format!("{}/{}", &base_url[..origin_end], rest));
    }
    Err(Error::ResponseShape(format!(
        "cannot resolve next link {next}"
    )))
}

/// Validates raw rows against the requested (genus, q) and decodes each
/// label into an L-polynomial.
fn materialize(
    rows: &[RawRow],
    q: u64,
    genus: u32,
    field: FieldSize,
    source: &str,
) -> Result<Vec<CandidateRecord>> {
    rows.iter()
        .map(|row| {
            let label = IsogenyClassLabel::parse(&row.label)?;
            if label.to_string() != row.label {
                return Err(Error::NonCanonicalLabel {
                    label: row.label.clone(),
                    canonical: label.to_string(),
                });
            }
            if label.genus() != genus || label.field().q() != field.q() {
                return Err(Error::ResponseShape(format!(
                    "label {} does not match requested genus {} over F_{}",
                    row.label, genus, q
                )));
            }
            let lpoly = label.lpolynomial()?;
            Ok(CandidateRecord {
                label,
                lpoly,
                curve_evidence: row.curve_count,
                source: source.to_string(),
            })
        })
        .collect()
}
