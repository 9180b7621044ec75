//! On-disk storage of built graphs, one JSON file per `(q, p, version)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeSet, VertexSet};
use crate::Error;

/// Bumped whenever the serialized graph layout or its canonical order changes.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+graph1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub version: String,
    pub q: u64,
    pub p: u64,
    pub vertices: VertexSet,
    pub edges: EdgeSet,
}

#[derive(Debug)]
pub enum CacheLookup {
    Hit(Box<CacheRecord>),
    Miss,
    /// Unreadable or mismatched file; treated as a miss.
    Corrupt(String),
}

pub fn cache_path(dir: &Path, q: u64, p: u64, version: &str) -> PathBuf {
    dir.join(format!("graph-q{q}-p{p}-v{version}.json"))
}

/// Writes through a temporary file so readers never see a partial record.
pub fn cache_store(dir: &Path, record: &CacheRecord) -> Result<PathBuf, Error> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, record.q, record.p, &record.version);
    let bytes = serde_json::to_vec(record).map_err(|e| Error::Cache(e.to_string()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn cache_load(dir: &Path, q: u64, p: u64) -> CacheLookup {
    cache_load_version(dir, q, p, CACHE_VERSION)
}

pub fn cache_load_version(dir: &Path, q: u64, p: u64, version: &str) -> CacheLookup {
    let path = cache_path(dir, q, p, version);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return CacheLookup::Miss,
        Err(e) => return CacheLookup::Corrupt(format!("{}: {e}", path.display())),
    };
    match serde_json::from_slice::<CacheRecord>(&bytes) {
        Ok(mut rec) if rec.version == version && rec.q == q && rec.p == p && rec.vertices.q() == q => {
            let n = rec.vertices.len();
            rec.edges.rebuild_index(n);
            CacheLookup::Hit(Box::new(rec))
        }
        Ok(_) => CacheLookup::Corrupt(format!("{}: record does not match its key", path.display())),
        Err(e) => CacheLookup::Corrupt(format!("{}: {e}", path.display())),
    }
}

/// Loads the graph for `(q, p)` from `dir`, building and storing it on a miss.
/// Returns the graph and any warning about a discarded file.
pub fn load_or_build(dir: Option<&Path>, q: u64, p: u64) -> Result<(VertexSet, EdgeSet, Option<String>), Error> {
    let mut warning = None;
    if let Some(dir) = dir {
        match cache_load(dir, q, p) {
            CacheLookup::Hit(rec) => return Ok((rec.vertices, rec.edges, None)),
            CacheLookup::Miss => {}
            CacheLookup::Corrupt(msg) => warning = Some(format!("ignoring cache file {msg}")),
        }
    }
    let (vertices, edges) = crate::criterion::build_graph(p, q)?;
    if let Some(dir) = dir {
        let rec = CacheRecord { version: CACHE_VERSION.to_string(), q, p, vertices, edges };
        cache_store(dir, &rec)?;
        return Ok((rec.vertices, rec.edges, warning));
    }
    Ok((vertices, edges, warning))
}
