//! Gzip-compressed ball cache.
//!
//! The first line is a JSON header
//! `{"generators":["x0","x1"],"radius":n,"count":c,"engine":"..."}`; every
//! following line is `<diagram>\t<depth>`, sphere by sphere. File names
//! carry a hash of the engine version, so a new engine never reads stale
//! files.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ball, Ball, CayleyError, Limits};
use crate::forest::ForestDiagram;

pub const ENGINE_VERSION: &str = concat!("thompson-core ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheHeader {
    pub generators: Vec<String>,
    pub radius: usize,
    pub count: usize,
    pub engine: String,
}

fn engine_tag() -> String {
    let digest = Sha256::digest(ENGINE_VERSION.as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, radius: usize) -> PathBuf {
    dir.join(format!("ball-r{radius}-{}.txt.gz", engine_tag()))
}

pub fn write_ball(path: &Path, b: &Ball) -> Result<(), CayleyError> {
    let mut out = GzEncoder::new(BufWriter::new(File::create(path)?), Compression::default());
    let header = CacheHeader {
        generators: vec!["x0".into(), "x1".into()],
        radius: b.radius(),
        count: b.len(),
        engine: ENGINE_VERSION.into(),
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("header serializes"))?;
    for (v, d) in b.iter() {
        writeln!(out, "{v}\t{d}")?;
    }
    out.finish()?.flush()?;
    Ok(())
}

pub fn read_ball(path: &Path) -> Result<Ball, CayleyError> {
    let bad = |msg: String| CayleyError::Cache(format!("{}: {msg}", path.display()));
    let mut lines = BufReader::new(GzDecoder::new(File::open(path)?)).lines();
    let header: CacheHeader = match lines.next() {
        Some(line) => serde_json::from_str(&line?).map_err(|e| bad(format!("header: {e}")))?,
        None => return Err(bad("empty file".into())),
    };
    if header.engine != ENGINE_VERSION {
        return Err(bad(format!("written by {}", header.engine)));
    }
    let mut spheres: Vec<Vec<ForestDiagram>> = vec![Vec::new(); header.radius + 1];
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let line = line?;
        let (diagram, depth) =
            line.split_once('\t').ok_or_else(|| bad(format!("line {}: missing tab", i + 2)))?;
        let v: ForestDiagram = diagram.parse().map_err(|e| bad(format!("line {}: {e}", i + 2)))?;
        let d: usize = depth.parse().map_err(|_| bad(format!("line {}: bad depth", i + 2)))?;
        spheres
            .get_mut(d)
            .ok_or_else(|| bad(format!("line {}: depth {d} beyond radius", i + 2)))?
            .push(v);
        count += 1;
    }
    if count != header.count {
        return Err(bad(format!("header says {} elements, found {count}", header.count)));
    }
    Ok(Ball::from_spheres(spheres))
}

/// Read `B_radius` from `dir` if cached, otherwise enumerate and write it.
/// The flag is true when the cache was used.
pub fn load_or_build(dir: &Path, radius: usize, limits: &Limits) -> Result<(Ball, bool), CayleyError> {
    let path = cache_path(dir, radius);
    if path.exists() {
        return Ok((read_ball(&path)?, true));
    }
    let b = ball(radius, limits)?;
    std::fs::create_dir_all(dir)?;
    write_ball(&path, &b)?;
    Ok((b, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let (b, cached) = load_or_build(dir.path(), 3, &Limits::default()).unwrap();
        assert!(!cached);
        let (again, cached) = load_or_build(dir.path(), 3, &Limits::default()).unwrap();
        assert!(cached);
        assert_eq!(again.len(), b.len());
        assert_eq!(again.sphere_sizes(), b.sphere_sizes());
        for (v, d) in b.iter() {
            assert_eq!(again.depth(v), Some(d));
        }
    }

    #[test]
    fn rejects_truncated_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt.gz");
        let mut out = GzEncoder::new(File::create(&path).unwrap(), Compression::default());
        writeln!(
            out,
            r#"{{"generators":["x0","x1"],"radius":1,"count":5,"engine":"{ENGINE_VERSION}"}}"#
        )
        .unwrap();
        writeln!(out, "^. / ^.\t0").unwrap();
        out.finish().unwrap();
        assert!(matches!(read_ball(&path), Err(CayleyError::Cache(_))));
    }
}
