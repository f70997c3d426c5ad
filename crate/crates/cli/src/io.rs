//! Output plumbing: schema tags, manifests and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_ANALYSIS: &str = "fplab.analysis.v1";
pub const SCHEMA_TRAJECTORY: &str = "fplab.trajectory.v1";
pub const SCHEMA_SIMULATE: &str = "fplab.simulate-summary.v1";
pub const SCHEMA_BATCH: &str = "fplab.batch-summary.v1";
pub const SCHEMA_VERIFY: &str = "fplab.verify.v1";
pub const SCHEMA_CONSTRUCT: &str = "fplab.construct.v1";
pub const SCHEMA_ENVELOPE: &str = "fplab.envelope.v1";
pub const SCHEMA_MANIFEST: &str = "fplab.manifest.v1";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Written next to every output file. `config` is the fully resolved
/// configuration of the subcommand; `replay` runs it again.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    pub subcommand: String,
    pub config: Value,
    pub tool_version: String,
    pub timestamp: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: &impl Serialize, outputs: &[&Path]) -> Result<Self> {
        Ok(Self {
            schema: SCHEMA_MANIFEST.into(),
            subcommand: subcommand.into(),
            config: serde_json::to_value(config)?,
            tool_version: VERSION.into(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        let m: RunManifest = serde_json::from_str(&text).map_err(crate::input_error)?;
        if m.schema != SCHEMA_MANIFEST {
            return Err(crate::input_error(format!("unsupported manifest schema `{}`", m.schema)));
        }
        Ok(m)
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// Replaces `path` with `bytes` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

/// Writes `outputs` and then the manifest beside the first one.
pub fn write_with_manifest(subcommand: &str, config: &impl Serialize, outputs: &[(PathBuf, Vec<u8>)]) -> Result<()> {
    for (path, bytes) in outputs {
        write_atomic(path, bytes)?;
    }
    if let Some((first, _)) = outputs.first() {
        let paths: Vec<&Path> = outputs.iter().map(|(p, _)| p.as_path()).collect();
        write_json(&manifest_path(first), &RunManifest::new(subcommand, config, &paths)?)?;
    }
    Ok(())
}

pub fn json_bytes(value: &impl Serialize) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// CSV text preceded by a `# schema:` comment line.
pub fn csv_bytes(schema: &str, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut buf = format!("# schema: {schema}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(&r)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_sits_beside_output() {
        assert_eq!(manifest_path(Path::new("out/t.csv")), PathBuf::from("out/t.csv.manifest.json"));
        assert_eq!(manifest_path(Path::new("t.json")), PathBuf::from("t.json.manifest.json"));
    }

    #[test]
    fn csv_has_schema_line() {
        let b = csv_bytes("fplab.x.v1", &["a".into(), "b".into()], vec![vec!["1".into(), "x,y".into()]]).unwrap();
        assert_eq!(String::from_utf8(b).unwrap(), "# schema: fplab.x.v1\na,b\n1,\"x,y\"\n");
    }
}
