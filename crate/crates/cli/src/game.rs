//! Game references (library name or file path) and the size cap.

use std::path::Path;

use anyhow::{Context, Result};
use fplab_core::equilibrium::DEFAULT_MAX_DIM;
use fplab_core::library;
use fplab_core::matrix::PayoffMatrix;
use fplab_core::rational;
use serde::{Deserialize, Serialize};

/// A resolved game: where it came from plus its exact entries, so a
/// manifest replays without the original file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameRef {
    pub source: String,
    pub rows: Vec<Vec<String>>,
}

impl GameRef {
    pub fn resolve(spec: &str) -> Result<Self> {
        let matrix = load(spec)?;
        Ok(Self::from_matrix(spec, &matrix))
    }

    pub fn from_matrix(source: &str, a: &PayoffMatrix) -> Self {
        Self {
            source: source.into(),
            rows: a.rows().iter().map(|r| rational::format_vec(r)).collect(),
        }
    }

    pub fn matrix(&self) -> Result<PayoffMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PayoffMatrix::new(rows)?)
    }
}

/// Library name first, then a JSON matrix file.
pub fn load(spec: &str) -> Result<PayoffMatrix> {
    if let Some(a) = library::matrix(spec) {
        return Ok(a);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(crate::input_error(format!(
            "`{spec}` is neither a library game ({}) nor a file",
            library::names().join(", ")
        )));
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    Ok(PayoffMatrix::from_json_str(&text)?)
}

/// `n + m` cap from `FPLAB_MAX_DIM`, default 16.
pub fn max_dim() -> Result<usize> {
    match std::env::var("FPLAB_MAX_DIM") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| crate::input_error(format!("FPLAB_MAX_DIM must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}
