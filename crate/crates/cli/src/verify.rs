//! `verify`: the library self-check suite as a pass/fail table.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use fplab_core::library::{self, LibraryEntry};
use fplab_core::rational;
use fplab_core::verify::{run, VerifyOptions, VerifyReport};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::io::{self, SCHEMA_VERIFY};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub only: Option<Vec<String>>,
    pub long: bool,
    /// Replacement expectations keyed by library name.
    pub overrides: Vec<ExpectationOverride>,
}

/// One entry of a `--library` file. Absent fields keep the built-in
/// expectation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationOverride {
    pub name: String,
    pub value: Option<String>,
    pub ne_x: Option<Vec<Vec<String>>>,
    pub ne_y: Option<Vec<Vec<String>>>,
    pub a1: Option<bool>,
    pub a2: Option<bool>,
    pub a3: Option<bool>,
}

pub fn load_overrides(path: &Path) -> Result<Vec<ExpectationOverride>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(crate::input_error)
}

fn points(p: &[Vec<String>]) -> Result<Vec<Vec<rational::Rational>>> {
    let mut v = p
        .iter()
        .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    v.sort();
    Ok(v)
}

pub fn entries(overrides: &[ExpectationOverride]) -> Result<Vec<LibraryEntry>> {
    let mut entries = library::entries();
    for o in overrides {
        let e = entries
            .iter_mut()
            .find(|e| e.name == o.name)
            .ok_or_else(|| crate::input_error(format!("`{}` is not a library game", o.name)))?;
        let ex = &mut e.expected;
        if let Some(v) = &o.value {
            ex.value = Some(rational::parse(v)?);
        }
        if let Some(p) = &o.ne_x {
            ex.ne_x = Some(points(p)?);
        }
        if let Some(p) = &o.ne_y {
            ex.ne_y = Some(points(p)?);
        }
        ex.a1 = o.a1.or(ex.a1);
        ex.a2 = o.a2.or(ex.a2);
        ex.a3 = o.a3.or(ex.a3);
    }
    Ok(entries)
}

pub fn report_json(rep: &VerifyReport) -> Value {
    json!({
        "schema": SCHEMA_VERIFY,
        "passed": rep.passed(),
        "total": rep.results.len(),
        "failed": rep.failures().len(),
        "results": rep.results,
    })
}

/// Prints the table; returns whether every check passed.
pub fn run_verify(cfg: &VerifyConfig, out: Option<PathBuf>) -> Result<bool> {
    let opts = VerifyOptions {
        only: cfg.only.clone(),
        long: cfg.long,
        entries: entries(&cfg.overrides)?,
    };
    let rep = run(&opts).map_err(|e| match e {
        fplab_core::Error::Config(_) => crate::input_error(e),
        other => other.into(),
    })?;
    let width = rep.results.iter().map(|r| r.group.len()).max().unwrap_or(0);
    for r in &rep.results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("{tag}  {:width$}  {}  [{}]", r.group, r.name, r.detail);
    }
    let failures = rep.failures();
    println!("{} checks, {} failed", rep.results.len(), failures.len());
    for f in &failures {
        eprintln!("failed: {} / {}: {}", f.group, f.name, f.detail);
    }
    if let Some(path) = out {
        io::write_with_manifest("verify", cfg, &[(path, io::json_bytes(&report_json(&rep))?)])?;
    }
    Ok(rep.passed())
}
