//! `batch`: games × rule pairs × replicates, one decimated trajectory per
//! cell plus a summary CSV.

use std::path::{Path, PathBuf};

use anyhow::Result;
use fplab_core::diagnostics::{Verdict, VerdictParams};
use fplab_core::fp::{fp_run, TieRule};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::game::GameRef;
use crate::io::{self, SCHEMA_BATCH};
use crate::simulate::{self, Format, SimulateConfig};

/// A rule entry: one rule for both players, or `[p1, p2]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleSpec {
    Both(String),
    Pair(String, String),
}

impl RuleSpec {
    fn pair(&self) -> (String, String) {
        match self {
            RuleSpec::Both(r) => (r.clone(), r.clone()),
            RuleSpec::Pair(a, b) => (a.clone(), b.clone()),
        }
    }
}

/// Batch spec file. Games are library names or matrix files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatchSpec {
    pub games: Vec<String>,
    pub rules: Vec<RuleSpec>,
    pub seeds: Vec<u64>,
    pub base_seed: u64,
    pub steps: u64,
    pub decimate: Option<u64>,
    pub k1: String,
    pub k2: String,
    pub x0: Option<Vec<String>>,
    pub y0: Option<Vec<String>>,
    pub window_fraction: f64,
    pub threshold: f64,
}

impl Default for BatchSpec {
    fn default() -> Self {
        let p = VerdictParams::default();
        Self {
            games: Vec::new(),
            rules: vec![RuleSpec::Both("uniform".into())],
            seeds: vec![0],
            base_seed: 0,
            steps: 100_000,
            decimate: Some(100),
            k1: "0".into(),
            k2: "0".into(),
            x0: None,
            y0: None,
            window_fraction: p.window_fraction,
            threshold: p.threshold,
        }
    }
}

/// The spec with every game resolved to exact entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BatchConfig {
    pub spec: BatchSpec,
    pub games: Vec<GameRef>,
    pub max_dim: usize,
}

impl BatchConfig {
    pub fn resolve(spec: BatchSpec, max_dim: usize) -> Result<Self> {
        for r in &spec.rules {
            let (a, b) = r.pair();
            a.parse::<TieRule>()?;
            b.parse::<TieRule>()?;
        }
        let games = spec.games.iter().map(|g| GameRef::resolve(g)).collect::<Result<_>>()?;
        Ok(Self { spec, games, max_dim })
    }
}

pub fn cell_seed(base: u64, cell_id: &str) -> u64 {
    let digest = Sha256::digest(cell_id.as_bytes());
    base ^ u64::from_le_bytes(digest[..8].try_into().expect("sha256 has 32 bytes"))
}

struct Cell {
    index: usize,
    id: String,
    game: GameRef,
    rules: (String, String),
    replicate: u64,
    seed: u64,
}

struct CellResult {
    row: Vec<String>,
}

const SUMMARY_HEADER: &[&str] = &[
    "cell",
    "game",
    "rule_p1",
    "rule_p2",
    "replicate",
    "seed",
    "steps",
    "status",
    "error",
    "tail_diameter_x",
    "min_dist_to_ne",
    "final_dist_to_ne",
    "verdict",
    "visits",
    "trajectory",
];

fn run_cell(cfg: &BatchConfig, cell: &Cell, dir: &Path) -> CellResult {
    let file = format!("cells/cell_{:04}.csv", cell.index);
    let mut row = vec![
        cell.id.clone(),
        cell.game.source.clone(),
        cell.rules.0.clone(),
        cell.rules.1.clone(),
        cell.replicate.to_string(),
        cell.seed.to_string(),
        cfg.spec.steps.to_string(),
    ];
    let sim = SimulateConfig {
        game: cell.game.clone(),
        steps: cfg.spec.steps,
        k1: cfg.spec.k1.clone(),
        k2: cfg.spec.k2.clone(),
        x0: cfg.spec.x0.clone(),
        y0: cfg.spec.y0.clone(),
        tiebreak_p1: cell.rules.0.clone(),
        tiebreak_p2: cell.rules.1.clone(),
        seed: cell.seed,
        decimate: cfg.spec.decimate,
        format: Format::Csv,
        window_fraction: cfg.spec.window_fraction,
        threshold: cfg.spec.threshold,
        max_dim: cfg.max_dim,
    };
    let outcome = (|| -> Result<Vec<String>> {
        let fp = sim.fp_config()?;
        let sol = simulate::solve(&fp, cfg.max_dim)?;
        let traj = fp_run(&fp)?;
        let (conv, _) = simulate::summary(&traj, &sol, sim.params())?;
        io::write_atomic(&dir.join(&file), &simulate::trajectory_csv(&traj)?)?;
        let verdict = match conv.verdict {
            Verdict::Oscillating => "oscillating",
            Verdict::Settling => "settling",
            Verdict::Inconclusive => "inconclusive",
        };
        Ok(vec![
            conv.tail_diameter_x.to_string(),
            conv.min_dist().map(|d| d.to_string()).unwrap_or_default(),
            conv.final_dist().map(|d| d.to_string()).unwrap_or_default(),
            verdict.into(),
            conv.visit_counts.visits.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";"),
            file.clone(),
        ])
    })();
    match outcome {
        Ok(stats) => {
            row.extend(["ok".into(), String::new()]);
            row.extend(stats);
        }
        Err(e) => {
            row.extend(["error".into(), format!("{e:#}")]);
            row.extend(std::iter::repeat_n(String::new(), 6));
        }
    }
    CellResult { row }
}

/// Runs every cell and writes `summary.csv` with its manifest into `dir`.
/// Returns the number of failed cells.
pub fn run_batch(cfg: &BatchConfig, dir: &Path) -> Result<usize> {
    let mut cells = Vec::new();
    for game in &cfg.games {
        for r in &cfg.spec.rules {
            let rules = r.pair();
            for &replicate in &cfg.spec.seeds {
                let id = format!("{}|{}|{}|{}", game.source, rules.0, rules.1, replicate);
                cells.push(Cell {
                    index: cells.len(),
                    seed: cell_seed(cfg.spec.base_seed, &id),
                    id,
                    game: game.clone(),
                    rules: rules.clone(),
                    replicate,
                });
            }
        }
    }
    let results: Vec<CellResult> = cells.par_iter().map(|c| run_cell(cfg, c, dir)).collect();
    let failed = results.iter().filter(|r| r.row[7] != "ok").count();
    let header: Vec<String> = SUMMARY_HEADER.iter().map(|s| s.to_string()).collect();
    let summary = io::csv_bytes(SCHEMA_BATCH, &header, results.into_iter().map(|r| r.row))?;
    let path: PathBuf = dir.join("summary.csv");
    io::write_with_manifest("batch", cfg, &[(path, summary)])?;
    Ok(failed)
}
