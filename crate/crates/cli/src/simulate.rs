//! `simulate`: one fictitious-play run exported as CSV or JSON.

use std::path::{Path, PathBuf};

use anyhow::Result;
use fplab_core::diagnostics::{check_lemmas, oscillation_verdict, ConvergenceReport, VerdictParams};
use fplab_core::equilibrium::{solve_game_capped, GameSolution};
use fplab_core::fp::{fp_run, FpConfig, TieRule, Trajectory};
use fplab_core::matrix::{is_constant_column, MixedStrategy};
use fplab_core::rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::game::GameRef;
use crate::io::{self, SCHEMA_SIMULATE, SCHEMA_TRAJECTORY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn for_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimulateConfig {
    pub game: GameRef,
    pub steps: u64,
    pub k1: String,
    pub k2: String,
    pub x0: Option<Vec<String>>,
    pub y0: Option<Vec<String>>,
    pub tiebreak_p1: String,
    pub tiebreak_p2: String,
    pub seed: u64,
    pub decimate: Option<u64>,
    pub format: Format,
    pub window_fraction: f64,
    pub threshold: f64,
    pub max_dim: usize,
}

impl SimulateConfig {
    pub fn fp_config(&self) -> Result<FpConfig> {
        let a = self.game.matrix()?;
        let p1: TieRule = self.tiebreak_p1.parse()?;
        let p2: TieRule = self.tiebreak_p2.parse()?;
        let mut cfg = FpConfig::new(a, self.steps).rules(p1, p2).seed(self.seed);
        cfg.k1 = rational::parse(&self.k1)?;
        cfg.k2 = rational::parse(&self.k2)?;
        cfg.x0 = self.x0.as_ref().map(|v| strategy(v)).transpose()?;
        cfg.y0 = self.y0.as_ref().map(|v| strategy(v)).transpose()?;
        cfg.decimate = self.decimate;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn params(&self) -> VerdictParams {
        VerdictParams {
            window_fraction: self.window_fraction,
            threshold: self.threshold,
        }
    }
}

fn strategy(v: &[String]) -> Result<MixedStrategy> {
    let w = v.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(MixedStrategy::new(w)?)
}

/// Splits `"3/4,1/8,1/8"` into entries, validating each.
pub fn parse_list(s: &str) -> Result<Vec<String>> {
    let v = rational::parse_list(s)?;
    Ok(rational::format_vec(&v))
}

fn ones(set: &fplab_core::matrix::ActionSet) -> String {
    set.to_one_based().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";")
}

fn action(a: Option<usize>) -> String {
    a.map(|i| (i + 1).to_string()).unwrap_or_default()
}

fn exact(v: Option<Vec<rational::Rational>>, len: usize) -> Vec<String> {
    v.map(|v| rational::format_vec(&v)).unwrap_or_else(|| vec![String::new(); len])
}

fn floats(v: Option<Vec<f64>>, len: usize) -> Vec<String> {
    v.map(|v| v.iter().map(|x| x.to_string()).collect())
        .unwrap_or_else(|| vec![String::new(); len])
}

pub fn trajectory_csv(traj: &Trajectory) -> Result<Vec<u8>> {
    let (n, m) = (traj.n(), traj.m());
    let mut header: Vec<String> = vec!["k".into(), "p1_action".into(), "p2_action".into()];
    header.extend((1..=n).map(|i| format!("x_{i}")));
    header.extend((1..=m).map(|j| format!("y_{j}")));
    header.extend(["in_X1".into(), "in_intr_X1".into(), "br_label_I".into()]);
    header.extend((1..=n).map(|i| format!("x_{i}_f")));
    header.extend((1..=m).map(|j| format!("y_{j}_f")));
    let rows = (0..traj.len()).map(|i| {
        let mut r = vec![traj.k(i).to_string(), action(traj.p1_action(i)), action(traj.p2_action(i))];
        r.extend(exact(traj.x_hat(i), n));
        r.extend(exact(traj.y_hat(i), m));
        r.push(traj.in_x1(i).to_string());
        r.push(traj.in_intr_x1(i).to_string());
        r.push(ones(&traj.br2(i)));
        r.extend(floats(traj.x_hat_f64(i), n));
        r.extend(floats(traj.y_hat_f64(i), m));
        r
    });
    io::csv_bytes(SCHEMA_TRAJECTORY, &header, rows)
}

pub fn trajectory_json(traj: &Trajectory) -> Result<Vec<u8>> {
    let meta = &traj.meta;
    let states: Vec<Value> = (0..traj.len())
        .map(|i| {
            json!({
                "k": traj.k(i),
                "p1_action": traj.p1_action(i).map(|a| a + 1),
                "p2_action": traj.p2_action(i).map(|a| a + 1),
                "x": traj.x_hat(i).map(|v| rational::format_vec(&v)),
                "y": traj.y_hat(i).map(|v| rational::format_vec(&v)),
                "in_X1": traj.in_x1(i),
                "in_intr_X1": traj.in_intr_x1(i),
                "br_label_I": traj.br2(i).to_one_based(),
                "br_p1": traj.br1(i).to_one_based(),
                "x_f": traj.x_hat_f64(i),
                "y_f": traj.y_hat_f64(i),
            })
        })
        .collect();
    io::json_bytes(&json!({
        "schema": SCHEMA_TRAJECTORY,
        "matrix": meta.matrix.to_json()["rows"],
        "rule_p1": meta.rule_p1,
        "rule_p2": meta.rule_p2,
        "k1": rational::format(&meta.k1),
        "k2": rational::format(&meta.k2),
        "seed": meta.seed,
        "steps": meta.steps,
        "decimate": meta.decimate,
        "states": states,
    }))
}

pub fn solve(cfg: &FpConfig, max_dim: usize) -> Result<GameSolution> {
    Ok(solve_game_capped(&cfg.matrix, max_dim)?)
}

/// Convergence report plus lemma checks (when column 1 is constant).
pub fn summary(traj: &Trajectory, sol: &GameSolution, params: VerdictParams) -> Result<(ConvergenceReport, Value)> {
    let conv = oscillation_verdict(traj, params, Some(sol));
    let lemmas = if is_constant_column(&traj.meta.matrix.column(0)).is_some() {
        serde_json::to_value(check_lemmas(traj)?)?
    } else {
        Value::Null
    };
    Ok((conv, lemmas))
}

pub fn run_simulate(cfg: &SimulateConfig, out: Option<PathBuf>) -> Result<()> {
    let fp = cfg.fp_config()?;
    let sol = solve(&fp, cfg.max_dim)?;
    let traj = fp_run(&fp)?;
    let (conv, lemmas) = summary(&traj, &sol, cfg.params())?;
    let last = traj.len() - 1;
    let report = json!({
        "schema": SCHEMA_SIMULATE,
        "game": cfg.game.source,
        "steps": cfg.steps,
        "stored_states": traj.len(),
        "value": rational::format(&sol.value),
        "final": {
            "k": traj.k(last),
            "x": traj.x_hat(last).map(|v| rational::format_vec(&v)),
            "y": traj.y_hat(last).map(|v| rational::format_vec(&v)),
        },
        "final_dist_to_ne": conv.final_dist(),
        "min_dist_to_ne": conv.min_dist(),
        "convergence": conv,
        "lemmas": lemmas,
    });
    if let Some(path) = out {
        let bytes = match cfg.format {
            Format::Csv => trajectory_csv(&traj)?,
            Format::Json => trajectory_json(&traj)?,
        };
        io::write_with_manifest("simulate", cfg, &[(path, bytes)])?;
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
