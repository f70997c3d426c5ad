//! `analyze` and `construct`: exact equilibrium reports as JSON.

use std::path::PathBuf;

use anyhow::Result;
use fplab_core::construct::construct_capped;
use fplab_core::equilibrium::{analyze_capped, GameAnalysis};
use fplab_core::matrix::ActionSet;
use fplab_core::polytope::Polytope;
use fplab_core::rational::{self, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::game::{max_dim, GameRef};
use crate::io::{self, SCHEMA_ANALYSIS, SCHEMA_CONSTRUCT};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    pub game: GameRef,
    pub max_dim: usize,
}

fn q(r: &Rational) -> String {
    rational::format(r)
}

fn vertices(p: &Polytope) -> Vec<Vec<String>> {
    p.sorted_vertices().iter().map(|v| rational::format_vec(v)).collect()
}

fn label(s: &ActionSet) -> Vec<usize> {
    s.to_one_based()
}

/// The analysis as JSON. Face labels and A3 / structure indices refer to
/// the normalized column order; `normalization.columns` maps them back.
pub fn analysis_json(an: &GameAnalysis) -> Value {
    let normalization = an.normalization.as_ref().map(|n| {
        json!({
            "matrix": n.matrix.to_json()["rows"],
            "columns": n.permutation.iter().map(|c| c + 1).collect::<Vec<_>>(),
            "removed_duplicates": n.removed_duplicates.iter().map(|c| c + 1).collect::<Vec<_>>(),
            "other_constant_columns": n.other_constant_columns.iter().map(|c| c + 1).collect::<Vec<_>>(),
            "dominated_rows": n.dominance.rows.iter().map(|d| json!({"action": d.action + 1, "by_pure": d.by_pure.map(|b| b + 1)})).collect::<Vec<_>>(),
            "dominated_columns": n.dominance.columns.iter().map(|d| json!({"action": d.action + 1, "by_pure": d.by_pure.map(|b| b + 1)})).collect::<Vec<_>>(),
        })
    });
    let faces: Vec<Value> = an
        .faces
        .iter()
        .map(|f| {
            json!({
                "I": label(&f.label),
                "interior": f.is_interior(),
                "vertices": vertices(&f.region),
            })
        })
        .collect();
    let a3 = an.a3.as_ref().map(|r| {
        let faces: Vec<Value> = r
            .faces
            .iter()
            .map(|f| {
                let mut o = json!({
                    "I": label(&f.label),
                    "hull": f.hull.iter().map(|c| c + 1).collect::<Vec<_>>(),
                    "admissible_l": f.admissible.iter().map(|l| l + 1).collect::<Vec<_>>(),
                    "passes": f.passes(),
                });
                match f.witness {
                    Some(l) => o["witness_l"] = json!(l + 1),
                    None => {
                        o["violating_w"] = f
                            .weak_max_points
                            .iter()
                            .map(|(l, w)| json!({"l": l + 1, "w": rational::format_vec(w)}))
                            .collect::<Vec<_>>()
                            .into()
                    }
                }
                o
            })
            .collect();
        json!({
            "holds": r.holds,
            "holds_for_some_face": r.holds_for_some_face,
            "hull_matches_reduced_label": r.hull_matches_reduced_label,
            "faces": faces,
        })
    });
    let structure = an.structure.as_ref().map(|s| {
        let checks: serde_json::Map<String, Value> = s
            .checks
            .iter()
            .map(|c| (c.name.to_string(), json!({"passed": c.passed, "detail": c.detail})))
            .collect();
        json!({
            "all_passed": s.all_passed(),
            "checks": checks,
            "reduced_ne_zero_coordinate": s.reduced_ne_zero_coordinate.iter().map(|(i, z)| json!({"I": label(i), "coordinate": z.map(|c| c + 1)})).collect::<Vec<_>>(),
        })
    });
    json!({
        "schema": SCHEMA_ANALYSIS,
        "matrix": an.matrix.to_json()["rows"],
        "value": q(an.value()),
        "ne_x_vertices": vertices(an.ne_x()),
        "ne_y_vertices": vertices(an.ne_y()),
        "a1": an.a1,
        "a2": an.a2,
        "a3": a3,
        "normalization": normalization,
        "reduced_value": an.reduced_value.as_ref().map(q),
        "faces": faces,
        "structure": structure,
    })
}

pub fn run_analyze(cfg: &AnalyzeConfig, out: Option<PathBuf>) -> Result<()> {
    let a = cfg.game.matrix()?;
    let an = analyze_capped(&a, cfg.max_dim)?;
    let mut report = analysis_json(&an);
    report["game"] = json!(cfg.game.source);
    emit("analyze", cfg, &report, out)
}

pub fn analyze_config(game: &str) -> Result<AnalyzeConfig> {
    Ok(AnalyzeConfig {
        game: GameRef::resolve(game)?,
        max_dim: max_dim()?,
    })
}

/// Prints to stdout, or writes the file plus its manifest.
pub fn emit(subcommand: &str, cfg: &impl Serialize, report: &Value, out: Option<PathBuf>) -> Result<()> {
    let bytes = io::json_bytes(report)?;
    match out {
        Some(path) => io::write_with_manifest(subcommand, cfg, &[(path, bytes)]),
        None => {
            print!("{}", String::from_utf8(bytes)?);
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructConfig {
    pub base: GameRef,
    pub v_prime: String,
    pub max_dim: usize,
}

pub fn run_construct(cfg: &ConstructConfig, out: Option<PathBuf>) -> Result<()> {
    let a = cfg.base.matrix()?;
    let v = rational::parse(&cfg.v_prime)?;
    let c = construct_capped(&a, &v, cfg.max_dim)?;
    let an = analyze_capped(&c.matrix, cfg.max_dim)?;
    let report = json!({
        "schema": SCHEMA_CONSTRUCT,
        "base": cfg.base.source,
        "v_prime": q(&v),
        "matrix": c.matrix.to_json()["rows"],
        "base_value": q(&c.base_value),
        "value": q(&c.value),
        "v_prime_below_value": c.v_prime_below_value,
        "value_equals_v_prime": c.value_equals_v_prime,
        "a1": c.a1,
        "appended_dominated": c.appended_dominated,
        "analysis": analysis_json(&an),
    });
    emit("construct", cfg, &report, out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnvelopeConfig {
    pub game: GameRef,
    pub grid: usize,
}

/// Samples go to CSV. The exact value, maximizer and breakpoints go to
/// stdout when `out` is set, otherwise to stderr.
pub fn run_envelope(cfg: &EnvelopeConfig, out: Option<PathBuf>) -> Result<()> {
    let a = cfg.game.matrix()?;
    let env = fplab_core::construct::lower_envelope(&a, cfg.grid)?;
    let summary = json!({
        "schema": io::SCHEMA_ENVELOPE,
        "game": cfg.game.source,
        "value": q(&env.value),
        "argmax": [q(&env.argmax.0), q(&env.argmax.1)],
        "breakpoints": rational::format_vec(&env.breakpoints),
    });
    let mut header = vec!["p".to_string()];
    header.extend((1..=a.m()).map(|j| format!("line_{j}")));
    header.push("envelope".into());
    let rows = env.samples.iter().map(|s| {
        let mut r = vec![s.p.to_string()];
        r.extend(s.lines.iter().map(|v| v.to_string()));
        r.push(s.envelope.to_string());
        r
    });
    let csv = io::csv_bytes(io::SCHEMA_ENVELOPE, &header, rows)?;
    match out {
        Some(path) => {
            io::write_with_manifest("envelope", cfg, &[(path, csv)])?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        None => {
            print!("{}", String::from_utf8(csv)?);
            eprintln!("{}", serde_json::to_string(&summary)?);
        }
    }
    Ok(())
}
