//! Self-check suite over the built-in library: static facts, parity, the
//! one-bit rule, lemma invariants on trajectories, non-convergence and the
//! reduced-game experiments.
//!
//! Trajectory-based groups are seeded statistical checks; their thresholds
//! are printed with every result.

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::lower_envelope;
use crate::diagnostics::{
    band_crossings, check_lemmas, dist_at, oscillation_verdict, reduced_subsequence_gap, verify_parity,
    VerdictParams,
};
use crate::equilibrium::{analyze, GameAnalysis};
use crate::error::{Error, Result};
use crate::fp::{fp_run, FpConfig, TieRule, Trajectory};
use crate::library::LibraryEntry;
use crate::matrix::{submatrix, ActionSet, MixedStrategy, PayoffMatrix};
use crate::rational::{self, frac, int};

pub const GROUPS: &[&str] = &[
    "library",
    "assumptions",
    "structure",
    "parity",
    "onebit",
    "lemmas",
    "nonconvergence",
    "discussion",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub only: Option<Vec<String>>,
    pub long: bool,
    pub entries: Vec<LibraryEntry>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            only: None,
            long: false,
            entries: crate::library::entries(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub group: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.results.iter().filter(|r| !r.passed).collect()
    }
}

fn check(group: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        group,
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    let selected: Vec<&'static str> = match &opts.only {
        None => GROUPS.to_vec(),
        Some(list) => {
            let mut out = Vec::new();
            for g in list {
                let found = GROUPS
                    .iter()
                    .find(|&&x| x == g.as_str())
                    .ok_or_else(|| Error::Config(format!("unknown verify group `{g}`; known: {}", GROUPS.join(", "))))?;
                out.push(*found);
            }
            out
        }
    };
    let analyses: Vec<(LibraryEntry, GameAnalysis)> = opts
        .entries
        .iter()
        .map(|e| analyze(&e.matrix).map(|a| (e.clone(), a)))
        .collect::<Result<_>>()?;
    let mut results = Vec::new();
    for g in selected {
        match g {
            "library" => results.extend(library_group(&analyses)),
            "assumptions" => results.extend(assumptions_group(&analyses)),
            "structure" => results.extend(structure_group(&analyses)),
            "parity" => results.extend(parity_group()?),
            "onebit" => results.extend(onebit_group(opts.long)?),
            "lemmas" => results.extend(lemma_group(&analyses, opts.long)?),
            "nonconvergence" => results.extend(nonconvergence_group(&analyses, opts.long)?),
            "discussion" => results.extend(discussion_group(&analyses)?),
            _ => unreachable!(),
        }
    }
    Ok(VerifyReport { results })
}

fn fmt_points(p: &[Vec<rational::Rational>]) -> String {
    p.iter()
        .map(|v| format!("({})", rational::format_vec(v).join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn library_group(analyses: &[(LibraryEntry, GameAnalysis)]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (e, an) in analyses {
        let ex = &e.expected;
        if let Some(v) = &ex.value {
            out.push(check(
                "library",
                format!("{}: value", e.name),
                an.value() == v,
                format!("expected {}, got {}", rational::format(v), rational::format(an.value())),
            ));
        }
        if let Some(x) = &ex.ne_x {
            let got = an.ne_x().sorted_vertices();
            out.push(check(
                "library",
                format!("{}: NE_x vertices", e.name),
                &got == x,
                format!("expected {}, got {}", fmt_points(x), fmt_points(&got)),
            ));
        }
        if let Some(y) = &ex.ne_y {
            let got = an.ne_y().sorted_vertices();
            out.push(check(
                "library",
                format!("{}: NE_y vertices", e.name),
                &got == y,
                format!("expected {}, got {}", fmt_points(y), fmt_points(&got)),
            ));
        }
        for (label, want, got) in [("A1", ex.a1, Some(an.a1)), ("A2", ex.a2, Some(an.a2)), ("A3", ex.a3, an.a3_holds())] {
            if let Some(w) = want {
                out.push(check(
                    "library",
                    format!("{}: {label}", e.name),
                    got == Some(w),
                    format!("expected {w}, got {got:?}"),
                ));
            }
        }
        if e.matrix.n() == 2 {
            if let Ok(env) = lower_envelope(&e.matrix, 2) {
                let (lo, hi) = &env.argmax;
                let ends: Vec<Vec<rational::Rational>> = {
                    let mut v = vec![vec![lo.clone(), int(1) - lo], vec![hi.clone(), int(1) - hi]];
                    v.sort();
                    v.dedup();
                    v
                };
                let got = an.ne_x().sorted_vertices();
                out.push(check(
                    "library",
                    format!("{}: envelope argmax matches NE_x", e.name),
                    ends == got && &env.value == an.value(),
                    format!("envelope [{}, {}] value {}", rational::format(lo), rational::format(hi), rational::format(&env.value)),
                ));
            }
        }
    }
    out
}

fn get<'a>(analyses: &'a [(LibraryEntry, GameAnalysis)], name: &str) -> Option<&'a GameAnalysis> {
    analyses.iter().find(|(e, _)| e.name == name).map(|(_, a)| a)
}

fn assumptions_group(analyses: &[(LibraryEntry, GameAnalysis)]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if let Some(an) = get(analyses, "non_converge_example") {
        let witness = an.a3.as_ref().and_then(|r| {
            r.faces
                .iter()
                .find(|f| f.label.to_one_based() == [1, 2, 3])
                .and_then(|f| f.witness)
        });
        out.push(check(
            "assumptions",
            "non_converge_example: (A1,A2,A3) = (T,T,T), witness l=3 on I={1,2,3}",
            an.a1 && an.a2 && an.a3_holds() == Some(true) && witness == Some(2),
            format!("a1={} a2={} a3={:?} witness={:?}", an.a1, an.a2, an.a3_holds(), witness.map(|l| l + 1)),
        ));
    }
    if let Some(an) = get(analyses, "bd_counter_ex") {
        out.push(check(
            "assumptions",
            "bd_counter_ex: (A1,A2,A3) = (T,T,F)",
            an.a1 && an.a2 && an.a3_holds() == Some(false),
            format!("a1={} a2={} a3={:?}", an.a1, an.a2, an.a3_holds()),
        ));
    }
    if let Some(an) = get(analyses, "converging_example") {
        out.push(check("assumptions", "converging_example: A1 fails", !an.a1, format!("a1={}", an.a1)));
    }
    if let Some(an) = get(analyses, "without_a2") {
        out.push(check("assumptions", "without_a2: A2 fails", !an.a2, format!("a2={}", an.a2)));
    }
    out
}

/// Library games satisfying A1 and A2.
pub fn a1_a2_games(analyses: &[(LibraryEntry, GameAnalysis)]) -> Vec<(&LibraryEntry, &GameAnalysis)> {
    analyses.iter().filter(|(_, a)| a.a1 && a.a2).map(|(e, a)| (e, a)).collect()
}

fn structure_group(analyses: &[(LibraryEntry, GameAnalysis)]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (e, an) in a1_a2_games(analyses) {
        let Some(st) = &an.structure else {
            continue;
        };
        for c in &st.checks {
            out.push(check("structure", format!("{}: {}", e.name, c.name), c.passed, c.detail.clone()));
        }
    }
    out
}

fn parity_group() -> Result<Vec<CheckResult>> {
    let zz = PayoffMatrix::parse(&[&["0"], &["0"]])?;
    let n_max = 20;
    let steps = (1u64 << n_max) + (1u64 << (n_max - 1));
    let traj = fp_run(&FpConfig::new(zz, steps).rules(TieRule::Parity, TieRule::Lowest))?;
    let rep = verify_parity(&traj, n_max)?;
    Ok(rep
        .checks
        .iter()
        .map(|c| {
            check(
                "parity",
                format!("[x̂({})]_2 = {} (n={})", c.k, c.expected, c.n),
                c.passed,
                format!("got {}", c.actual),
            )
        })
        .collect())
}

/// Up- and down-crossings of the shrinking band around `[1/4, 3/4]` in the
/// final half of a one-bit run on the zero game.
pub fn onebit_crossings(steps: u64) -> Result<(u64, u64)> {
    let zz = PayoffMatrix::parse(&[&["0"], &["0"]])?;
    let rule = TieRule::OneBit {
        a: frac(1, 4),
        b: frac(3, 4),
    };
    let traj = fp_run(&FpConfig::new(zz, steps).rules(rule, TieRule::Lowest))?;
    let c = band_crossings(&traj, 1, steps / 2, |k| 0.25 + 10.0 / k as f64, |k| 0.75 - 10.0 / k as f64);
    Ok((c.above, c.below))
}

fn onebit_group(long: bool) -> Result<Vec<CheckResult>> {
    let steps = if long { 1_000_000 } else { 100_000 };
    let (above, below) = onebit_crossings(steps)?;
    Ok(vec![check(
        "onebit",
        format!("zz_mat onebit:1/4,3/4 T={steps}: >= 5 crossings each way in the final half"),
        above >= 5 && below >= 5,
        format!("above 3/4-10/k: {above}, below 1/4+10/k: {below}"),
    )])
}

/// Rule pairs used for lemma and non-convergence sweeps: the three generic
/// rules for both players, and one-bit / parity on every 2-action player
/// with the opponent breaking ties uniformly.
pub fn rule_assignments(a: &PayoffMatrix) -> Vec<(TieRule, TieRule)> {
    let mut out = Vec::new();
    for r in TieRule::builtin() {
        if !r.needs_two_actions() {
            out.push((r.clone(), r));
            continue;
        }
        if a.n() == 2 {
            out.push((r.clone(), TieRule::Uniform));
        }
        if a.m() == 2 {
            out.push((TieRule::Uniform, r));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaRun {
    pub game: String,
    pub rules: (String, String),
    pub seed: u64,
    pub violations: usize,
    pub first_violation: Option<String>,
    pub final_dist: f64,
}

/// Runs every built-in A1/A2 game (normalized) under every rule assignment
/// and seed, checking lemma invariants and the final distance to NE.
pub fn lemma_sweep(analyses: &[(LibraryEntry, GameAnalysis)], steps: u64, seeds: &[u64]) -> Result<Vec<LemmaRun>> {
    let mut jobs = Vec::new();
    for (e, an) in a1_a2_games(analyses) {
        let norm = an.normalization.as_ref().expect("A1 games are normalized");
        let sol = an.normalized_solution.as_ref().expect("A1 games are normalized");
        for rules in rule_assignments(&norm.matrix) {
            for &seed in seeds {
                jobs.push((e.name, &norm.matrix, sol, rules.clone(), seed));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(name, a, sol, (r1, r2), seed)| {
            let traj = fp_run(&FpConfig::new(a.clone(), steps).rules(r1.clone(), r2.clone()).seed(seed))?;
            let rep = check_lemmas(&traj)?;
            Ok(LemmaRun {
                game: name.to_string(),
                rules: (r1.to_string(), r2.to_string()),
                seed,
                violations: rep.violations.len(),
                first_violation: rep.violations.first().map(|v| format!("{:?} at k={}: {}", v.lemma, v.step, v.detail)),
                final_dist: dist_at(&traj, traj.len() - 1, sol),
            })
        })
        .collect()
}

pub const ROBINSON_EPS: f64 = 0.05;

fn lemma_group(analyses: &[(LibraryEntry, GameAnalysis)], long: bool) -> Result<Vec<CheckResult>> {
    let steps = if long { 1_000_000 } else { 100_000 };
    let runs = lemma_sweep(analyses, steps, &[0, 1, 2])?;
    Ok(runs
        .iter()
        .map(|r| {
            check(
                "lemmas",
                format!("{} {}/{} seed {} T={steps}", r.game, r.rules.0, r.rules.1, r.seed),
                r.violations == 0 && r.final_dist < ROBINSON_EPS,
                format!(
                    "violations {}{}; dist_to_ne(T) = {:.4} (< {ROBINSON_EPS})",
                    r.violations,
                    r.first_violation.as_ref().map(|v| format!(" ({v})")).unwrap_or_default(),
                    r.final_dist
                ),
            )
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct TailRun {
    pub game: String,
    pub rules: (String, String),
    pub seed: u64,
    pub diameter: f64,
    pub range_x1: f64,
}

/// Tail (last half) statistics of `x̂` for `game` under every rule assignment.
pub fn tail_sweep(name: &str, a: &PayoffMatrix, steps: u64, seeds: &[u64]) -> Result<Vec<TailRun>> {
    let jobs: Vec<((TieRule, TieRule), u64)> = rule_assignments(a)
        .into_iter()
        .flat_map(|r| seeds.iter().map(move |&s| (r.clone(), s)))
        .collect();
    jobs.into_par_iter()
        .map(|((r1, r2), seed)| {
            let traj = fp_run(&FpConfig::new(a.clone(), steps).rules(r1.clone(), r2.clone()).seed(seed))?;
            let rep = oscillation_verdict(&traj, VerdictParams::default(), None);
            let (lo, hi) = rep.tail_range_x[0];
            Ok(TailRun {
                game: name.to_string(),
                rules: (r1.to_string(), r2.to_string()),
                seed,
                diameter: rep.tail_diameter_x,
                range_x1: hi - lo,
            })
        })
        .collect()
}

fn nonconvergence_group(analyses: &[(LibraryEntry, GameAnalysis)], long: bool) -> Result<Vec<CheckResult>> {
    let steps = if long { 1_000_000 } else { 100_000 };
    let mut out = Vec::new();
    for name in ["non_converge_example", "2by2_mult_ne"] {
        let Some((e, _)) = analyses.iter().find(|(e, _)| e.name == name) else {
            continue;
        };
        for r in tail_sweep(name, &e.matrix, steps, &[0, 1, 2])? {
            let mut ok = r.diameter >= 0.1;
            let mut detail = format!("tail diameter {:.3} (>= 0.1)", r.diameter);
            if name == "2by2_mult_ne" {
                ok &= r.range_x1 >= 0.3;
                detail.push_str(&format!("; tail range of [x̂]_1 {:.3} (>= 0.3)", r.range_x1));
            }
            out.push(check(
                "nonconvergence",
                format!("{name} {}/{} seed {} T={steps}", r.rules.0, r.rules.1, r.seed),
                ok,
                detail,
            ));
        }
    }
    Ok(out)
}

/// `min_k dist(x̂(k), NE_x(A_{(3,4)}))` for FP on `A_{1,3,4}` of `conj_exp`
/// started from uniform priors with weight 10.
pub fn conj_exp_gap(a: &PayoffMatrix, steps: u64, seed: u64) -> Result<f64> {
    let i_set = ActionSet::from_one_based(&[1, 3, 4], a.m())?;
    let a_i = submatrix(a, &i_set)?.matrix;
    let cfg = FpConfig::new(a_i, steps)
        .prior_x(int(10), MixedStrategy::uniform(3))
        .prior_y(int(10), MixedStrategy::uniform(3))
        .seed(seed);
    let traj = fp_run(&cfg)?;
    Ok(reduced_subsequence_gap(&traj, a, &i_set, &ActionSet::singleton(0))?.gap)
}

/// Tail diameter for `without_a2` without priors, or with the prior
/// `x0 = (3/4,1/8,1/8)`, `y0 = 1/6`, `k1 = k2 = 10`.
pub fn without_a2_diameter(a: &PayoffMatrix, with_prior: bool, steps: u64, seed: u64) -> Result<f64> {
    let mut cfg = FpConfig::new(a.clone(), steps).seed(seed);
    if with_prior {
        cfg = cfg
            .prior_x(int(10), MixedStrategy::new(vec![frac(3, 4), frac(1, 8), frac(1, 8)])?)
            .prior_y(int(10), MixedStrategy::uniform(a.m()));
    }
    let traj = fp_run(&cfg)?;
    Ok(oscillation_verdict(&traj, VerdictParams::default(), None).tail_diameter_x)
}

fn discussion_group(analyses: &[(LibraryEntry, GameAnalysis)]) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    if let Some((e, _)) = analyses.iter().find(|(e, _)| e.name == "conj_exp") {
        for seed in 0..3 {
            let gap = conj_exp_gap(&e.matrix, 2000, seed)?;
            out.push(check(
                "discussion",
                format!("conj_exp I={{1,3,4}} seed {seed}: reduced-game gap < 0.05"),
                gap < 0.05,
                format!("gap {gap:.4}"),
            ));
        }
    }
    if let Some((e, _)) = analyses.iter().find(|(e, _)| e.name == "without_a2") {
        for seed in 0..3 {
            let d = without_a2_diameter(&e.matrix, false, 100_000, seed)?;
            out.push(check(
                "discussion",
                format!("without_a2 k1=0 seed {seed}: tail diameter >= 0.05"),
                d >= 0.05,
                format!("diameter {d:.4}"),
            ));
            let d = without_a2_diameter(&e.matrix, true, 100_000, seed)?;
            out.push(check(
                "discussion",
                format!("without_a2 with prior seed {seed}: tail diameter < 0.02"),
                d < 0.02,
                format!("diameter {d:.4}"),
            ));
        }
    }
    Ok(out)
}

/// Tail diameter of a finished trajectory with default verdict parameters.
pub fn tail_diameter(traj: &Trajectory) -> f64 {
    oscillation_verdict(traj, VerdictParams::default(), None).tail_diameter_x
}
