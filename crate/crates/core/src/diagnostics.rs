//! Trajectory analysis: distances to the equilibrium set, oscillation
//! verdicts, lemma-level invariants and the parity checks.
//!
//! Verdict thresholds are engineering choices and are stored in every report.

use num_traits::Zero;
use serde::Serialize;

use crate::construct::ternary_project;
use crate::equilibrium::{solve_game_capped, GameSolution};
use crate::error::{Error, Result};
use crate::fp::Trajectory;
use crate::matrix::{is_constant_column, submatrix, ActionSet, PayoffMatrix};
use crate::polytope::Polytope;
use crate::rational::{self, Rational};

/// Euclidean distance of `(x, y)` to `NE_x x NE_y`; `None` stands for an
/// undefined (zero-state) coordinate and contributes nothing.
pub fn dist_to_ne(x: Option<&[Rational]>, y: Option<&[Rational]>, sol: &GameSolution) -> f64 {
    let part = |p: Option<&[Rational]>, poly: &Polytope| {
        p.and_then(|p| poly.distance_sq(p)).unwrap_or_else(Rational::zero)
    };
    let d2 = part(x, &sol.ne_x) + part(y, &sol.ne_y);
    rational::to_f64(&d2).sqrt()
}

/// Distance of the recorded state `i` to the equilibrium set.
pub fn dist_at(traj: &Trajectory, i: usize, sol: &GameSolution) -> f64 {
    dist_to_ne(traj.x_hat(i).as_deref(), traj.y_hat(i).as_deref(), sol)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VisitCounts {
    /// `visits[j]`: recorded states with `x̂ in X_1` and `ŷ in Y_j`.
    pub visits: Vec<u64>,
    pub plays_p1: Vec<u32>,
    pub plays_p2: Vec<u32>,
}

pub fn visit_counts(traj: &Trajectory) -> VisitCounts {
    let mut visits = vec![0u64; traj.n()];
    for i in 0..traj.len() {
        if traj.in_x1(i) {
            for (j, v) in visits.iter_mut().enumerate() {
                if traj.in_y(i, j) {
                    *v += 1;
                }
            }
        }
    }
    let last = traj.len() - 1;
    VisitCounts {
        visits,
        plays_p1: traj.counts1(last).to_vec(),
        plays_p2: traj.counts2(last).to_vec(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    BestResponse,
    Recurrence,
    Inertia,
    ConditionalInstability,
    InteriorInstability,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub lemma: Lemma,
    pub step: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub violations: Vec<Violation>,
    /// Number of step pairs on which inertia was actually exercised.
    pub inertia_checks: u64,
    pub interior_instability_checked: bool,
    /// First `k` with `x̂(k)` outside `X_1`, when the clause was checked.
    pub first_exit: Option<u64>,
}

impl LemmaReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, lemma: Lemma) -> usize {
        self.violations.iter().filter(|v| v.lemma == lemma).count()
    }
}

/// Scans a trajectory of a normalized game (column 1 constant) for
/// violations of best-response membership, the FP recurrence, inertia,
/// conditional instability and (when `k1 = 0`) interior instability.
/// Pair-wise checks only look at records whose `k` are consecutive.
pub fn check_lemmas(traj: &Trajectory) -> Result<LemmaReport> {
    let a = &traj.meta.matrix;
    if is_constant_column(&a.column(0)).is_none() {
        return Err(Error::Precondition("column 1 must be constant (normalize the game first)".into()));
    }
    let mut rep = LemmaReport::default();
    let full_rows = (1u64 << traj.n()) - 1;
    let push = |rep: &mut LemmaReport, lemma, step, detail: String| {
        rep.violations.push(Violation { lemma, step, detail })
    };

    for i in 0..traj.len() {
        let k = traj.k(i);
        if let Some(p) = traj.p1_action(i) {
            if !traj.br1(i).contains(p) {
                push(&mut rep, Lemma::BestResponse, k, format!("p1 action {} outside {}", p + 1, traj.br1(i)));
            }
        }
        if let Some(q) = traj.p2_action(i) {
            if !traj.br2(i).contains(q) {
                push(&mut rep, Lemma::BestResponse, k, format!("p2 action {} outside {}", q + 1, traj.br2(i)));
            }
        }
    }

    for i in 0..traj.len().saturating_sub(1) {
        let (k, k_next) = (traj.k(i), traj.k(i + 1));
        if k_next != k + 1 {
            continue;
        }
        if let (Some(p), Some(q)) = (traj.p1_action(i), traj.p2_action(i)) {
            let ok1 = step_matches(traj.counts1(i), traj.counts1(i + 1), p);
            let ok2 = step_matches(traj.counts2(i), traj.counts2(i + 1), q);
            if !(ok1 && ok2) {
                push(&mut rep, Lemma::Recurrence, k, "play counts do not follow the chosen actions".into());
            }
            if traj.in_intr_x1(i) && q == 0 {
                rep.inertia_checks += 1;
                if traj.br1_mask(i) != traj.br1_mask(i + 1) {
                    push(
                        &mut rep,
                        Lemma::Inertia,
                        k,
                        format!("Player 1 best responses changed {} -> {}", traj.br1(i), traj.br1(i + 1)),
                    );
                }
            }
        }
        for j in 0..traj.n() {
            if traj.in_intr_x1(i) && !traj.in_y(i, j) && traj.in_y(i + 1, j) {
                push(
                    &mut rep,
                    Lemma::ConditionalInstability,
                    k,
                    format!("entered Y_{} while x̂ in intr(X_1)", j + 1),
                );
            }
        }
    }

    if traj.meta.k1.is_zero() {
        rep.interior_instability_checked = true;
        let exit = (0..traj.len()).find(|&i| traj.x_defined(i) && !traj.in_x1(i));
        if let Some(e) = exit {
            rep.first_exit = Some(traj.k(e));
            for i in e + 1..traj.len() {
                if traj.in_x1(i) && traj.y_defined(i) && traj.br1_mask(i) == full_rows {
                    push(
                        &mut rep,
                        Lemma::InteriorInstability,
                        traj.k(i),
                        "revisited X_1 x (Y_1 ∩ ... ∩ Y_n)".into(),
                    );
                }
            }
        }
    }
    Ok(rep)
}

fn step_matches(before: &[u32], after: &[u32], action: usize) -> bool {
    before
        .iter()
        .zip(after)
        .enumerate()
        .all(|(i, (&b, &a))| a == b + u32::from(i == action))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Oscillating,
    Settling,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerdictParams {
    pub window_fraction: f64,
    pub threshold: f64,
}

impl Default for VerdictParams {
    fn default() -> Self {
        Self {
            window_fraction: 0.5,
            threshold: 0.1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub tail_window: (u64, u64),
    pub tail_diameter_x: f64,
    /// Per coordinate `(min, max)` of `x̂` over the tail.
    pub tail_range_x: Vec<(f64, f64)>,
    /// `(k, dist)` at up to `SERIES_POINTS` evenly spaced records plus the last.
    pub dist_to_ne_series: Vec<(u64, f64)>,
    pub visit_counts: VisitCounts,
    pub params: VerdictParams,
    pub verdict: Verdict,
}

impl ConvergenceReport {
    pub fn final_dist(&self) -> Option<f64> {
        self.dist_to_ne_series.last().map(|&(_, d)| d)
    }

    pub fn min_dist(&self) -> Option<f64> {
        self.dist_to_ne_series.iter().map(|&(_, d)| d).reduce(f64::min)
    }
}

pub const SERIES_POINTS: usize = 64;

pub fn verdict_for(diameter: f64, threshold: f64) -> Verdict {
    if diameter >= threshold {
        Verdict::Oscillating
    } else if diameter <= threshold / 10.0 {
        Verdict::Settling
    } else {
        Verdict::Inconclusive
    }
}

/// Tail statistics and the heuristic verdict. `sol` enables the distance series.
pub fn oscillation_verdict(traj: &Trajectory, params: VerdictParams, sol: Option<&GameSolution>) -> ConvergenceReport {
    let t = traj.k(traj.len() - 1);
    let t0 = t - (t as f64 * params.window_fraction).floor() as u64;
    let tail: Vec<Vec<f64>> = (0..traj.len())
        .filter(|&i| traj.k(i) >= t0)
        .filter_map(|i| traj.x_hat_f64(i))
        .collect();
    let diameter = diameter(&tail);
    let tail_range_x = (0..traj.n())
        .map(|c| {
            tail.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[c]), hi.max(p[c])))
        })
        .collect();
    let dist_to_ne_series = match sol {
        Some(sol) => {
            let len = traj.len();
            let stride = len.div_ceil(SERIES_POINTS).max(1);
            let mut idx: Vec<usize> = (0..len).step_by(stride).collect();
            if idx.last() != Some(&(len - 1)) {
                idx.push(len - 1);
            }
            idx.into_iter()
                .filter(|&i| traj.x_defined(i) || traj.y_defined(i))
                .map(|i| (traj.k(i), dist_at(traj, i, sol)))
                .collect()
        }
        None => Vec::new(),
    };
    ConvergenceReport {
        tail_window: (t0, t),
        tail_diameter_x: diameter,
        tail_range_x,
        dist_to_ne_series,
        visit_counts: visit_counts(traj),
        params,
        verdict: verdict_for(diameter, params.threshold),
    }
}

const PAIRWISE_SAMPLE: usize = 4000;

/// Maximum pairwise Euclidean distance. Exact (up to floating point) for
/// points of `S_1`, `S_2`, `S_3`; larger simplices use an evenly spaced
/// subsample of at most `PAIRWISE_SAMPLE` points.
pub fn diameter(points: &[Vec<f64>]) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    match first.len() {
        0 | 1 => 0.0,
        2 => {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[0]), hi.max(p[0])));
            (hi - lo) * std::f64::consts::SQRT_2
        }
        3 => {
            // ternary coordinates scale distances in S_3 by 1/sqrt(2)
            let planar: Vec<(f64, f64)> = points
                .iter()
                .map(|p| ternary_project(p).expect("point of S_3"))
                .collect();
            let hull = convex_hull(planar);
            let mut best: f64 = 0.0;
            for (i, a) in hull.iter().enumerate() {
                for b in &hull[i + 1..] {
                    best = best.max((a.0 - b.0).hypot(a.1 - b.1));
                }
            }
            best * std::f64::consts::SQRT_2
        }
        _ => {
            let stride = points.len().div_ceil(PAIRWISE_SAMPLE).max(1);
            let sample: Vec<&Vec<f64>> = points.iter().step_by(stride).chain(points.last()).collect();
            let mut best: f64 = 0.0;
            for (i, a) in sample.iter().enumerate() {
                for b in &sample[i + 1..] {
                    let d = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
                    best = best.max(d);
                }
            }
            best.sqrt()
        }
    }
}

// Andrew's monotone chain.
fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Crossings {
    pub above: u64,
    pub below: u64,
}

/// Counts how often `[x̂(k)]_coord` passes from below `upper(k)` to at or
/// above it, and from above `lower(k)` to at or below it, over records with
/// `k >= from`. Only consecutive records are compared.
pub fn band_crossings(
    traj: &Trajectory,
    coord: usize,
    from: u64,
    lower: impl Fn(u64) -> f64,
    upper: impl Fn(u64) -> f64,
) -> Crossings {
    let mut out = Crossings::default();
    let mut prev: Option<(u64, f64)> = None;
    for i in 0..traj.len() {
        let k = traj.k(i);
        if k < from {
            continue;
        }
        let Some(x) = traj.x_hat_f64(i).map(|x| x[coord]) else {
            continue;
        };
        if let Some((pk, px)) = prev {
            if px < upper(pk) && x >= upper(k) {
                out.above += 1;
            }
            if px > lower(pk) && x <= lower(k) {
                out.below += 1;
            }
        }
        prev = Some((k, x));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityCheck {
    pub n: u32,
    pub k: u64,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    pub checks: Vec<ParityCheck>,
    pub passed: bool,
}

/// `[x̂(2^n)]_2 = 1/2` and `[x̂(2^n + 2^(n-1))]_2 = 2/3` for `1 <= n <= n_max`.
pub fn verify_parity(traj: &Trajectory, n_max: u32) -> Result<ParityReport> {
    let a = &traj.meta.matrix;
    if a.n() != 2 || a.m() != 1 || a.entries().iter().any(|e| !e.is_zero()) {
        return Err(Error::Precondition("parity checks need the 2x1 zero game".into()));
    }
    if traj.meta.rule_p1 != "parity" {
        return Err(Error::Precondition(format!("Player 1 uses `{}`, not parity", traj.meta.rule_p1)));
    }
    if !traj.meta.k1.is_zero() {
        return Err(Error::Precondition("parity checks start from the zero state (k1 = 0)".into()));
    }
    if n_max == 0 || n_max > 31 {
        return Err(Error::Precondition("n_max must lie in 1..=31".into()));
    }
    let needed = (1u64 << n_max) + (1u64 << (n_max - 1));
    if traj.meta.steps < needed {
        return Err(Error::Precondition(format!("need T >= {needed}, trajectory has {}", traj.meta.steps)));
    }
    let mut checks = Vec::new();
    for n in 1..=n_max {
        for (k, expected) in [(1u64 << n, rational::frac(1, 2)), ((1u64 << n) + (1u64 << (n - 1)), rational::frac(2, 3))] {
            let actual = traj
                .index_of(k)
                .and_then(|i| traj.x_hat(i))
                .map(|x| x[1].clone());
            checks.push(ParityCheck {
                n,
                k,
                expected: rational::format(&expected),
                actual: actual.as_ref().map_or("missing".into(), rational::format),
                passed: actual.as_ref() == Some(&expected),
            });
        }
    }
    Ok(ParityReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    /// `min_k dist(x̂(k), NE_x(A_{I \ J}))`.
    pub gap: f64,
    pub argmin_k: u64,
    pub target_vertices: Vec<Vec<String>>,
}

/// Distance from the trajectory to Player 1's equilibrium set of the reduced
/// game `A_{I \ J}`, minimized over the recorded states. `J` must be exactly
/// the constant columns of `A` inside `I`.
pub fn reduced_subsequence_gap(traj: &Trajectory, a: &PayoffMatrix, i_set: &ActionSet, j_set: &ActionSet) -> Result<GapReport> {
    if !j_set.is_subset(i_set) {
        return Err(Error::Precondition(format!("J = {j_set} is not a subset of I = {i_set}")));
    }
    if i_set == j_set {
        return Err(Error::Precondition("I and J must differ".into()));
    }
    let constant: Vec<usize> = i_set.iter().filter(|&c| is_constant_column(&a.column(c)).is_some()).collect();
    if constant != j_set.as_slice() {
        return Err(Error::Precondition(format!("J = {j_set} is not the set of constant columns of I = {i_set}")));
    }
    if traj.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            got: traj.n(),
        });
    }
    let rest = ActionSet::new(i_set.iter().filter(|c| !j_set.contains(*c)).collect(), a.m())?;
    let target = solve_game_capped(&submatrix(a, &rest)?.matrix, usize::MAX)?.ne_x;
    let single = (target.vertices().len() == 1)
        .then(|| target.vertices()[0].iter().map(rational::to_f64).collect::<Vec<f64>>());
    let mut best = (f64::INFINITY, 0u64);
    for i in 0..traj.len() {
        let d = match &single {
            Some(p) => match traj.x_hat_f64(i) {
                Some(x) => x.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt(),
                None => continue,
            },
            None => match traj.x_hat(i) {
                Some(x) => target.distance(&x),
                None => continue,
            },
        };
        if d < best.0 {
            best = (d, traj.k(i));
        }
    }
    Ok(GapReport {
        gap: best.0,
        argmin_k: best.1,
        target_vertices: target.sorted_vertices().iter().map(|v| rational::format_vec(v)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::solve_game;
    use crate::fp::{fp_run, FpConfig, StateRecord, TieRule, TrajectoryMeta};
    use crate::library;
    use crate::rational::{frac, int};

    fn strat(s: &str) -> Vec<Rational> {
        rational::parse_list(s).unwrap()
    }

    #[test]
    fn distances_to_ne() {
        let a = library::matrix("non_converge_example").unwrap();
        let sol = solve_game(&a).unwrap();
        assert_eq!(dist_to_ne(Some(&strat("3/4,1/8,1/8")), None, &sol), 0.0);
        let d = dist_to_ne(Some(&strat("1,0,0")), None, &sol);
        assert!((d - 6f64.sqrt() / 8.0).abs() < 1e-12);
        assert_eq!(dist_to_ne(None, Some(&strat("1,0,0,0")), &sol), 0.0);
        let d = dist_to_ne(Some(&strat("1,0,0")), Some(&strat("0,1,0,0")), &sol);
        assert!((d - (6.0 / 64.0 + 2.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn diameters() {
        let pts = vec![vec![0.25, 0.75], vec![0.75, 0.25], vec![0.5, 0.5]];
        assert!((diameter(&pts) - 0.5 * std::f64::consts::SQRT_2).abs() < 1e-12);
        let tri = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.3, 0.3, 0.4]];
        assert!((diameter(&tri) - std::f64::consts::SQRT_2).abs() < 1e-12);
        let quad = vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]];
        assert!((diameter(&quad) - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(diameter(&vec![vec![0.2, 0.8]; 5]), 0.0);
        assert_eq!(verdict_for(0.0, 0.1), Verdict::Settling);
        assert_eq!(verdict_for(0.05, 0.1), Verdict::Inconclusive);
        assert_eq!(verdict_for(0.1, 0.1), Verdict::Oscillating);
    }

    #[test]
    fn constant_trajectory_settles() {
        let zz = library::matrix("zz_mat").unwrap();
        let t = fp_run(&FpConfig::new(zz, 200).rules(TieRule::Lowest, TieRule::Lowest)).unwrap();
        let rep = oscillation_verdict(&t, VerdictParams::default(), None);
        assert_eq!(rep.verdict, Verdict::Settling);
        assert_eq!(rep.tail_diameter_x, 0.0);
        let vc = visit_counts(&t);
        assert_eq!(vc.plays_p1, vec![200, 0]);
    }

    #[test]
    fn parity_small() {
        let zz = library::matrix("zz_mat").unwrap();
        let t = fp_run(&FpConfig::new(zz.clone(), 12).rules(TieRule::Parity, TieRule::Lowest)).unwrap();
        let rep = verify_parity(&t, 3).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.checks.len(), 6);
        assert_eq!(rep.checks[5].k, 12);
        assert!(verify_parity(&t, 4).is_err());
        let t = fp_run(&FpConfig::new(zz, 12).rules(TieRule::Uniform, TieRule::Lowest)).unwrap();
        assert!(verify_parity(&t, 3).is_err());
    }

    #[test]
    fn hand_crafted_violation_is_flagged() {
        let a = library::matrix("non_converge_example").unwrap();
        let meta = TrajectoryMeta {
            matrix: a,
            rule_p1: "hand".into(),
            rule_p2: "hand".into(),
            k1: int(0),
            k2: int(0),
            x0: None,
            y0: None,
            seed: 0,
            steps: 2,
            decimate: None,
        };
        let mut t = Trajectory::new(meta);
        let full1 = ActionSet::full(3);
        let full2 = ActionSet::full(4);
        t.push(&StateRecord {
            k: 0,
            p1: Some(0),
            p2: Some(1),
            br1: full1.clone(),
            br2: full2.clone(),
            in_x1: false,
            in_intr_x1: false,
            counts1: vec![0, 0, 0],
            counts2: vec![0, 0, 0, 0],
        });
        t.push(&StateRecord {
            k: 1,
            p1: Some(2),
            p2: Some(0),
            br1: ActionSet::singleton(0),
            br2: ActionSet::new(vec![2, 3], 4).unwrap(),
            in_x1: false,
            in_intr_x1: false,
            counts1: vec![1, 0, 0],
            counts2: vec![0, 1, 0, 0],
        });
        let rep = check_lemmas(&t).unwrap();
        assert_eq!(rep.count(Lemma::BestResponse), 2);
        assert!(rep.violations.iter().all(|v| v.step == 1));
    }

    #[test]
    fn lemmas_hold_on_a_short_run() {
        let a = library::matrix("non_converge_example").unwrap();
        let t = fp_run(&FpConfig::new(a, 5000).seed(3)).unwrap();
        let rep = check_lemmas(&t).unwrap();
        assert!(rep.is_clean(), "{:?}", rep.violations);
        assert!(rep.interior_instability_checked);
    }

    #[test]
    fn gap_preconditions_and_single_column_target() {
        let a = library::matrix("non_converge_example").unwrap();
        let t = fp_run(&FpConfig::new(a.clone(), 100)).unwrap();
        let one = ActionSet::singleton(0);
        assert!(reduced_subsequence_gap(&t, &a, &one, &one).is_err());
        let i = ActionSet::new(vec![0, 1], 4).unwrap();
        let rep = reduced_subsequence_gap(&t, &a, &i, &one).unwrap();
        // column (1,0,0) alone: Player 1 maximizes by playing row 1
        assert_eq!(rep.target_vertices, vec![vec!["1", "0", "0"]]);
        assert!(rep.gap > 0.0);
    }

    #[test]
    fn band_crossing_counts() {
        let zz = library::matrix("zz_mat").unwrap();
        let cfg = FpConfig::new(zz, 2000).rules(
            TieRule::OneBit {
                a: frac(1, 4),
                b: frac(3, 4),
            },
            TieRule::Lowest,
        );
        let t = fp_run(&cfg).unwrap();
        let c = band_crossings(&t, 1, 1, |k| 0.25 + 10.0 / k as f64, |k| 0.75 - 10.0 / k as f64);
        assert!(c.above >= 1 && c.below >= 1);
    }
}
