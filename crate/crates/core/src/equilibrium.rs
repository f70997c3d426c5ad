//! Game value, equilibrium polytopes and the static structure checks.
//!
//! The value comes from an exact simplex solve of the row player's LP and is
//! cross-checked against the column player's dual. Both equilibrium sets are
//! then enumerated as polytopes inside their simplices:
//! `NE_x = {x in S_n : c_j . x >= v for all j}` and
//! `NE_y = {y in S_m : r_i . y <= v for all i}`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::matrix::{is_constant_column, submatrix, ActionSet, PayoffMatrix};
use crate::polytope::{unit, Halfspace, Polytope};
use crate::rational::{self, Rational};

/// Default cap on `n + m` for exact enumeration.
pub const DEFAULT_MAX_DIM: usize = 16;

/// Value and both equilibrium polytopes.
#[derive(Clone, Debug)]
pub struct GameSolution {
    pub value: Rational,
    pub ne_x: Polytope,
    pub ne_y: Polytope,
}

pub fn solve_game(a: &PayoffMatrix) -> Result<GameSolution> {
    solve_game_capped(a, DEFAULT_MAX_DIM)
}

pub fn solve_game_capped(a: &PayoffMatrix, cap: usize) -> Result<GameSolution> {
    check_cap(a, cap)?;
    let value = game_value(a);
    let ne_x = Polytope::in_simplex(
        a.n(),
        a.columns()
            .into_iter()
            .map(|c| Halfspace::ge(c, value.clone()))
            .collect(),
    );
    let ne_y = Polytope::in_simplex(
        a.m(),
        a.rows()
            .into_iter()
            .map(|r| Halfspace::le(r, value.clone()))
            .collect(),
    );
    debug_assert!(ne_x
        .vertices()
        .iter()
        .all(|x| a.times_row_vector(x).into_iter().min().as_ref() == Some(&value)));
    Ok(GameSolution { value, ne_x, ne_y })
}

pub fn check_cap(a: &PayoffMatrix, cap: usize) -> Result<()> {
    if a.n() + a.m() > cap {
        return Err(Error::ScaleCap {
            n: a.n(),
            m: a.m(),
            cap,
        });
    }
    Ok(())
}

/// Exact value `max_x min_j c_j . x`, asserted equal to `min_y max_i r_i . y`.
pub fn game_value(a: &PayoffMatrix) -> Rational {
    let (n, m) = (a.n(), a.m());
    // variables x_1..x_n, t
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut primal = LinearProgram::maximize(obj).free_variable(n);
    let mut simplex_row = vec![Rational::one(); n];
    simplex_row.push(Rational::zero());
    primal.add_constraint(simplex_row, Relation::Eq, Rational::one());
    for c in a.columns() {
        let mut row = c;
        row.push(-Rational::one());
        primal.add_constraint(row, Relation::Ge, Rational::zero());
    }
    let max_min = primal
        .solve()
        .optimal()
        .expect("the row player's LP is feasible and bounded")
        .value;

    // variables y_1..y_m, s
    let mut obj = vec![Rational::zero(); m + 1];
    obj[m] = Rational::one();
    let mut dual = LinearProgram::minimize(obj).free_variable(m);
    let mut simplex_row = vec![Rational::one(); m];
    simplex_row.push(Rational::zero());
    dual.add_constraint(simplex_row, Relation::Eq, Rational::one());
    for r in a.rows() {
        let mut row = r;
        row.push(-Rational::one());
        dual.add_constraint(row, Relation::Le, Rational::zero());
    }
    let min_max = dual
        .solve()
        .optimal()
        .expect("the column player's LP is feasible and bounded")
        .value;
    assert_eq!(max_min, min_max, "minimax equality failed");
    max_min
}

/// Value of the game restricted to the columns in `columns`.
pub fn reduced_values(a: &PayoffMatrix, columns: &ActionSet) -> Result<Rational> {
    Ok(game_value(&submatrix(a, columns)?.matrix))
}

/// NE_x has positive measure in `S_n`.
pub fn check_a1(sol: &GameSolution) -> bool {
    sol.ne_x.is_full_dimensional()
}

/// Every equilibrium strategy of Player 1 is fully mixed.
pub fn check_a2(sol: &GameSolution) -> bool {
    !sol.ne_x.is_empty() && sol.ne_x.is_fully_mixed()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatedAction {
    /// 0-based action of the dominated player.
    pub action: usize,
    /// A pure action that strictly dominates it, if one exists.
    pub by_pure: Option<usize>,
}

/// Strictly dominated pure actions (by pure or mixed strategies).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominanceReport {
    pub rows: Vec<DominatedAction>,
    pub columns: Vec<DominatedAction>,
}

pub fn dominance(a: &PayoffMatrix) -> DominanceReport {
    let rows = a.rows();
    let cols = a.columns();
    let row_dom = (0..a.n())
        .filter_map(|i| {
            // Player 1 maximizes: r_k > r_i entrywise
            let by_pure =
                (0..a.n()).find(|&k| k != i && rows[k].iter().zip(&rows[i]).all(|(p, q)| p > q));
            let dominated = by_pure.is_some() || mixed_dominated(&rows, i, true);
            dominated.then_some(DominatedAction { action: i, by_pure })
        })
        .collect();
    let col_dom = (0..a.m())
        .filter_map(|j| {
            // Player 2 minimizes: c_k < c_j entrywise
            let by_pure =
                (0..a.m()).find(|&k| k != j && cols[k].iter().zip(&cols[j]).all(|(p, q)| p < q));
            let dominated = by_pure.is_some() || mixed_dominated(&cols, j, false);
            dominated.then_some(DominatedAction { action: j, by_pure })
        })
        .collect();
    DominanceReport {
        rows: row_dom,
        columns: col_dom,
    }
}

// Is vectors[target] strictly dominated by a mixture of the other vectors?
// `larger` selects the direction: the mixture must be entrywise larger
// (maximizing player) or entrywise smaller (minimizing player).
fn mixed_dominated(vectors: &[Vec<Rational>], target: usize, larger: bool) -> bool {
    let others: Vec<usize> = (0..vectors.len()).filter(|&k| k != target).collect();
    if others.is_empty() {
        return false;
    }
    let k = others.len();
    let dim = vectors[target].len();
    let mut obj = vec![Rational::zero(); k + 1];
    obj[k] = Rational::one();
    let mut lp = LinearProgram::maximize(obj).free_variable(k);
    let mut sum = vec![Rational::one(); k];
    sum.push(Rational::zero());
    lp.add_constraint(sum, Relation::Eq, Rational::one());
    for e in 0..dim {
        let mut row: Vec<Rational> = others.iter().map(|&o| vectors[o][e].clone()).collect();
        if larger {
            // sum lambda v_e - eps >= target_e
            row.push(-Rational::one());
            lp.add_constraint(row, Relation::Ge, vectors[target][e].clone());
        } else {
            // sum lambda v_e + eps <= target_e
            row.push(Rational::one());
            lp.add_constraint(row, Relation::Le, vectors[target][e].clone());
        }
    }
    match lp.solve() {
        LpOutcome::Optimal(sol) => sol.value.is_positive(),
        // eps is bounded by the entry spread, so this cannot happen
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

/// A1 game with its constant column `v 1_n` moved to index 0.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub matrix: PayoffMatrix,
    /// `permutation[k]` is the 0-based original column that became column `k`.
    pub permutation: Vec<usize>,
    /// Original columns equal to `v 1_n` that were dropped as duplicates.
    pub removed_duplicates: Vec<usize>,
    /// Original constant columns with a value other than `v` (kept).
    pub other_constant_columns: Vec<usize>,
    pub dominance: DominanceReport,
}

pub fn normalize_game(a: &PayoffMatrix, sol: &GameSolution) -> Result<Normalization> {
    if !check_a1(sol) {
        return Err(Error::Precondition(
            "NE_x is not full-dimensional, no constant column v 1_n is guaranteed".into(),
        ));
    }
    let v = &sol.value;
    let mut at_value = Vec::new();
    let mut other_constant_columns = Vec::new();
    for j in 0..a.m() {
        match is_constant_column(&a.column(j)) {
            Some(c) if &c == v => at_value.push(j),
            Some(_) => other_constant_columns.push(j),
            None => {}
        }
    }
    let Some((&first, dups)) = at_value.split_first() else {
        return Err(Error::Precondition(
            "no column equals v 1_n although NE_x is full-dimensional".into(),
        ));
    };
    let mut permutation = vec![first];
    permutation.extend((0..a.m()).filter(|j| !at_value.contains(j)));
    let matrix = PayoffMatrix::from_columns(permutation.iter().map(|&j| a.column(j)).collect())?;
    let dominance = dominance(&matrix);
    Ok(Normalization {
        matrix,
        permutation,
        removed_duplicates: dups.to_vec(),
        other_constant_columns,
        dominance,
    })
}

/// A face of NE_x on whose relative interior Player 2's best-response set
/// is exactly `label`.
#[derive(Clone, Debug)]
pub struct FaceLabel {
    pub label: ActionSet,
    /// Closure of `B_I` inside NE_x.
    pub region: Polytope,
}

impl FaceLabel {
    pub fn is_interior(&self) -> bool {
        self.label.len() == 1
    }
}

/// Every label `I = bry(x)` over `x in NE_x`, ordered by size then lexicographically.
///
/// Each point of NE_x lies in the relative interior of exactly one face,
/// where the tight columns are exactly those tight on every vertex of the
/// face, so the labels are read off the face lattice.
pub fn enumerate_faces(a: &PayoffMatrix, sol: &GameSolution) -> Vec<FaceLabel> {
    let cols = a.columns();
    let verts = sol.ne_x.vertices();
    let tight: Vec<Vec<bool>> = verts
        .iter()
        .map(|x| cols.iter().map(|c| rational::dot(c, x) == sol.value).collect())
        .collect();
    let mut labels: Vec<Vec<usize>> = sol
        .ne_x
        .faces()
        .into_iter()
        .map(|face| (0..a.m()).filter(|&j| face.iter().all(|&v| tight[v][j])).collect())
        .collect();
    labels.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    labels.dedup();
    labels
        .into_iter()
        .map(|label| {
            let mut ineqs = sol.ne_x.inequalities().to_vec();
            ineqs.extend(label.iter().map(|&j| Halfspace::le(cols[j].clone(), sol.value.clone())));
            FaceLabel {
                label: ActionSet::new(label, a.m()).expect("a tight set always contains a best response"),
                region: Polytope::in_simplex(a.n(), ineqs),
            }
        })
        .collect()
}

/// A3 outcome on one boundary face.
#[derive(Clone, Debug)]
pub struct FaceA3 {
    pub label: ActionSet,
    /// 0-based columns whose hull is tested (non-constant columns of the label).
    pub hull: Vec<usize>,
    /// Coordinates `l` that are never a weak maximizer on the hull.
    pub admissible: Vec<usize>,
    /// Smallest admissible coordinate.
    pub witness: Option<usize>,
    /// For every coordinate that can be a weak maximizer, a hull point where it is.
    pub weak_max_points: Vec<(usize, Vec<Rational>)>,
}

impl FaceA3 {
    pub fn passes(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct A3Report {
    pub faces: Vec<FaceA3>,
    /// Every boundary face passes.
    pub holds: bool,
    /// At least one boundary face passes.
    pub holds_for_some_face: bool,
    /// On every face the hull columns are exactly `I \ {1}`.
    pub hull_matches_reduced_label: bool,
}

/// A3 on a normalized A1/A2 game, over every boundary face label.
pub fn check_a3(a: &PayoffMatrix, sol: &GameSolution, faces: &[FaceLabel]) -> Result<A3Report> {
    if !check_a1(sol) || !check_a2(sol) {
        return Err(Error::Precondition("A3 is only defined for games satisfying A1 and A2".into()));
    }
    if is_constant_column(&a.column(0)).as_ref() != Some(&sol.value) {
        return Err(Error::Precondition("game is not normalized: column 1 is not v 1_n".into()));
    }
    let cols = a.columns();
    let boundary: Vec<&FaceLabel> = faces.iter().filter(|f| !f.is_interior()).collect();
    let reports: Vec<FaceA3> = boundary
        .par_iter()
        .map(|f| a3_on_face(&cols, &f.label))
        .collect();
    let hull_matches_reduced_label = reports.iter().all(|r| {
        let reduced: Vec<usize> = r.label.iter().filter(|&j| j != 0).collect();
        r.hull == reduced
    });
    assert!(
        hull_matches_reduced_label,
        "non-constant hull columns differ from I \\ {{1}} on a normalized game"
    );
    Ok(A3Report {
        holds: reports.iter().all(FaceA3::passes),
        holds_for_some_face: reports.iter().any(FaceA3::passes),
        hull_matches_reduced_label,
        faces: reports,
    })
}

fn a3_on_face(cols: &[Vec<Rational>], label: &ActionSet) -> FaceA3 {
    let hull: Vec<usize> = label.iter().filter(|&j| is_constant_column(&cols[j]).is_none()).collect();
    let n = cols[0].len();
    let mut admissible = Vec::new();
    let mut weak_max_points = Vec::new();
    for l in 0..n {
        match weak_maximizer_point(cols, &hull, l) {
            Some(w) => weak_max_points.push((l, w)),
            None => admissible.push(l),
        }
    }
    FaceA3 {
        label: label.clone(),
        witness: admissible.first().copied(),
        hull,
        admissible,
        weak_max_points,
    }
}

// A point w of conv{c_h : h in hull} with w_l >= w_j for all j, if any.
fn weak_maximizer_point(cols: &[Vec<Rational>], hull: &[usize], l: usize) -> Option<Vec<Rational>> {
    if hull.is_empty() {
        return None;
    }
    let n = cols[0].len();
    let mut lp = LinearProgram::feasibility(hull.len());
    lp.add_constraint(vec![Rational::one(); hull.len()], Relation::Eq, Rational::one());
    for j in (0..n).filter(|&j| j != l) {
        let row = hull.iter().map(|&h| &cols[h][l] - &cols[h][j]).collect();
        lp.add_constraint(row, Relation::Ge, Rational::zero());
    }
    let lambda = lp.solve().optimal()?.point;
    Some(
        (0..n)
            .map(|i| hull.iter().zip(&lambda).map(|(&h, t)| t * &cols[h][i]).sum())
            .collect(),
    )
}

/// Result of one structural property with an optional witness message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub checks: Vec<Check>,
    /// For each boundary label, a coordinate vanishing on every Player-1
    /// equilibrium of `A_{I \ {1}}` (0-based), or `None` if there is none.
    pub reduced_ne_zero_coordinate: Vec<(ActionSet, Option<usize>)>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Static consequences of A1/A2 on a normalized game.
pub fn check_structure(a: &PayoffMatrix, sol: &GameSolution, faces: &[FaceLabel]) -> Result<StructureReport> {
    if !check_a1(sol) || !check_a2(sol) {
        return Err(Error::Precondition("structure checks need A1 and A2".into()));
    }
    let v = &sol.value;
    let (n, m) = (a.n(), a.m());
    let mut checks = Vec::new();

    let constant: Vec<usize> = (0..m)
        .filter(|&j| is_constant_column(&a.column(j)).as_ref() == Some(v))
        .collect();
    checks.push(Check::new(
        "constant_column",
        constant == [0],
        format!("columns equal to v 1_n: {:?}", one_based(&constant)),
    ));

    if m >= 2 {
        let rest = ActionSet::new((1..m).collect(), m)?;
        let v1 = reduced_values(a, &rest)?;
        checks.push(Check::new(
            "reduced_value_exceeds_value",
            &v1 > v,
            format!("v_-1 = {}, v = {}", rational::format(&v1), rational::format(v)),
        ));
    } else {
        checks.push(Check::new("reduced_value_exceeds_value", false, "only one column"));
    }

    let e1 = unit(m, 0);
    checks.push(Check::new(
        "unique_ne_y",
        sol.ne_y.vertices() == [e1],
        format!("NE_y vertices: {}", format_points(sol.ne_y.vertices())),
    ));

    let without_small: Vec<usize> = (1..m).filter(|&j| a.column(j).iter().all(|e| e >= v)).collect();
    checks.push(Check::new(
        "entry_below_value",
        without_small.is_empty(),
        format!("columns with no entry below v: {:?}", one_based(&without_small)),
    ));

    let full = faces.iter().find(|f| f.label.len() == m);
    checks.push(Check::new(
        "no_full_label",
        full.is_none(),
        match full {
            Some(f) => format!("label {} attained", f.label),
            None => "every point of NE_x has a column above v".to_string(),
        },
    ));

    let mut reduced_ne_zero_coordinate = Vec::new();
    for f in faces.iter().filter(|f| !f.is_interior()) {
        let rest = ActionSet::new(f.label.iter().filter(|&j| j != 0).collect(), m)?;
        let sub = submatrix(a, &rest)?.matrix;
        let sub_sol = solve_game_capped(&sub, usize::MAX)?;
        reduced_ne_zero_coordinate.push((f.label.clone(), sub_sol.ne_x.common_zero_coordinate()));
    }
    let bad: Vec<String> = reduced_ne_zero_coordinate
        .iter()
        .filter(|(_, z)| z.is_none())
        .map(|(l, _)| l.to_string())
        .collect();
    checks.push(Check::new(
        "reduced_ne_on_boundary",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} boundary labels checked in S_{n}", reduced_ne_zero_coordinate.len())
        } else {
            format!("interior equilibria for labels {}", bad.join(" "))
        },
    ));

    Ok(StructureReport {
        checks,
        reduced_ne_zero_coordinate,
    })
}

/// Everything the crate can say statically about a game.
#[derive(Clone, Debug)]
pub struct GameAnalysis {
    pub matrix: PayoffMatrix,
    pub solution: GameSolution,
    pub a1: bool,
    pub a2: bool,
    pub normalization: Option<Normalization>,
    /// Solution of the normalized game (its NE_y lives in the reduced column space).
    pub normalized_solution: Option<GameSolution>,
    /// `v_{-1}`: value after removing the constant column.
    pub reduced_value: Option<Rational>,
    /// Labels of the normalized game.
    pub faces: Vec<FaceLabel>,
    pub a3: Option<A3Report>,
    pub structure: Option<StructureReport>,
}

impl GameAnalysis {
    pub fn value(&self) -> &Rational {
        &self.solution.value
    }

    pub fn ne_x(&self) -> &Polytope {
        &self.solution.ne_x
    }

    pub fn ne_y(&self) -> &Polytope {
        &self.solution.ne_y
    }

    pub fn a3_holds(&self) -> Option<bool> {
        self.a3.as_ref().map(|r| r.holds)
    }
}

pub fn analyze(a: &PayoffMatrix) -> Result<GameAnalysis> {
    analyze_capped(a, DEFAULT_MAX_DIM)
}

pub fn analyze_capped(a: &PayoffMatrix, cap: usize) -> Result<GameAnalysis> {
    let solution = solve_game_capped(a, cap)?;
    let a1 = check_a1(&solution);
    let a2 = check_a2(&solution);
    let mut out = GameAnalysis {
        matrix: a.clone(),
        solution,
        a1,
        a2,
        normalization: None,
        normalized_solution: None,
        reduced_value: None,
        faces: Vec::new(),
        a3: None,
        structure: None,
    };
    if !a1 {
        return Ok(out);
    }
    let norm = normalize_game(a, &out.solution)?;
    let na = &norm.matrix;
    let nsol = solve_game_capped(na, cap)?;
    if na.m() >= 2 {
        out.reduced_value = Some(reduced_values(na, &ActionSet::new((1..na.m()).collect(), na.m())?)?);
    }
    out.faces = enumerate_faces(na, &nsol);
    if a2 {
        out.a3 = Some(check_a3(na, &nsol, &out.faces)?);
        out.structure = Some(check_structure(na, &nsol, &out.faces)?);
    }
    out.normalization = Some(norm);
    out.normalized_solution = Some(nsol);
    Ok(out)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn format_points(points: &[Vec<Rational>]) -> String {
    let parts: Vec<String> = points
        .iter()
        .map(|p| format!("({})", rational::format_vec(p).join(",")))
        .collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::rational::{frac, int};

    fn pts(v: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = v
            .iter()
            .map(|p| p.iter().map(|&(a, b)| frac(a, b)).collect())
            .collect();
        out.sort();
        out
    }

    fn labels(faces: &[FaceLabel]) -> Vec<Vec<usize>> {
        faces.iter().map(|f| f.label.to_one_based()).collect()
    }

    #[test]
    fn small_games() {
        let s = solve_game(&library::matrix("2by2_basic").unwrap()).unwrap();
        assert_eq!(s.value, frac(1, 2));
        assert_eq!(s.ne_x.sorted_vertices(), pts(&[&[(1, 2), (1, 2)]]));
        assert!(!check_a1(&s));

        let s = solve_game(&library::matrix("2by2_mult_ne").unwrap()).unwrap();
        assert_eq!(s.value, frac(1, 4));
        assert_eq!(s.ne_x.sorted_vertices(), pts(&[&[(1, 4), (3, 4)], &[(3, 4), (1, 4)]]));
        assert!(check_a1(&s) && check_a2(&s));

        let s = solve_game(&library::matrix("zz_mat").unwrap()).unwrap();
        assert_eq!(s.value, int(0));
        assert_eq!(s.ne_x.vertices().len(), 2);
        assert!(check_a1(&s));
        assert!(!check_a2(&s));
    }

    #[test]
    fn three_row_games() {
        let s = solve_game(&library::matrix("non_converge_example").unwrap()).unwrap();
        assert_eq!(s.value, frac(1, 8));
        assert_eq!(
            s.ne_x.sorted_vertices(),
            pts(&[&[(1, 8), (1, 8), (3, 4)], &[(1, 8), (3, 4), (1, 8)], &[(3, 4), (1, 8), (1, 8)]])
        );
        assert_eq!(s.ne_y.vertices(), &[unit(4, 0)]);

        let s = solve_game(&library::matrix("bd_counter_ex").unwrap()).unwrap();
        assert_eq!(s.value, frac(3, 10));
        assert_eq!(
            s.ne_x.sorted_vertices(),
            pts(&[&[(1, 3), (1, 3), (1, 3)], &[(7, 10), (1, 25), (13, 50)], &[(7, 10), (13, 50), (1, 25)]])
        );

        let s = solve_game(&library::matrix("converging_example").unwrap()).unwrap();
        assert_eq!(s.value, frac(1, 9));
        assert!(!check_a1(&s));
        assert!(check_a2(&s));

        let s = solve_game(&library::matrix("without_a2").unwrap()).unwrap();
        assert_eq!(s.ne_x.vertices().len(), 6);
        assert!(check_a1(&s));
        assert!(!check_a2(&s));
    }

    #[test]
    fn scale_cap() {
        let a = PayoffMatrix::new(vec![vec![int(0); 9]; 9]).unwrap();
        assert!(matches!(solve_game(&a), Err(Error::ScaleCap { n: 9, m: 9, cap: 16 })));
        assert!(solve_game_capped(&a, 18).is_ok());
    }

    #[test]
    fn normalization_examples() {
        let a = library::matrix("2by2_mult_ne").unwrap();
        let s = solve_game(&a).unwrap();
        let norm = normalize_game(&a, &s).unwrap();
        assert_eq!(
            norm.matrix,
            PayoffMatrix::parse(&[&["1/4", "1", "0"], &["1/4", "0", "1"]]).unwrap()
        );
        assert_eq!(one_based(&norm.permutation), vec![3, 1, 2]);

        let a = library::matrix("non_converge_example").unwrap();
        let norm = normalize_game(&a, &solve_game(&a).unwrap()).unwrap();
        assert_eq!(norm.matrix, a);
        assert_eq!(norm.permutation, vec![0, 1, 2, 3]);
        assert!(norm.dominance.columns.is_empty());

        let a = PayoffMatrix::parse(&[&["1", "0", "1/4", "1/4"], &["0", "1", "1/4", "1/4"]]).unwrap();
        let norm = normalize_game(&a, &solve_game(&a).unwrap()).unwrap();
        assert_eq!((norm.matrix.n(), norm.matrix.m()), (2, 3));
        assert_eq!(norm.removed_duplicates, vec![3]);

        let a = library::matrix("2by2_basic").unwrap();
        assert!(normalize_game(&a, &solve_game(&a).unwrap()).is_err());
    }

    #[test]
    fn dominance_pure_and_mixed() {
        // (1/2,1/2) is only weakly dominated by the even mix of e_1, e_2
        let a = PayoffMatrix::parse(&[&["1", "0", "1/2", "3/4", "2"], &["0", "1", "1/2", "3/4", "2"]]).unwrap();
        let d = dominance(&a);
        let cols: Vec<(usize, Option<usize>)> = d.columns.iter().map(|c| (c.action, c.by_pure)).collect();
        assert_eq!(cols, vec![(3, Some(2)), (4, Some(0))]);
        let a = PayoffMatrix::parse(&[&["1", "0", "3/5"], &["0", "1", "3/5"]]).unwrap();
        let d = dominance(&a);
        assert_eq!(d.columns, vec![DominatedAction { action: 2, by_pure: None }]);
        let rows = PayoffMatrix::parse(&[&["1", "0"], &["0", "1"], &["1/3", "1/3"]]).unwrap();
        assert_eq!(dominance(&rows).rows, vec![DominatedAction { action: 2, by_pure: None }]);
    }

    #[test]
    fn face_labels() {
        let a = library::matrix("non_converge_example").unwrap();
        let s = solve_game(&a).unwrap();
        let faces = enumerate_faces(&a, &s);
        assert_eq!(
            labels(&faces),
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 3, 4]
            ]
        );
        assert!(faces[0].region.is_full_dimensional());
        assert_eq!(faces[4].region.vertices(), &[vec![frac(1, 8), frac(1, 8), frac(3, 4)]]);

        let an = analyze(&library::matrix("2by2_mult_ne").unwrap()).unwrap();
        assert_eq!(labels(&an.faces), vec![vec![1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn a3_examples() {
        let an = analyze(&library::matrix("non_converge_example").unwrap()).unwrap();
        let a3 = an.a3.unwrap();
        assert!(a3.holds);
        let f = a3.faces.iter().find(|f| f.label.to_one_based() == [1, 2, 3]).unwrap();
        assert_eq!(f.witness, Some(2));
        assert!(a3.hull_matches_reduced_label);

        let an = analyze(&library::matrix("bd_counter_ex").unwrap()).unwrap();
        let a3 = an.a3.unwrap();
        assert!(!a3.holds);
        assert!(a3.holds_for_some_face);
        let bad = a3.faces.iter().find(|f| f.label.to_one_based() == [1, 3, 4]).unwrap();
        assert!(!bad.passes());
        assert_eq!(bad.weak_max_points.len(), 3);
        let good = a3.faces.iter().find(|f| f.label.to_one_based() == [1, 2, 3]).unwrap();
        assert_eq!(good.witness, Some(0));

        let an = analyze(&library::matrix("2by2_mult_ne").unwrap()).unwrap();
        let f = &an.a3.unwrap().faces[0];
        assert_eq!(f.label.to_one_based(), vec![1, 2]);
        assert_eq!(f.witness, Some(1));
    }

    #[test]
    fn a3_rejects_games_without_a2() {
        let a = library::matrix("without_a2").unwrap();
        let s = solve_game(&a).unwrap();
        let faces = enumerate_faces(&a, &s);
        assert!(check_a3(&a, &s, &faces).is_err());
    }

    #[test]
    fn reduced_value_examples() {
        let a = PayoffMatrix::parse(&[&["1/4", "1", "0"], &["1/4", "0", "1"]]).unwrap();
        assert_eq!(reduced_values(&a, &ActionSet::new(vec![1, 2], 3).unwrap()).unwrap(), frac(1, 2));
        let a = library::matrix("non_converge_example").unwrap();
        assert_eq!(reduced_values(&a, &ActionSet::new(vec![1, 2, 3], 4).unwrap()).unwrap(), frac(1, 3));
        let a = library::matrix("zz_mat").unwrap();
        assert_eq!(reduced_values(&a, &ActionSet::full(1)).unwrap(), int(0));
    }

    #[test]
    fn structure_reports() {
        for name in ["non_converge_example", "bd_counter_ex", "conj_exp", "2by2_mult_ne"] {
            let an = analyze(&library::matrix(name).unwrap()).unwrap();
            let st = an.structure.unwrap();
            assert!(st.all_passed(), "{name}: {:?}", st.checks);
        }
        let an = analyze(&library::matrix("conj_exp").unwrap()).unwrap();
        let st = an.structure.unwrap();
        let (_, z) = st
            .reduced_ne_zero_coordinate
            .iter()
            .find(|(l, _)| l.to_one_based() == [1, 3, 4])
            .unwrap();
        assert_eq!(*z, Some(0));
    }
}
