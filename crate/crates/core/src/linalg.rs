//! Dense exact linear algebra over `Rational`.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Unique solution of a square system, `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut chosen = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
            chosen.push(i);
        }
    }
    chosen
}

/// Dimension of the affine hull; `None` for an empty set.
pub fn affine_dimension(points: &[Vec<Rational>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn norm_sq(a: &[Rational]) -> Rational {
    a.iter().map(|x| x * x).sum()
}

/// Orthogonal projection of `x` onto the affine hull of `points`.
pub fn project_affine(x: &[Rational], points: &[Vec<Rational>]) -> Vec<Rational> {
    let base = &points[0];
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub(p, base)).collect();
    let keep = independent_subset(&diffs);
    if keep.is_empty() {
        return base.clone();
    }
    let dirs: Vec<&Vec<Rational>> = keep.iter().map(|&i| &diffs[i]).collect();
    let rhs_vec = sub(x, base);
    let gram: Vec<Vec<Rational>> = dirs
        .iter()
        .map(|d| dirs.iter().map(|e| crate::rational::dot(d, e)).collect())
        .collect();
    let rhs: Vec<Rational> = dirs.iter().map(|d| crate::rational::dot(d, &rhs_vec)).collect();
    let coef = solve(&gram, &rhs).expect("Gram matrix of independent directions is regular");
    let mut out = base.clone();
    for (c, d) in coef.iter().zip(&dirs) {
        for (o, di) in out.iter_mut().zip(d.iter()) {
            *o += c * di;
        }
    }
    out
}
