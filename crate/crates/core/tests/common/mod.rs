//! Test-only oracles, written independently of the production code paths:
//! exhaustive constraint-subset enumeration with its own elimination, and
//! grid search for projections.

#![allow(dead_code)]

use fplab_core::equilibrium::solve_game;
use fplab_core::library;
use fplab_core::polytope::{Halfspace, Polytope};
use fplab_core::rational::{self, frac, Rational};
use fplab_core::PayoffMatrix;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Unique solution of the square system `m x = b`, if any.
pub fn solve_square(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        b.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `max_x min_j c_j x` over the vertices of the epigraph
/// `{(x,t): x in S_n, c_j x >= t}`: every choice of `n` tight constraints
/// among `x_i >= 0` and `c_j x - t >= 0`, plus `sum x = 1`.
pub fn brute_value(a: &PayoffMatrix) -> Rational {
    let (n, m) = (a.n(), a.m());
    // rows over (x_1..x_n, t)
    let mut cons: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        let mut r = vec![Rational::zero(); n + 1];
        r[i] = Rational::one();
        cons.push(r);
    }
    for j in 0..m {
        let mut r: Vec<Rational> = (0..n).map(|i| a.entry(i, j).clone()).collect();
        r.push(-Rational::one());
        cons.push(r);
    }
    let mut best: Option<Rational> = None;
    for s in subsets(n + m, n) {
        let mut rows: Vec<Vec<Rational>> = s.iter().map(|&c| cons[c].clone()).collect();
        let mut rhs = vec![Rational::zero(); n];
        let mut sum = vec![Rational::one(); n];
        sum.push(Rational::zero());
        rows.push(sum);
        rhs.push(Rational::one());
        let Some(p) = solve_square(rows, rhs) else { continue };
        if cons.iter().all(|c| !dot(c, &p).is_negative()) {
            let t = p[n].clone();
            if best.as_ref().is_none_or(|b| &t > b) {
                best = Some(t);
            }
        }
    }
    best.expect("the epigraph has a vertex")
}

/// Vertices of `{x in S_d : a_k x >= b_k}` by exhaustive choice of `d - 1`
/// tight constraints among the coordinate facets and the given rows.
pub fn brute_vertices(d: usize, ineqs: &[(Vec<Rational>, Rational)]) -> Vec<Vec<Rational>> {
    let mut cons: Vec<(Vec<Rational>, Rational)> = (0..d)
        .map(|i| {
            let mut r = vec![Rational::zero(); d];
            r[i] = Rational::one();
            (r, Rational::zero())
        })
        .collect();
    cons.extend(ineqs.iter().cloned());
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for s in subsets(cons.len(), d - 1) {
        let mut rows: Vec<Vec<Rational>> = s.iter().map(|&c| cons[c].0.clone()).collect();
        let mut rhs: Vec<Rational> = s.iter().map(|&c| cons[c].1.clone()).collect();
        rows.push(vec![Rational::one(); d]);
        rhs.push(Rational::one());
        let Some(p) = solve_square(rows, rhs) else { continue };
        if cons.iter().all(|(r, b)| &dot(r, &p) >= b) {
            out.push(p);
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn brute_ne_x(a: &PayoffMatrix, v: &Rational) -> Vec<Vec<Rational>> {
    let ineqs: Vec<_> = (0..a.m()).map(|j| (a.column(j), v.clone())).collect();
    brute_vertices(a.n(), &ineqs)
}

pub fn brute_ne_y(a: &PayoffMatrix, v: &Rational) -> Vec<Vec<Rational>> {
    let ineqs: Vec<_> = (0..a.n())
        .map(|i| (a.row(i).iter().map(|e| -e).collect(), -v.clone()))
        .collect();
    brute_vertices(a.m(), &ineqs)
}

/// Minimum distance from `x` to grid points `(i/N, j/N, 1 - ...)` of `S_3`
/// satisfying every `a x >= b`.
pub fn grid_distance3(ineqs: &[([f64; 3], f64)], x: [f64; 3], n: usize) -> f64 {
    let mut best = f64::INFINITY;
    let h = 1.0 / n as f64;
    for i in 0..=n {
        for j in 0..=(n - i) {
            let p = [i as f64 * h, j as f64 * h, (n - i - j) as f64 * h];
            if ineqs.iter().all(|(a, b)| a[0] * p[0] + a[1] * p[1] + a[2] * p[2] >= *b) {
                let d = (p[0] - x[0]).powi(2) + (p[1] - x[1]).powi(2) + (p[2] - x[2]).powi(2);
                best = best.min(d);
            }
        }
    }
    best.sqrt()
}

/// Small rationals; `degenerate` draws from {0, 1/2, 1} so ties and
/// multiple equilibria are common.
pub fn random_entry(rng: &mut ChaCha8Rng, degenerate: bool) -> Rational {
    if degenerate {
        frac(rng.gen_range(0..=2), 2)
    } else {
        frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))
    }
}

pub fn random_game(rng: &mut ChaCha8Rng, n: usize, m: usize, degenerate: bool) -> PayoffMatrix {
    let rows = (0..n)
        .map(|_| (0..m).map(|_| random_entry(rng, degenerate)).collect())
        .collect();
    PayoffMatrix::new(rows).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn to3(v: &[Rational]) -> [f64; 3] {
    [rational::to_f64(&v[0]), rational::to_f64(&v[1]), rational::to_f64(&v[2])]
}

/// Random polytopes in `S_3` that keep a disc around the barycenter.
fn random_polytope(r: &mut rand_chacha::ChaCha8Rng) -> Polytope {
    let c = [frac(1, 3), frac(1, 3), frac(1, 3)];
    let k = r.gen_range(1..=4);
    let cuts = (0..k)
        .map(|_| {
            let normal: Vec<Rational> = (0..3).map(|_| frac(r.gen_range(-3..=3), 1)).collect();
            let norm = normal.iter().map(|x| x.to_f64().unwrap().powi(2)).sum::<f64>().sqrt();
            let at_c: Rational = normal.iter().zip(&c).map(|(a, b)| a * b).sum();
            let off = at_c - frac((norm * 100.0).ceil() as i64, 1000) * frac(r.gen_range(1..=3), 1);
            Halfspace::ge(normal, off)
        })
        .collect();
    Polytope::in_simplex(3, cuts)
}

fn nearest_vertex(corners: &[[f64; 3]], x: [f64; 3]) -> f64 {
    corners
        .iter()
        .map(|c| ((c[0] - x[0]).powi(2) + (c[1] - x[1]).powi(2) + (c[2] - x[2]).powi(2)).sqrt())
        .fold(f64::INFINITY, f64::min)
}

/// Largest `grid - exact` distance gap over random cut polytopes and the
/// library's 3-row NE_x sets, for rational query points on a 1/20 grid.
/// Grid step 1/2000; the candidate set also holds the brute-force vertices
/// so acute corners are not missed. Panics if a projection is beaten by a
/// grid point or zero distance disagrees with membership.
pub fn projection_sweep(seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut cases: Vec<Polytope> = (0..12).map(|_| random_polytope(&mut r)).collect();
    for name in ["non_converge_example", "bd_counter_ex", "conj_exp", "without_a2"] {
        cases.push(solve_game(&library::matrix(name).unwrap()).unwrap().ne_x);
    }
    let mut worst: f64 = 0.0;
    for p in &cases {
        let ineqs: Vec<([f64; 3], f64)> = p
            .inequalities()
            .iter()
            .map(|h| (to3(&h.normal), rational::to_f64(&h.offset)))
            .collect();
        let exact_ineqs: Vec<(Vec<Rational>, Rational)> =
            p.inequalities().iter().map(|h| (h.normal.clone(), h.offset.clone())).collect();
        let corners: Vec<[f64; 3]> = brute_vertices(3, &exact_ineqs).iter().map(|v| to3(v)).collect();
        for _ in 0..4 {
            let (i, j) = (r.gen_range(0..=20), r.gen_range(0..=20));
            let (i, j) = if i + j > 20 { (20 - i, 20 - j) } else { (i, j) };
            let x = vec![frac(i, 20), frac(j, 20), frac(20 - i - j, 20)];
            let exact = p.distance(&x);
            let grid = grid_distance3(&ineqs, to3(&x), 2000).min(nearest_vertex(&corners, to3(&x)));
            assert!(exact <= grid + 1e-12, "exact {exact} above grid {grid} at {x:?}");
            assert_eq!(exact == 0.0, p.contains(&x));
            worst = worst.max(grid - exact);
        }
    }
    worst
}
