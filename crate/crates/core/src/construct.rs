//! Constant-column construction, the two-row max-min envelope and ternary
//! coordinates for plotting points of `S_3`.

use num_traits::{One, Zero};

use crate::equilibrium::{check_a1, dominance, solve_game_capped, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::matrix::PayoffMatrix;
use crate::rational::{self, Rational};

/// `A` with the column `v' 1_n` appended.
pub fn append_constant_column(a: &PayoffMatrix, v_prime: &Rational) -> PayoffMatrix {
    let mut cols = a.columns();
    cols.push(vec![v_prime.clone(); a.n()]);
    PayoffMatrix::from_columns(cols).expect("same row count")
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub matrix: PayoffMatrix,
    pub base_value: Rational,
    pub value: Rational,
    pub v_prime_below_value: bool,
    pub value_equals_v_prime: bool,
    pub a1: bool,
    /// The new column is strictly dominated for Player 2.
    pub appended_dominated: bool,
}

pub fn construct(a: &PayoffMatrix, v_prime: &Rational) -> Result<Construction> {
    construct_capped(a, v_prime, DEFAULT_MAX_DIM)
}

pub fn construct_capped(a: &PayoffMatrix, v_prime: &Rational, cap: usize) -> Result<Construction> {
    let base = solve_game_capped(a, cap.saturating_sub(1))?;
    let matrix = append_constant_column(a, v_prime);
    let sol = solve_game_capped(&matrix, cap)?;
    let last = matrix.m() - 1;
    let appended_dominated = dominance(&matrix).columns.iter().any(|d| d.action == last);
    Ok(Construction {
        v_prime_below_value: v_prime < &base.value,
        value_equals_v_prime: &sol.value == v_prime,
        a1: check_a1(&sol),
        appended_dominated,
        base_value: base.value,
        value: sol.value,
        matrix,
    })
}

#[derive(Clone, Debug)]
pub struct EnvelopeSample {
    pub p: f64,
    pub lines: Vec<f64>,
    pub envelope: f64,
}

/// Lower envelope of `p -> a_1i p + a_2i (1 - p)`, `p` the weight on row 1.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub samples: Vec<EnvelopeSample>,
    /// Maximum of the envelope (the game value).
    pub value: Rational,
    /// Maximizing interval `[lo, hi]` of `p`.
    pub argmax: (Rational, Rational),
    /// Candidate points: 0, 1 and every pairwise crossing inside [0,1].
    pub breakpoints: Vec<Rational>,
}

pub fn lower_envelope(a: &PayoffMatrix, grid_points: usize) -> Result<Envelope> {
    if a.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.n(),
        });
    }
    if grid_points < 2 {
        return Err(Error::Config("envelope grid needs at least 2 points".into()));
    }
    let lines: Vec<(Rational, Rational)> = (0..a.m())
        .map(|j| (a.entry(0, j).clone(), a.entry(1, j).clone()))
        .collect();
    let eval = |(a1, a2): &(Rational, Rational), p: &Rational| a1 * p + a2 * (Rational::one() - p);
    let env = |p: &Rational| lines.iter().map(|l| eval(l, p)).min().expect("at least one column");

    let mut breakpoints = vec![Rational::zero(), Rational::one()];
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            // slopes a1 - a2; crossing where the difference vanishes
            let slope = (&l.0 - &l.1) - (&m.0 - &m.1);
            if slope.is_zero() {
                continue;
            }
            let p = (&m.1 - &l.1) / slope;
            if p >= Rational::zero() && p <= Rational::one() {
                breakpoints.push(p);
            }
        }
    }
    breakpoints.sort();
    breakpoints.dedup();
    let value = breakpoints.iter().map(&env).max().expect("nonempty");
    let maximizers: Vec<&Rational> = breakpoints.iter().filter(|p| env(p) == value).collect();
    let argmax = (maximizers[0].clone(), maximizers[maximizers.len() - 1].clone());

    let samples = (0..grid_points)
        .map(|g| {
            let p = g as f64 / (grid_points - 1) as f64;
            let values: Vec<f64> = lines
                .iter()
                .map(|(a1, a2)| rational::to_f64(a1) * p + rational::to_f64(a2) * (1.0 - p))
                .collect();
            let envelope = values.iter().copied().fold(f64::INFINITY, f64::min);
            EnvelopeSample {
                p,
                lines: values,
                envelope,
            }
        })
        .collect();
    Ok(Envelope {
        samples,
        value,
        argmax,
        breakpoints,
    })
}

/// Planar coordinates of a point of `S_3`: `e_1 -> (0,0)`, `e_2 -> (1,0)`,
/// `e_3 -> (1/2, sqrt(3)/2)`.
pub fn ternary_project(x: &[f64]) -> Result<(f64, f64)> {
    if x.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: x.len(),
        });
    }
    Ok((x[1] + x[2] / 2.0, 3f64.sqrt() / 2.0 * x[2]))
}
