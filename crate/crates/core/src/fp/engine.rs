//! Discrete-time simultaneous fictitious play.
//!
//! The state is held in scaled integers: `A` is multiplied by the lcm of its
//! denominators and the cumulative vectors by the lcm of the prior
//! denominators, so `u = (k + k1) x̂(k)` and `w = (k + k2) ŷ(k)` as well as
//! `g = A^T u` and `h = A w` are exact `i128`s. Positive scaling leaves every
//! argmax and argmin unchanged. Overflow aborts the run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::equilibrium;
use crate::error::{Error, Result};
use crate::matrix::{is_constant_column, ActionSet, PayoffMatrix};
use crate::polytope::{Halfspace, Polytope};
use crate::rational::Rational;

use super::config::FpConfig;
use super::tiebreak::{self, Frequency, TieBreaker, TieContext};
use super::trajectory::{Trajectory, TrajectoryMeta};

/// A tie-breaking rule with its private random stream.
pub struct Player {
    pub rule: Box<dyn TieBreaker>,
    rng: ChaCha8Rng,
}

impl Player {
    /// Player `p` (1 or 2) draws from stream `p` of the seeded generator.
    pub fn new(rule: Box<dyn TieBreaker>, seed: u64, player: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(player);
        Self { rule, rng }
    }
}

#[derive(Clone, Debug)]
pub struct FpState {
    k: u64,
    n: usize,
    m: usize,
    // A * d_a, row-major
    a_int: Vec<i128>,
    d_a: i128,
    // per-play increment of u and w
    scale: i128,
    u: Vec<i128>,
    w: Vec<i128>,
    u_total: i128,
    w_total: i128,
    g: Vec<i128>,
    h: Vec<i128>,
    counts1: Vec<u32>,
    counts2: Vec<u32>,
}

/// What happened at step `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub k: u64,
    pub p1: usize,
    pub p2: usize,
    pub br1: ActionSet,
    pub br2: ActionSet,
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or(Error::Overflow(0))
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl FpState {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn br1(&self) -> ActionSet {
        crate::matrix::argmax_set(&self.h)
    }

    pub fn br2(&self) -> ActionSet {
        crate::matrix::argmin_set(&self.g)
    }

    pub fn counts1(&self) -> &[u32] {
        &self.counts1
    }

    pub fn counts2(&self) -> &[u32] {
        &self.counts2
    }

    pub(crate) fn u_scaled(&self) -> &[i128] {
        &self.u
    }

    pub(crate) fn g_scaled(&self) -> &[i128] {
        &self.g
    }

    fn exact(&self, v: &[i128], denom: i128) -> Vec<Rational> {
        v.iter()
            .map(|&x| Rational::new(BigInt::from(x), BigInt::from(denom)))
            .collect()
    }

    /// `u = (k + k1) x̂(k)`.
    pub fn u(&self) -> Vec<Rational> {
        self.exact(&self.u, self.scale)
    }

    pub fn w(&self) -> Vec<Rational> {
        self.exact(&self.w, self.scale)
    }

    /// `g = A^T u`.
    pub fn g(&self) -> Vec<Rational> {
        self.exact(&self.g, self.scale * self.d_a)
    }

    /// `h = A w`.
    pub fn h(&self) -> Vec<Rational> {
        self.exact(&self.h, self.scale * self.d_a)
    }

    pub fn x_hat(&self) -> Option<Vec<Rational>> {
        (self.u_total != 0).then(|| self.exact(&self.u, self.u_total))
    }

    pub fn y_hat(&self) -> Option<Vec<Rational>> {
        (self.w_total != 0).then(|| self.exact(&self.w, self.w_total))
    }

    /// Recomputes `g` and `h` from `u`, `w` and the exact matrix.
    pub fn is_consistent(&self, a: &PayoffMatrix) -> bool {
        a.times_row_vector(&self.u()) == self.g() && a.times_col_vector(&self.w()) == self.h()
    }

    fn frequency1(&self) -> Frequency<'_> {
        Frequency {
            weights: &self.u,
            total: self.u_total,
        }
    }

    fn frequency2(&self) -> Frequency<'_> {
        Frequency {
            weights: &self.w,
            total: self.w_total,
        }
    }

    fn apply(&mut self, p: usize, q: usize) -> Option<()> {
        let s = self.scale;
        self.u[p] = self.u[p].checked_add(s)?;
        self.w[q] = self.w[q].checked_add(s)?;
        self.u_total = self.u_total.checked_add(s)?;
        self.w_total = self.w_total.checked_add(s)?;
        for j in 0..self.m {
            let d = self.a_int[p * self.m + j].checked_mul(s)?;
            self.g[j] = self.g[j].checked_add(d)?;
        }
        for i in 0..self.n {
            let d = self.a_int[i * self.m + q].checked_mul(s)?;
            self.h[i] = self.h[i].checked_add(d)?;
        }
        self.counts1[p] = self.counts1[p].checked_add(1)?;
        self.counts2[q] = self.counts2[q].checked_add(1)?;
        self.k += 1;
        Some(())
    }
}

pub fn fp_init(config: &FpConfig) -> Result<FpState> {
    config.validate()?;
    let a = &config.matrix;
    let (n, m) = (a.n(), a.m());
    let d_a = lcm_of_denominators(a.entries().iter());
    let a_int = a
        .entries()
        .iter()
        .map(|e| to_i128(&(e * Rational::from_integer(d_a.clone())).to_integer()))
        .collect::<Result<Vec<_>>>()?;

    let prior = |k: &Rational, p: Option<&crate::matrix::MixedStrategy>, dim: usize| match p {
        Some(p) => p.weights().iter().map(|x| x * k).collect::<Vec<_>>(),
        None => vec![Rational::zero(); dim],
    };
    let u0 = prior(&config.k1, config.x0.as_ref(), n);
    let w0 = prior(&config.k2, config.y0.as_ref(), m);
    let scale_big = lcm_of_denominators(u0.iter().chain(&w0));
    let scale_r = Rational::from_integer(scale_big.clone());
    let scaled = |v: &[Rational]| {
        v.iter()
            .map(|x| to_i128(&(x * &scale_r).to_integer()))
            .collect::<Result<Vec<_>>>()
    };
    let u = scaled(&u0)?;
    let w = scaled(&w0)?;
    let overflow = || Error::Overflow(0);
    let mut g = vec![0i128; m];
    let mut h = vec![0i128; n];
    for i in 0..n {
        for j in 0..m {
            let e = a_int[i * m + j];
            g[j] = e.checked_mul(u[i]).and_then(|d| g[j].checked_add(d)).ok_or_else(overflow)?;
            h[i] = e.checked_mul(w[j]).and_then(|d| h[i].checked_add(d)).ok_or_else(overflow)?;
        }
    }
    Ok(FpState {
        k: 0,
        n,
        m,
        a_int,
        d_a: to_i128(&d_a)?,
        scale: to_i128(&scale_big)?,
        u_total: u.iter().sum(),
        w_total: w.iter().sum(),
        u,
        w,
        g,
        h,
        counts1: vec![0; n],
        counts2: vec![0; m],
    })
}

/// Both players respond to the step-`k` state, then both updates apply.
pub fn fp_step(state: &mut FpState, p1: &mut Player, p2: &mut Player) -> Result<StepRecord> {
    let br1 = state.br1();
    let br2 = state.br2();
    let p = choose(state, p1, &br1, true)?;
    let q = choose(state, p2, &br2, false)?;
    let k = state.k;
    state.apply(p, q).ok_or(Error::Overflow(k))?;
    Ok(StepRecord { k, p1: p, p2: q, br1, br2 })
}

fn choose(state: &FpState, player: &mut Player, best: &ActionSet, first: bool) -> Result<usize> {
    let (own, opponent) = if first {
        (state.frequency1(), state.frequency2())
    } else {
        (state.frequency2(), state.frequency1())
    };
    let ctx = TieContext {
        step: state.k,
        own,
        opponent,
        best,
    };
    let a = player.rule.choose(&ctx, &mut player.rng);
    if !best.contains(a) {
        return Err(Error::TieBreakViolation {
            rule: player.rule.name(),
            step: state.k,
            action: a + 1,
            set: best.to_string(),
        });
    }
    Ok(a)
}

/// Region data for the `in_X1` / `in_intr_X1` flags.
struct X1Geometry {
    full_dimensional: bool,
    // columns j with c_j - c_1 not constant
    moving: Vec<usize>,
}

impl X1Geometry {
    fn new(a: &PayoffMatrix) -> Self {
        let c1 = a.column(0);
        let diffs: Vec<Vec<Rational>> = (0..a.m())
            .map(|j| a.column(j).iter().zip(&c1).map(|(x, y)| x - y).collect())
            .collect();
        let moving = (1..a.m()).filter(|&j| is_constant_column(&diffs[j]).is_none()).collect();
        let full_dimensional = if equilibrium::check_cap(a, equilibrium::DEFAULT_MAX_DIM).is_ok() {
            // X_1 = {x in S_n : (c_j - c_1) . x >= 0}
            let ineqs = diffs[1..].iter().map(|d| Halfspace::ge(d.clone(), Rational::zero())).collect();
            Polytope::in_simplex(a.n(), ineqs).is_full_dimensional()
        } else {
            false
        };
        Self {
            full_dimensional,
            moving,
        }
    }

    fn flags(&self, state: &FpState, br2_mask: u64) -> (bool, bool) {
        if state.u_total == 0 {
            return (false, false);
        }
        let in_x1 = br2_mask & 1 == 1;
        let g = state.g_scaled();
        let interior = in_x1
            && self.full_dimensional
            && state.u_scaled().iter().all(|&x| x > 0)
            && self.moving.iter().all(|&j| g[j] > g[0]);
        (in_x1, interior)
    }
}

pub fn fp_run(config: &FpConfig) -> Result<Trajectory> {
    let p1 = Player::new(tiebreak::build(&config.tiebreak_p1), config.seed, 1);
    let p2 = Player::new(tiebreak::build(&config.tiebreak_p2), config.seed, 2);
    fp_run_with(config, p1, p2)
}

/// Runs `config.steps` steps with caller-supplied players.
pub fn fp_run_with(config: &FpConfig, mut p1: Player, mut p2: Player) -> Result<Trajectory> {
    let mut state = fp_init(config)?;
    if config.steps >= u64::from(u32::MAX) {
        return Err(Error::Config("steps must fit in 32 bits".into()));
    }
    let geometry = X1Geometry::new(&config.matrix);
    let mut traj = Trajectory::new(TrajectoryMeta {
        matrix: config.matrix.clone(),
        rule_p1: p1.rule.name(),
        rule_p2: p2.rule.name(),
        k1: config.k1.clone(),
        k2: config.k2.clone(),
        x0: config.x0.clone(),
        y0: config.y0.clone(),
        seed: config.seed,
        steps: config.steps,
        decimate: config.decimate,
    });
    let mut prev_masks: Option<(u64, u64)> = None;
    for _ in 0..config.steps {
        let c1 = state.counts1.clone();
        let c2 = state.counts2.clone();
        let (fx, fi) = {
            let mask = state.br2().to_mask();
            geometry.flags(&state, mask)
        };
        let rec = fp_step(&mut state, &mut p1, &mut p2)?;
        let masks = (rec.br1.to_mask(), rec.br2.to_mask());
        let keep = match config.decimate {
            None => true,
            Some(s) => rec.k % s == 0 || prev_masks != Some(masks),
        };
        prev_masks = Some(masks);
        if keep {
            traj.push_raw(rec.k, Some(rec.p1), Some(rec.p2), masks.0, masks.1, fx, fi, &c1, &c2);
        }
    }
    let (b1, b2) = (state.br1().to_mask(), state.br2().to_mask());
    let (fx, fi) = geometry.flags(&state, b2);
    traj.push_raw(state.k, None, None, b1, b2, fx, fi, &state.counts1, &state.counts2);
    Ok(traj)
}
