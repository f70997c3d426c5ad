//! Recorded fictitious-play runs.
//!
//! Storage is columnar: one entry per recorded state `k` (0 through T, or a
//! decimated subset). Empirical strategies are not stored; they are rebuilt
//! exactly from the integer play counts and the prior on demand.

use num_traits::Zero;

use crate::matrix::{ActionSet, MixedStrategy, PayoffMatrix};
use crate::rational::{self, Rational};

pub const NO_ACTION: u32 = u32::MAX;

const IN_X1: u8 = 1;
const IN_INTR_X1: u8 = 1 << 1;
const X_DEFINED: u8 = 1 << 2;
const Y_DEFINED: u8 = 1 << 3;

#[derive(Clone, Debug)]
pub struct TrajectoryMeta {
    pub matrix: PayoffMatrix,
    pub rule_p1: String,
    pub rule_p2: String,
    pub k1: Rational,
    pub k2: Rational,
    pub x0: Option<MixedStrategy>,
    pub y0: Option<MixedStrategy>,
    pub seed: u64,
    pub steps: u64,
    pub decimate: Option<u64>,
}

/// State `k` as seen by both players, plus the actions chosen at `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateRecord {
    pub k: u64,
    pub p1: Option<usize>,
    pub p2: Option<usize>,
    pub br1: ActionSet,
    pub br2: ActionSet,
    pub in_x1: bool,
    pub in_intr_x1: bool,
    pub counts1: Vec<u32>,
    pub counts2: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub meta: TrajectoryMeta,
    n: usize,
    m: usize,
    prior_u: Vec<Rational>,
    prior_w: Vec<Rational>,
    ks: Vec<u64>,
    p1: Vec<u32>,
    p2: Vec<u32>,
    br1: Vec<u64>,
    br2: Vec<u64>,
    flags: Vec<u8>,
    counts1: Vec<u32>,
    counts2: Vec<u32>,
}

impl Trajectory {
    pub fn new(meta: TrajectoryMeta) -> Self {
        let (n, m) = (meta.matrix.n(), meta.matrix.m());
        let scaled = |k: &Rational, p: &Option<MixedStrategy>, d: usize| match p {
            Some(p) => p.weights().iter().map(|w| w * k).collect(),
            None => vec![Rational::zero(); d],
        };
        let prior_u = scaled(&meta.k1, &meta.x0, n);
        let prior_w = scaled(&meta.k2, &meta.y0, m);
        Self {
            meta,
            n,
            m,
            prior_u,
            prior_w,
            ks: Vec::new(),
            p1: Vec::new(),
            p2: Vec::new(),
            br1: Vec::new(),
            br2: Vec::new(),
            flags: Vec::new(),
            counts1: Vec::new(),
            counts2: Vec::new(),
        }
    }

    pub fn push(&mut self, r: &StateRecord) {
        self.push_raw(
            r.k,
            r.p1,
            r.p2,
            r.br1.to_mask(),
            r.br2.to_mask(),
            r.in_x1,
            r.in_intr_x1,
            &r.counts1,
            &r.counts2,
        );
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn push_raw(
        &mut self,
        k: u64,
        p1: Option<usize>,
        p2: Option<usize>,
        br1: u64,
        br2: u64,
        in_x1: bool,
        in_intr_x1: bool,
        counts1: &[u32],
        counts2: &[u32],
    ) {
        debug_assert_eq!(counts1.len(), self.n);
        debug_assert_eq!(counts2.len(), self.m);
        let x_defined = k > 0 || !self.meta.k1.is_zero();
        let y_defined = k > 0 || !self.meta.k2.is_zero();
        let mut f = 0;
        for (on, bit) in [(in_x1, IN_X1), (in_intr_x1, IN_INTR_X1), (x_defined, X_DEFINED), (y_defined, Y_DEFINED)] {
            if on {
                f |= bit;
            }
        }
        self.ks.push(k);
        self.p1.push(p1.map_or(NO_ACTION, |a| a as u32));
        self.p2.push(p2.map_or(NO_ACTION, |a| a as u32));
        self.br1.push(br1);
        self.br2.push(br2);
        self.flags.push(f);
        self.counts1.extend_from_slice(counts1);
        self.counts2.extend_from_slice(counts2);
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self, i: usize) -> u64 {
        self.ks[i]
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    /// Record index of state `k`, if it was kept.
    pub fn index_of(&self, k: u64) -> Option<usize> {
        self.ks.binary_search(&k).ok()
    }

    pub fn p1_action(&self, i: usize) -> Option<usize> {
        (self.p1[i] != NO_ACTION).then_some(self.p1[i] as usize)
    }

    pub fn p2_action(&self, i: usize) -> Option<usize> {
        (self.p2[i] != NO_ACTION).then_some(self.p2[i] as usize)
    }

    pub fn br1(&self, i: usize) -> ActionSet {
        ActionSet::from_mask(self.br1[i])
    }

    pub fn br2(&self, i: usize) -> ActionSet {
        ActionSet::from_mask(self.br2[i])
    }

    pub fn br1_mask(&self, i: usize) -> u64 {
        self.br1[i]
    }

    pub fn br2_mask(&self, i: usize) -> u64 {
        self.br2[i]
    }

    /// `ŷ(k) in Y_j`, i.e. row `j` is a best response of Player 1.
    pub fn in_y(&self, i: usize, j: usize) -> bool {
        self.flags[i] & Y_DEFINED != 0 && self.br1[i] >> j & 1 == 1
    }

    pub fn in_x1(&self, i: usize) -> bool {
        self.flags[i] & IN_X1 != 0
    }

    pub fn in_intr_x1(&self, i: usize) -> bool {
        self.flags[i] & IN_INTR_X1 != 0
    }

    pub fn x_defined(&self, i: usize) -> bool {
        self.flags[i] & X_DEFINED != 0
    }

    pub fn y_defined(&self, i: usize) -> bool {
        self.flags[i] & Y_DEFINED != 0
    }

    pub fn counts1(&self, i: usize) -> &[u32] {
        &self.counts1[i * self.n..(i + 1) * self.n]
    }

    pub fn counts2(&self, i: usize) -> &[u32] {
        &self.counts2[i * self.m..(i + 1) * self.m]
    }

    /// Exact `x̂(k)`; `None` in the zero state.
    pub fn x_hat(&self, i: usize) -> Option<Vec<Rational>> {
        empirical(&self.prior_u, self.counts1(i), self.ks[i], &self.meta.k1)
    }

    pub fn y_hat(&self, i: usize) -> Option<Vec<Rational>> {
        empirical(&self.prior_w, self.counts2(i), self.ks[i], &self.meta.k2)
    }

    pub fn x_hat_f64(&self, i: usize) -> Option<Vec<f64>> {
        empirical_f64(&self.prior_u, self.counts1(i), self.ks[i], &self.meta.k1)
    }

    pub fn y_hat_f64(&self, i: usize) -> Option<Vec<f64>> {
        empirical_f64(&self.prior_w, self.counts2(i), self.ks[i], &self.meta.k2)
    }

    pub fn record(&self, i: usize) -> StateRecord {
        StateRecord {
            k: self.ks[i],
            p1: self.p1_action(i),
            p2: self.p2_action(i),
            br1: self.br1(i),
            br2: self.br2(i),
            in_x1: self.in_x1(i),
            in_intr_x1: self.in_intr_x1(i),
            counts1: self.counts1(i).to_vec(),
            counts2: self.counts2(i).to_vec(),
        }
    }
}

fn empirical(prior: &[Rational], counts: &[u32], k: u64, kp: &Rational) -> Option<Vec<Rational>> {
    let total = kp + rational::int(k as i64);
    if total.is_zero() {
        return None;
    }
    Some(
        prior
            .iter()
            .zip(counts)
            .map(|(p, &c)| (p + rational::int(i64::from(c))) / &total)
            .collect(),
    )
}

fn empirical_f64(prior: &[Rational], counts: &[u32], k: u64, kp: &Rational) -> Option<Vec<f64>> {
    let total = rational::to_f64(kp) + k as f64;
    if total == 0.0 {
        return None;
    }
    Some(
        prior
            .iter()
            .zip(counts)
            .map(|(p, &c)| (rational::to_f64(p) + f64::from(c)) / total)
            .collect(),
    )
}
