//! Tie-breaking rules.
//!
//! A rule is called at every step, also when the best-response set is a
//! singleton, so stateful rules see every state. Whatever it returns must lie
//! in the supplied set; the engine aborts the run otherwise.

use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::ActionSet;
use crate::rational::Rational;

use super::config::TieRule;

/// A player's cumulative play `(k + k_i) x̂(k)`, up to a common positive scale.
#[derive(Clone, Copy, Debug)]
pub struct Frequency<'a> {
    pub weights: &'a [i128],
    pub total: i128,
}

impl Frequency<'_> {
    /// The zero state (no prior, nothing played yet).
    pub fn is_zero(&self) -> bool {
        self.total == 0
    }

    /// `[x̂]_i` as a reduced fraction `(p, q)`, `None` in the zero state.
    pub fn coordinate(&self, i: usize) -> Option<(i128, i128)> {
        if self.total == 0 {
            return None;
        }
        let g = self.weights[i].gcd(&self.total);
        Some((self.weights[i] / g, self.total / g))
    }

    pub fn coordinate_exact(&self, i: usize) -> Option<Rational> {
        self.coordinate(i)
            .map(|(p, q)| Rational::new(p.into(), q.into()))
    }
}

pub struct TieContext<'a> {
    pub step: u64,
    pub own: Frequency<'a>,
    pub opponent: Frequency<'a>,
    pub best: &'a ActionSet,
}

pub trait TieBreaker: Send {
    fn name(&self) -> String;

    fn choose(&mut self, ctx: &TieContext<'_>, rng: &mut ChaCha8Rng) -> usize;
}

pub struct Lowest;

impl TieBreaker for Lowest {
    fn name(&self) -> String {
        "lowest".into()
    }

    fn choose(&mut self, ctx: &TieContext<'_>, _: &mut ChaCha8Rng) -> usize {
        ctx.best.first()
    }
}

pub struct Highest;

impl TieBreaker for Highest {
    fn name(&self) -> String {
        "highest".into()
    }

    fn choose(&mut self, ctx: &TieContext<'_>, _: &mut ChaCha8Rng) -> usize {
        ctx.best.last()
    }
}

/// Uniform over the exact best-response set; draws only on real ties.
pub struct Uniform;

impl TieBreaker for Uniform {
    fn name(&self) -> String {
        "uniform".into()
    }

    fn choose(&mut self, ctx: &TieContext<'_>, rng: &mut ChaCha8Rng) -> usize {
        let set = ctx.best.as_slice();
        if set.len() == 1 {
            set[0]
        } else {
            set[rng.gen_range(0..set.len())]
        }
    }
}

/// One-bit memory on a 2-action player: the bit flips to 0 once `[x̂]_2 >= b`
/// and back to 1 once `[x̂]_2 <= a`; bit 0 plays action 1, bit 1 plays action 2.
pub struct OneBitMemory {
    a: Rational,
    b: Rational,
    memory: u8,
}

impl OneBitMemory {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b, memory: 1 }
    }

    pub fn memory(&self) -> u8 {
        self.memory
    }
}

impl TieBreaker for OneBitMemory {
    fn name(&self) -> String {
        TieRule::OneBit {
            a: self.a.clone(),
            b: self.b.clone(),
        }
        .to_string()
    }

    fn choose(&mut self, ctx: &TieContext<'_>, _: &mut ChaCha8Rng) -> usize {
        if let Some(x2) = ctx.own.coordinate_exact(1) {
            if x2 >= self.b {
                self.memory = 0;
            } else if x2 <= self.a {
                self.memory = 1;
            }
        }
        let want = usize::from(self.memory);
        if ctx.best.contains(want) {
            want
        } else {
            ctx.best.first()
        }
    }
}

/// Memoryless rule on a 2-action player driven by the parity of the reduced
/// numerator of `[x̂]_2`: odd plays action 2, even plays action 1, with
/// `[x̂]_2 = 0` (and the zero state) playing action 2 and `[x̂]_2 = 1` action 1.
pub struct Parity;

impl Parity {
    /// 0-based action for a given reduced `[x̂]_2 = p/q`, or the zero state.
    pub fn action_for(coord: Option<(i128, i128)>) -> usize {
        match coord {
            None => 1,
            Some((0, _)) => 1,
            Some((p, q)) if p == q => 0,
            Some((p, _)) if p % 2 != 0 => 1,
            Some(_) => 0,
        }
    }
}

impl TieBreaker for Parity {
    fn name(&self) -> String {
        "parity".into()
    }

    fn choose(&mut self, ctx: &TieContext<'_>, _: &mut ChaCha8Rng) -> usize {
        if ctx.best.len() == 1 {
            return ctx.best.first();
        }
        Parity::action_for(ctx.own.coordinate(1))
    }
}

pub fn build(rule: &TieRule) -> Box<dyn TieBreaker> {
    match rule {
        TieRule::Lowest => Box::new(Lowest),
        TieRule::Highest => Box::new(Highest),
        TieRule::Uniform => Box::new(Uniform),
        TieRule::OneBit { a, b } => Box::new(OneBitMemory::new(a.clone(), b.clone())),
        TieRule::Parity => Box::new(Parity),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use rand::SeedableRng;

    fn ctx<'a>(own: &'a [i128], best: &'a ActionSet) -> TieContext<'a> {
        TieContext {
            step: own.iter().sum::<i128>() as u64,
            own: Frequency {
                weights: own,
                total: own.iter().sum(),
            },
            opponent: Frequency {
                weights: &[],
                total: 0,
            },
            best,
        }
    }

    #[test]
    fn parity_cases() {
        let both = ActionSet::full(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut p = Parity;
        // [x]_2 = 1/2: odd numerator, action 2
        assert_eq!(p.choose(&ctx(&[1, 1], &both), &mut rng), 1);
        // [x]_2 = 2/3: even numerator, action 1
        assert_eq!(p.choose(&ctx(&[1, 2], &both), &mut rng), 0);
        // 4/6 reduces to 2/3
        assert_eq!(p.choose(&ctx(&[2, 4], &both), &mut rng), 0);
        // 3/6 reduces to 1/2
        assert_eq!(p.choose(&ctx(&[3, 3], &both), &mut rng), 1);
        assert_eq!(p.choose(&ctx(&[0, 0], &both), &mut rng), 1);
        assert_eq!(p.choose(&ctx(&[1, 0], &both), &mut rng), 1);
        assert_eq!(p.choose(&ctx(&[0, 1], &both), &mut rng), 0);
        assert_eq!(p.choose(&ctx(&[1, 1], &ActionSet::singleton(0)), &mut rng), 0);
    }

    #[test]
    fn one_bit_memory_flips_at_thresholds() {
        let both = ActionSet::full(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut r = OneBitMemory::new(frac(1, 4), frac(3, 4));
        assert_eq!(r.choose(&ctx(&[0, 0], &both), &mut rng), 1);
        assert_eq!(r.choose(&ctx(&[1, 2], &both), &mut rng), 1);
        assert_eq!(r.choose(&ctx(&[1, 3], &both), &mut rng), 0);
        assert_eq!(r.memory(), 0);
        assert_eq!(r.choose(&ctx(&[2, 3], &both), &mut rng), 0);
        assert_eq!(r.choose(&ctx(&[3, 1], &both), &mut rng), 1);
        assert_eq!(r.memory(), 1);
    }

    #[test]
    fn uniform_stays_in_set_and_is_reproducible() {
        let set = ActionSet::new(vec![1, 3, 4], 5).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| Uniform.choose(&ctx(&[1, 1], &set), &mut rng))
                .collect::<Vec<_>>()
        };
        let a = draw(7);
        assert!(a.iter().all(|&i| set.contains(i)));
        assert_eq!(a, draw(7));
        assert!([1, 3, 4].iter().all(|i| a.contains(i)));
    }
}
