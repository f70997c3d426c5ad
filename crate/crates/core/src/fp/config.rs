use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{MixedStrategy, PayoffMatrix};
use crate::rational::{self, Rational};

/// Tie-breaking rule specification, e.g. `uniform` or `onebit:1/4,3/4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TieRule {
    Lowest,
    Highest,
    Uniform,
    OneBit { a: Rational, b: Rational },
    Parity,
}

impl TieRule {
    /// Rules that only make sense for a player with exactly two actions.
    pub fn needs_two_actions(&self) -> bool {
        matches!(self, TieRule::OneBit { .. } | TieRule::Parity)
    }

    pub fn builtin() -> Vec<TieRule> {
        vec![
            TieRule::Lowest,
            TieRule::Highest,
            TieRule::Uniform,
            TieRule::OneBit {
                a: rational::frac(1, 4),
                b: rational::frac(3, 4),
            },
            TieRule::Parity,
        ]
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieRule::Lowest => write!(f, "lowest"),
            TieRule::Highest => write!(f, "highest"),
            TieRule::Uniform => write!(f, "uniform"),
            TieRule::OneBit { a, b } => write!(f, "onebit:{},{}", rational::format(a), rational::format(b)),
            TieRule::Parity => write!(f, "parity"),
        }
    }
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (s, None),
        };
        let rule = match (name, params) {
            ("lowest" | "lowest_index", None) => TieRule::Lowest,
            ("highest" | "highest_index", None) => TieRule::Highest,
            ("uniform" | "uniform_random", None) => TieRule::Uniform,
            ("parity", None) => TieRule::Parity,
            ("onebit" | "one_bit_memory", Some(p)) => {
                let v = rational::parse_list(p)?;
                let [a, b]: [Rational; 2] = v
                    .try_into()
                    .map_err(|_| Error::Config(format!("`{s}`: onebit takes two thresholds a,b")))?;
                if !(a.is_positive() && a < b && b < rational::one()) {
                    return Err(Error::Config(format!("`{s}`: thresholds need 0 < a < b < 1")));
                }
                TieRule::OneBit { a, b }
            }
            _ => return Err(Error::Config(format!("unknown tie-breaking rule `{s}`"))),
        };
        Ok(rule)
    }
}

impl TryFrom<String> for TieRule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TieRule> for String {
    fn from(r: TieRule) -> String {
        r.to_string()
    }
}

/// One fictitious-play run.
#[derive(Clone, Debug)]
pub struct FpConfig {
    pub matrix: PayoffMatrix,
    pub k1: Rational,
    pub k2: Rational,
    /// Prior of Player 1; present iff `k1 > 0`.
    pub x0: Option<MixedStrategy>,
    pub y0: Option<MixedStrategy>,
    pub steps: u64,
    pub tiebreak_p1: TieRule,
    pub tiebreak_p2: TieRule,
    pub seed: u64,
    /// Keep every `s`-th state plus every best-response change.
    pub decimate: Option<u64>,
}

impl FpConfig {
    /// No priors, uniform tie-breaking, seed 0.
    pub fn new(matrix: PayoffMatrix, steps: u64) -> Self {
        Self {
            matrix,
            k1: Rational::zero(),
            k2: Rational::zero(),
            x0: None,
            y0: None,
            steps,
            tiebreak_p1: TieRule::Uniform,
            tiebreak_p2: TieRule::Uniform,
            seed: 0,
            decimate: None,
        }
    }

    pub fn rules(mut self, p1: TieRule, p2: TieRule) -> Self {
        self.tiebreak_p1 = p1;
        self.tiebreak_p2 = p2;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn prior_x(mut self, k1: Rational, x0: MixedStrategy) -> Self {
        self.k1 = k1;
        self.x0 = Some(x0);
        self
    }

    pub fn prior_y(mut self, k2: Rational, y0: MixedStrategy) -> Self {
        self.k2 = k2;
        self.y0 = Some(y0);
        self
    }

    pub fn decimate(mut self, every: u64) -> Self {
        self.decimate = Some(every);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.matrix.n(), self.matrix.m());
        if n > 64 || m > 64 {
            return Err(Error::Config("players are limited to 64 actions".into()));
        }
        check_prior("k1", &self.k1, self.x0.as_ref(), n)?;
        check_prior("k2", &self.k2, self.y0.as_ref(), m)?;
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if self.decimate == Some(0) {
            return Err(Error::Config("decimation step must be positive".into()));
        }
        for (rule, actions) in [(&self.tiebreak_p1, n), (&self.tiebreak_p2, m)] {
            if rule.needs_two_actions() && actions != 2 {
                return Err(Error::IncompatibleRule {
                    rule: rule.to_string(),
                    actions,
                });
            }
        }
        Ok(())
    }
}

fn check_prior(name: &str, k: &Rational, prior: Option<&MixedStrategy>, dim: usize) -> Result<()> {
    if k.is_negative() {
        return Err(Error::Config(format!("{name} must be nonnegative")));
    }
    match prior {
        None if k.is_zero() => Ok(()),
        None => Err(Error::Config(format!("{name} > 0 needs a prior strategy"))),
        Some(_) if k.is_zero() => Err(Error::Config(format!("{name} = 0 means no prior; drop the strategy"))),
        Some(p) if p.dim() != dim => Err(Error::DimensionMismatch {
            expected: dim,
            got: p.dim(),
        }),
        Some(_) => Ok(()),
    }
}
