mod common;

use fplab_core::construct::{append_constant_column, lower_envelope, ternary_project};
use fplab_core::diagnostics::dist_to_ne;
use fplab_core::equilibrium::{check_a1, game_value, solve_game};
use fplab_core::fp::tiebreak::build;
use fplab_core::fp::{fp_init, fp_run, fp_step, FpConfig, Player, TieRule};
use fplab_core::matrix::{best_response_col, best_response_row, payoff};
use fplab_core::rational::{frac, int, Rational};
use fplab_core::{MixedStrategy, PayoffMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn game(max_n: usize, max_m: usize) -> impl Strategy<Value = PayoffMatrix> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(entry(), m), n)
            .prop_map(|rows| PayoffMatrix::new(rows).unwrap())
    })
}

/// Games where ties are frequent.
fn tie_game(max_n: usize, max_m: usize) -> impl Strategy<Value = PayoffMatrix> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec((0i64..=2).prop_map(|p| frac(p, 2)), m), n)
            .prop_map(|rows| PayoffMatrix::new(rows).unwrap())
    })
}

fn weights(len: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..=5, len).prop_filter("nonzero", |w| w.iter().any(|&x| x > 0))
}

fn strategy_from(w: &[u32]) -> MixedStrategy {
    let total: u32 = w.iter().sum();
    MixedStrategy::new(w.iter().map(|&x| frac(x as i64, total as i64)).collect()).unwrap()
}

fn game_and_strategies() -> impl Strategy<Value = (PayoffMatrix, Vec<u32>, Vec<u32>)> {
    game(4, 4).prop_flat_map(|a| {
        let (n, m) = (a.n(), a.m());
        (Just(a), weights(n), weights(m))
    })
}

fn affine(a: &PayoffMatrix, alpha: &Rational, beta: &Rational) -> PayoffMatrix {
    PayoffMatrix::new(a.rows().iter().map(|r| r.iter().map(|e| alpha * e + beta).collect()).collect()).unwrap()
}

fn rule() -> impl Strategy<Value = TieRule> {
    prop_oneof![Just(TieRule::Lowest), Just(TieRule::Highest), Just(TieRule::Uniform)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Payoff equals the integer computation after clearing denominators.
    #[test]
    fn payoff_is_exact((a, wx, wy) in game_and_strategies()) {
        let l = a.entries().iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let mut num = BigInt::zero();
        for i in 0..a.n() {
            for j in 0..a.m() {
                let e = a.entry(i, j) * Rational::from_integer(l.clone());
                prop_assert!(e.is_integer());
                num += e.to_integer() * BigInt::from(wx[i]) * BigInt::from(wy[j]);
            }
        }
        let sx: u32 = wx.iter().sum();
        let sy: u32 = wy.iter().sum();
        let den = l * BigInt::from(sx) * BigInt::from(sy);
        let got = payoff(&a, &strategy_from(&wx), &strategy_from(&wy)).unwrap();
        prop_assert_eq!(got, Rational::new(num, den));
    }

    #[test]
    fn best_responses_nonempty_and_in_range((a, wx, wy) in game_and_strategies()) {
        for br in [best_response_row(&a, Some(&strategy_from(&wy))).unwrap(), best_response_row(&a, None).unwrap()] {
            prop_assert!(!br.is_empty() && br.last() < a.n());
        }
        for br in [best_response_col(&a, Some(&strategy_from(&wx))).unwrap(), best_response_col(&a, None).unwrap()] {
            prop_assert!(!br.is_empty() && br.last() < a.m());
        }
    }

    /// Best responses and whole deterministic trajectories are unchanged
    /// under `A -> alpha A + beta`, alpha > 0.
    #[test]
    fn argmax_affine_invariance(
        (a, _wx, wy) in game_and_strategies(),
        alpha in (1i64..=5, 1i64..=3),
        beta in (-4i64..=4, 1i64..=3),
        r1 in prop_oneof![Just(TieRule::Lowest), Just(TieRule::Highest)],
        r2 in prop_oneof![Just(TieRule::Lowest), Just(TieRule::Highest)],
    ) {
        let (alpha, beta) = (frac(alpha.0, alpha.1), frac(beta.0, beta.1));
        let b = affine(&a, &alpha, &beta);
        let y = strategy_from(&wy);
        prop_assert_eq!(best_response_row(&a, Some(&y)).unwrap(), best_response_row(&b, Some(&y)).unwrap());
        let ta = fp_run(&FpConfig::new(a, 60).rules(r1.clone(), r2.clone())).unwrap();
        let tb = fp_run(&FpConfig::new(b, 60).rules(r1, r2)).unwrap();
        for i in 0..ta.len() {
            prop_assert_eq!(ta.record(i), tb.record(i));
        }
    }

    /// Incremental g, h equal the from-scratch products at every step, and
    /// every action lies in its best-response set.
    #[test]
    fn fp_state_stays_consistent(a in tie_game(4, 4), r1 in rule(), r2 in rule(), seed in 0u64..1000) {
        let cfg = FpConfig::new(a.clone(), 150).rules(r1.clone(), r2.clone()).seed(seed);
        let mut st = fp_init(&cfg).unwrap();
        let mut p1 = Player::new(build(&r1), seed, 1);
        let mut p2 = Player::new(build(&r2), seed, 2);
        for _ in 0..150 {
            let rec = fp_step(&mut st, &mut p1, &mut p2).unwrap();
            prop_assert!(rec.br1.contains(rec.p1) && rec.br2.contains(rec.p2));
            prop_assert!(st.is_consistent(&a));
        }
        let x = st.x_hat().unwrap();
        prop_assert_eq!(x.iter().sum::<Rational>(), Rational::one());
        prop_assert!(x.iter().all(|v| !v.is_negative()));
    }

    /// Vertices of NE_x attain the value; rational grid points outside NE_x
    /// guarantee strictly less.
    #[test]
    fn ne_x_vertices_and_grid(a in game(3, 4)) {
        let sol = solve_game(&a).unwrap();
        let guarantee = |x: &[Rational]| (0..a.m()).map(|j| fplab_core::rational::dot(x, &a.column(j))).min().unwrap();
        for v in sol.ne_x.vertices() {
            prop_assert_eq!(&guarantee(v), &sol.value);
        }
        let d = 8i64;
        let pts: Vec<Vec<Rational>> = match a.n() {
            1 => vec![vec![int(1)]],
            2 => (0..=d).map(|i| vec![frac(i, d), frac(d - i, d)]).collect(),
            _ => (0..=d).flat_map(|i| (0..=d - i).map(move |j| vec![frac(i, d), frac(j, d), frac(d - i - j, d)])).collect(),
        };
        for x in pts {
            let inside = sol.ne_x.contains(&x);
            prop_assert_eq!(inside, guarantee(&x) == sol.value);
            prop_assert!(inside || guarantee(&x) < sol.value);
            prop_assert_eq!(dist_to_ne(Some(&x), None, &sol) == 0.0, inside);
        }
    }

    /// Max-min equals min-max.
    #[test]
    fn lp_duality(a in game(4, 4)) {
        let v = game_value(&a);
        let dual = -game_value(&a.transpose().negate());
        prop_assert_eq!(v, dual);
    }

    /// Appending v' 1_n with v' below the value gives an A1 game of value v'.
    #[test]
    fn append_constant_gives_a1(a in game(3, 3).prop_filter("3x3", |a| a.n() == 3 && a.m() == 3), gap in (1i64..=4, 1i64..=4)) {
        let v = game_value(&a);
        let vp = &v - frac(gap.0, gap.1);
        let b = append_constant_column(&a, &vp);
        let sol = solve_game(&b).unwrap();
        prop_assert_eq!(&sol.value, &vp);
        prop_assert!(check_a1(&sol));
    }

    /// The envelope maximizer matches NE_x for two-row games, and sampled
    /// envelope values never exceed the value.
    #[test]
    fn envelope_matches_ne_x(a in game(2, 4).prop_filter("2 rows", |a| a.n() == 2)) {
        let sol = solve_game(&a).unwrap();
        let env = lower_envelope(&a, 33).unwrap();
        prop_assert_eq!(&env.value, &sol.value);
        let (lo, hi) = env.argmax.clone();
        let mut ends = vec![vec![lo.clone(), int(1) - &lo], vec![hi.clone(), int(1) - &hi]];
        ends.sort();
        ends.dedup();
        prop_assert_eq!(ends, sol.ne_x.sorted_vertices());
        let v = fplab_core::rational::to_f64(&sol.value);
        for (g, s) in env.samples.iter().enumerate() {
            prop_assert!((s.p - g as f64 / 32.0).abs() < 1e-15);
            prop_assert!(s.envelope <= v + 1e-12);
            prop_assert!(s.lines.iter().all(|l| s.envelope <= *l));
        }
    }

    #[test]
    fn ternary_projection_is_affine(w in proptest::collection::vec(weights(3), 3), l in 0.0f64..=1.0) {
        let pts: Vec<Vec<f64>> = w.iter().map(|w| {
            let t: u32 = w.iter().sum();
            w.iter().map(|&x| x as f64 / t as f64).collect()
        }).collect();
        let mix: Vec<f64> = (0..3).map(|i| l * pts[0][i] + (1.0 - l) * pts[1][i]).collect();
        let (a, b, c) = (ternary_project(&pts[0]).unwrap(), ternary_project(&pts[1]).unwrap(), ternary_project(&mix).unwrap());
        prop_assert!((c.0 - (l * a.0 + (1.0 - l) * b.0)).abs() < 1e-12);
        prop_assert!((c.1 - (l * a.1 + (1.0 - l) * b.1)).abs() < 1e-12);
    }

    /// Production vertex enumeration equals the subset brute force.
    #[test]
    fn vertex_sets_match_oracle(a in game(4, 4)) {
        let sol = solve_game(&a).unwrap();
        let v = common::brute_value(&a);
        prop_assert_eq!(&sol.value, &v);
        prop_assert_eq!(sol.ne_x.sorted_vertices(), common::brute_ne_x(&a, &v));
        prop_assert_eq!(sol.ne_y.sorted_vertices(), common::brute_ne_y(&a, &v));
    }
}

#[test]
fn append_constant_over_library() {
    for e in fplab_core::library::entries() {
        let v = game_value(&e.matrix);
        let b = append_constant_column(&e.matrix, &(&v - frac(1, 16)));
        assert!(check_a1(&solve_game(&b).unwrap()), "{}", e.name);
    }
}
