use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walker_breaker::boxgame::{
    boxmaker_wins, exact_box_game_winner, f, f_bounds, f_row, near_equal_sizes, play_box_game, BoxBreakerHeuristic,
    BoxError, BoxPlayer, MinBoxState,
};

#[test]
fn f_is_monotone_in_both_arguments() {
    for a in 1..=12 {
        let row = f_row(300, a).unwrap();
        assert!(row.windows(2).all(|w| w[0] <= w[1]), "a={a}");
        let next = f_row(300, a + 1).unwrap();
        assert!(row.iter().zip(&next).all(|(x, y)| x <= y), "a={a}");
    }
}

#[test]
fn f_rejects_zero_arguments() {
    assert!(matches!(f(0, 3), Err(BoxError::InvalidArgument { .. })));
    assert!(matches!(f(3, 0), Err(BoxError::InvalidArgument { .. })));
}

#[test]
fn oracle_agrees_with_criterion_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..400 {
        let k = rng.gen_range(1..=4u64);
        let a = rng.gen_range(1..=3u64);
        let t = rng.gen_range(k..=14u64);
        let even = exact_box_game_winner(&near_equal_sizes(k, t), a).unwrap();
        assert_eq!(even == BoxPlayer::Maker, boxmaker_wins(k, t, a), "k={k} t={t} a={a}");
    }
}

#[test]
fn oracle_refuses_large_instances() {
    assert!(matches!(
        exact_box_game_winner(&[10, 10], 2),
        Err(BoxError::OracleBudget(_))
    ));
}

#[test]
fn strategy_beats_every_heuristic_below_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 1..=12u64 {
        for a in 1..=6u64 {
            let t = f(k, a).unwrap() as u64;
            if t < k {
                continue;
            }
            for h in BoxBreakerHeuristic::ALL {
                assert_eq!(
                    play_box_game(&near_equal_sizes(k, t), a, h, &mut rng),
                    BoxPlayer::Maker,
                    "k={k} a={a} {h:?}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn bounds_bracket_f(k in 2u64..200, a in 1u64..40) {
        let (lo, hi) = f_bounds(k, a);
        let v = num_bigint::BigInt::from(f(k, a).unwrap());
        let v = num_rational::BigRational::from_integer(v);
        prop_assert!(lo <= v && v <= hi);
    }

    #[test]
    fn minbox_danger_stays_bounded(seed in any::<u64>(), budget in 1u64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = MinBoxState::new(30, 120, Ratio::new(1, 10), budget);
        let bound = s.danger_bound();
        for _ in 0..2_000 {
            for _ in 0..budget {
                let open: Vec<usize> = (0..s.len()).filter(|&i| s.free_elements(i) > 0).collect();
                if open.is_empty() {
                    break;
                }
                let i = open[rng.gen_range(0..open.len())];
                s.breaker_apply(&[(i, 1)]).unwrap();
            }
            if let Some(d) = s.max_active_danger() {
                prop_assert!(d as f64 <= bound, "danger {} above {}", d, bound);
            }
            if s.maker_move().is_err() {
                break;
            }
        }
    }
}
