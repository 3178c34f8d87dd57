mod common;

use proptest::prelude::*;
use walker_breaker::board::{
    play_game, BreakerMove, Edge, GameState, Goal, MatchConfig, MoveError, Owner, Player, Status, WalkerMove,
};
use walker_breaker::strategy::{breaker_by_name, walker_by_name, ConnectivityWalker, RandomBreaker, StrategyParams};

fn goal_strategy() -> impl Strategy<Value = Goal> {
    prop_oneof![Just(Goal::Connectivity), Just(Goal::HamiltonCycle)]
}

fn first_strategy() -> impl Strategy<Value = Player> {
    prop_oneof![Just(Player::Walker), Just(Player::Breaker)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_games_keep_referee_invariants(
        n in 3usize..14,
        b in 1usize..6,
        goal in goal_strategy(),
        first in first_strategy(),
        seed in any::<u64>(),
    ) {
        if let Err(e) = common::check_random_game(n, b, goal, first, seed) {
            return Err(TestCaseError::fail(e));
        }
    }

    #[test]
    fn every_strategy_pair_replays(
        n in 6usize..24,
        b in 1usize..4,
        wi in 0usize..2,
        bi in 0usize..3,
        seed in any::<u64>(),
    ) {
        let walkers = ["walker.connectivity", "walker.random"];
        let breakers = ["breaker.random", "breaker.greedy_star", "breaker.isolation"];
        let params = StrategyParams::new(n, b);
        let mut w = walker_by_name(walkers[wi], &params).unwrap();
        let mut br = breaker_by_name(breakers[bi], &params).unwrap();
        let cfg = MatchConfig::new(n, b, Goal::Connectivity, seed);
        let game = play_game(&cfg, w.as_mut(), br.as_mut()).unwrap();
        prop_assert_ne!(game.outcome, Status::Running);
        if let Err(e) = common::check_transcript(&game.transcript, &game.state) {
            return Err(TestCaseError::fail(e));
        }
    }
}

#[test]
fn tiny_connectivity_game_is_won() {
    for seed in 0..500 {
        let cfg = MatchConfig::new(4, 1, Goal::Connectivity, seed);
        let params = StrategyParams::new(4, 1);
        let game = play_game(&cfg, &mut ConnectivityWalker::new(&params), &mut RandomBreaker).unwrap();
        assert_eq!(game.outcome, Status::WalkerWin, "seed {seed}");
        assert!(game.state.round() <= 2);
    }
}

#[test]
fn walker_may_not_cross_breaker_edges() {
    let mut s = GameState::new(5, 1, Player::Breaker).unwrap();
    s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(0, 1)])).unwrap();
    assert!(s.apply_walker_move(&WalkerMove::path(&[0, 1, 2])).is_err());
    assert_eq!(s.walker_edge_count(), 0);
    s.apply_walker_move(&WalkerMove::path(&[0, 2, 0])).unwrap();
    assert_eq!(s.owner(0, 2), Owner::Walker);
    assert_eq!(s.walker_position(), Some(0));
}

#[test]
fn moves_out_of_turn_are_rejected() {
    let mut s = GameState::new(5, 2, Player::Breaker).unwrap();
    assert!(matches!(
        s.apply_walker_move(&WalkerMove::path(&[0, 1, 2])),
        Err(MoveError::TurnError(Player::Walker))
    ));
}
