#![allow(dead_code)]

use std::collections::VecDeque;

use walker_breaker::board::{
    pair_count, play_game, GameRecord, GameState, Goal, MatchConfig, Owner, Player, ReplayStep, Status, Transcript,
};
use walker_breaker::strategy::{RandomBreaker, RandomWalker};

/// Every Walker edge lies in the component of Walker's graph that holds
/// her position.
fn walker_edges_attached(state: &GameState) -> bool {
    let Some(pos) = state.walker_position() else {
        return state.walker_edge_count() == 0;
    };
    let g = state.walker_graph();
    let mut seen = vec![false; state.n()];
    seen[pos] = true;
    let mut queue = VecDeque::from([pos]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    let attached = g.edges().all(|(u, v)| seen[u] && seen[v]);
    attached
}

fn conserved(state: &GameState) -> bool {
    let walker = state.edges_owned_by(Owner::Walker).count();
    let breaker = state.edges_owned_by(Owner::Breaker).count();
    let free = state.edges_owned_by(Owner::Free).count();
    walker == state.walker_edge_count()
        && breaker == state.breaker_edge_count()
        && free == state.free_count()
        && walker + breaker + free == pair_count(state.n())
}

/// Edge conservation, walk integrity and the backtrack guarantee after
/// every move of a transcript, then replay determinism against `final_state`.
pub fn check_transcript(transcript: &Transcript, final_state: &GameState) -> Result<(), String> {
    let mut problem: Option<String> = None;
    let mut position: Option<usize> = None;
    let replayed = transcript
        .replay_with(|state, step| {
            if problem.is_some() {
                return;
            }
            if !conserved(state) {
                problem = Some(format!("round {}: edge counts do not add up", state.round()));
                return;
            }
            if let ReplayStep::Walker(mv) = step {
                let chained = mv.steps.windows(2).all(|w| w[0].1 == w[1].0);
                let continues = position.is_none_or(|p| mv.start() == Some(p));
                if !chained || !continues || mv.steps.len() != state.walker_bias() {
                    problem = Some(format!(
                        "round {}: walker move {:?} is not a walk",
                        state.round(),
                        mv.steps
                    ));
                    return;
                }
                position = mv.end();
                if state.walker_position() != position {
                    problem = Some(format!("round {}: position mismatch", state.round()));
                    return;
                }
            }
            if !walker_edges_attached(state) {
                problem = Some(format!("round {}: walker graph is not attached to her", state.round()));
                return;
            }
            if let Some(p) = state.walker_position() {
                if state.legal_steps(p).is_empty() {
                    problem = Some(format!("round {}: walker stuck at {p}", state.round()));
                }
            }
        })
        .map_err(|e| format!("replay failed: {e}"))?;
    if let Some(p) = problem {
        return Err(p);
    }
    if &replayed != final_state {
        return Err("replayed state differs from the recorded one".into());
    }
    let reread = Transcript::read_jsonl(transcript.to_jsonl_string().as_bytes()).map_err(|e| e.to_string())?;
    if &reread != transcript {
        return Err("transcript changed across a jsonl round trip".into());
    }
    Ok(())
}

/// A random game between the random baselines.
pub fn random_game(n: usize, b: usize, goal: Goal, first: Player, seed: u64) -> GameRecord {
    let cfg = MatchConfig::new(n, b, goal, seed).first(first);
    play_game(&cfg, &mut RandomWalker, &mut RandomBreaker).expect("random strategies only make legal moves")
}

/// All referee properties for one random game, including that a Walker who
/// has moved is never forced to resign.
pub fn check_random_game(n: usize, b: usize, goal: Goal, first: Player, seed: u64) -> Result<(), String> {
    let game = random_game(n, b, goal, first, seed);
    check_transcript(&game.transcript, &game.state)?;
    if game.outcome == Status::WalkerResign {
        return Err(format!("random walker resigned (n={n}, b={b}, seed={seed})"));
    }
    let again = random_game(n, b, goal, first, seed);
    if again.transcript != game.transcript {
        return Err(format!("same seed, different transcript (n={n}, b={b}, seed={seed})"));
    }
    Ok(())
}
