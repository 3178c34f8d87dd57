//! Baseline opponents.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{pad_lowest, BreakerStrategy, Ctx, WalkerDecision, WalkerStrategy};
use crate::board::{BreakerMove, Edge, GameState, Vertex, WalkerMove};

/// Claims `b` free edges uniformly at random.
pub struct RandomBreaker;

impl BreakerStrategy for RandomBreaker {
    fn name(&self) -> &str {
        "breaker.random"
    }

    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> BreakerMove {
        let want = state.breaker_bias().min(state.free_count());
        let total = state.total_pairs();
        if state.free_count() * 4 >= total {
            let mut picked: Vec<Edge> = Vec::with_capacity(want);
            while picked.len() < want {
                let e = Edge::from_index(ctx.rng.gen_range(0..total));
                if state.is_free(e.lo(), e.hi()) && !picked.contains(&e) {
                    picked.push(e);
                }
            }
            BreakerMove::new(picked)
        } else {
            let free: Vec<Edge> = state.edges_owned_by(crate::board::Owner::Free).collect();
            BreakerMove::new(free.choose_multiple(ctx.rng, want).copied().collect())
        }
    }
}

/// Claims free edges at the unvisited vertex of largest Breaker degree.
#[derive(Default)]
pub struct GreedyStarBreaker {
    cursor: usize,
}

impl BreakerStrategy for GreedyStarBreaker {
    fn name(&self) -> &str {
        "breaker.greedy_star"
    }

    fn choose(&mut self, state: &GameState, _ctx: &mut Ctx<'_>) -> BreakerMove {
        let n = state.n();
        let want = state.breaker_bias().min(state.free_count());
        let mut picked = Vec::with_capacity(want);
        let mut targets: Vec<Vertex> = state.unvisited().filter(|&v| state.free_degree(v) > 0).collect();
        targets.sort_by_key(|&v| (std::cmp::Reverse(state.breaker_degree(v)), v));
        'outer: for v in targets {
            for x in 0..n {
                if picked.len() == want {
                    break 'outer;
                }
                if x != v && state.is_free(v, x) {
                    let e = Edge::new(v, x);
                    if !picked.contains(&e) {
                        picked.push(e);
                    }
                }
            }
        }
        pad_lowest(state, &mut picked, &mut self.cursor);
        BreakerMove::new(picked)
    }
}

/// Walks uniformly at random over the legal steps.
pub struct RandomWalker;

impl WalkerStrategy for RandomWalker {
    fn name(&self) -> &str {
        "walker.random"
    }

    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let start = match state.walker_position() {
            Some(v) => v,
            None => {
                let starts: Vec<Vertex> = (0..state.n()).filter(|&v| !state.legal_steps(v).is_empty()).collect();
                match starts.choose(ctx.rng) {
                    Some(&v) => v,
                    None => return WalkerDecision::Resign("no legal first step".into()),
                }
            }
        };
        let mut path = vec![start];
        for _ in 0..state.walker_bias() {
            let cur = *path.last().expect("non-empty");
            let options = state.legal_steps(cur);
            match options.choose(ctx.rng) {
                Some(&x) => path.push(x),
                None => return WalkerDecision::Resign(format!("stuck at {cur}")),
            }
        }
        WalkerDecision::Move(WalkerMove::path(&path))
    }
}
