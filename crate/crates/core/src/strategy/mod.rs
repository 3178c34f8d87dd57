//! Strategies for both sides behind one decision interface.
//!
//! Names used in configs and on the command line:
//!
//! | name                   | side    |
//! |------------------------|---------|
//! | `walker.connectivity`  | Walker  |
//! | `walker.hamiltonicity` | Walker  |
//! | `walker.random`        | Walker  |
//! | `breaker.isolation`    | Breaker |
//! | `breaker.random`       | Breaker |
//! | `breaker.greedy_star`  | Breaker |
//!
//! Every tie is broken towards the lowest vertex index.

mod baselines;
mod connectivity;
mod hamiltonicity;
mod isolation;

pub use baselines::{GreedyStarBreaker, RandomBreaker, RandomWalker};
pub use connectivity::ConnectivityWalker;
pub use hamiltonicity::{ExposureStage, ExposureState, HamiltonicityWalker};
pub use isolation::{IsolationBreaker, IsolationStage};

use num_rational::Ratio;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::audit::{AuditEvent, AuditMode};
use crate::board::{Annotation, BreakerMove, Edge, GameState, Vertex, WalkerMove};

/// What a strategy gets besides the board: its random stream and a place to
/// put annotations for the current round.
pub struct Ctx<'a> {
    pub rng: &'a mut ChaCha8Rng,
    notes: &'a mut Vec<Annotation>,
}

impl<'a> Ctx<'a> {
    pub fn new(rng: &'a mut ChaCha8Rng, notes: &'a mut Vec<Annotation>) -> Self {
        Ctx { rng, notes }
    }

    pub fn note(&mut self, a: Annotation) {
        self.notes.push(a);
    }

    pub fn audit(&mut self, e: AuditEvent) {
        self.notes.push(Annotation::Audit(e));
    }

    pub fn text(&mut self, text: impl Into<String>) {
        self.notes.push(Annotation::Note { text: text.into() });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkerDecision {
    Move(WalkerMove),
    Resign(String),
}

pub trait WalkerStrategy: Send {
    fn name(&self) -> &str;
    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> WalkerDecision;
    fn observe_breaker(&mut self, _state: &GameState, _mv: &BreakerMove, _ctx: &mut Ctx<'_>) {}
    /// Called once after the game ended.
    fn finish(&mut self, _state: &GameState, _ctx: &mut Ctx<'_>) {}
    fn exposure(&self) -> Option<&ExposureState> {
        None
    }
}

pub trait BreakerStrategy: Send {
    fn name(&self) -> &str;
    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> BreakerMove;
    fn observe_walker(&mut self, _state: &GameState, _mv: &WalkerMove, _ctx: &mut Ctx<'_>) {}
    fn finish(&mut self, _state: &GameState, _ctx: &mut Ctx<'_>) {}
}

pub const WALKER_STRATEGIES: [&str; 3] = ["walker.connectivity", "walker.hamiltonicity", "walker.random"];
pub const BREAKER_STRATEGIES: [&str; 3] = ["breaker.isolation", "breaker.random", "breaker.greedy_star"];

/// Parameters a strategy may need at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct StrategyParams {
    pub n: usize,
    pub b: usize,
    pub p: Option<Ratio<i64>>,
    pub epsilon: Ratio<i64>,
    pub audit: AuditMode,
}

impl StrategyParams {
    pub fn new(n: usize, b: usize) -> Self {
        StrategyParams {
            n,
            b,
            p: None,
            epsilon: Ratio::new(1, 20),
            audit: AuditMode::Hard,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("unknown strategy {0:?}")]
    Unknown(String),
    #[error("{0} needs parameter {1}")]
    MissingParameter(&'static str, &'static str),
}

pub fn walker_by_name(name: &str, params: &StrategyParams) -> Result<Box<dyn WalkerStrategy>, StrategyError> {
    match name {
        "walker.connectivity" => Ok(Box::new(ConnectivityWalker::new(params))),
        "walker.hamiltonicity" => {
            let p = params
                .p
                .ok_or(StrategyError::MissingParameter("walker.hamiltonicity", "p"))?;
            Ok(Box::new(HamiltonicityWalker::new(
                params.n,
                params.b,
                p,
                params.epsilon,
                params.audit,
            )))
        }
        "walker.random" => Ok(Box::new(RandomWalker)),
        _ => Err(StrategyError::Unknown(name.to_string())),
    }
}

pub fn breaker_by_name(name: &str, params: &StrategyParams) -> Result<Box<dyn BreakerStrategy>, StrategyError> {
    match name {
        "breaker.isolation" => Ok(Box::new(IsolationBreaker::new(params.n, params.b, params.audit))),
        "breaker.random" => Ok(Box::new(RandomBreaker)),
        "breaker.greedy_star" => Ok(Box::new(GreedyStarBreaker::default())),
        _ => Err(StrategyError::Unknown(name.to_string())),
    }
}

/// Walker goes from `v` to a Walker-owned neighbour and back.
pub(crate) fn back_and_forth(state: &GameState, v: Vertex) -> Option<WalkerMove> {
    let x = (0..state.n()).find(|&x| x != v && state.owner(v, x) == crate::board::Owner::Walker)?;
    Some(WalkerMove::path(&[v, x, v]))
}

/// Fills a Breaker move up to `min(b, free)` edges with the lowest-index
/// free edges, starting the scan at `*cursor` and skipping edges already in
/// `chosen`.
pub(crate) fn pad_lowest(state: &GameState, chosen: &mut Vec<Edge>, cursor: &mut usize) {
    let want = state.breaker_bias().min(state.free_count());
    if chosen.len() >= want {
        return;
    }
    let mut taken: std::collections::HashSet<Edge> = chosen.iter().copied().collect();
    while chosen.len() < want && *cursor < state.total_pairs() {
        let e = Edge::from_index(*cursor);
        // every edge passed over is owned or claimed by this move
        *cursor += 1;
        if state.is_free(e.lo(), e.hi()) && taken.insert(e) {
            chosen.push(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_knows_every_name() {
        let mut params = StrategyParams::new(20, 2);
        params.p = Some(Ratio::new(2, 5));
        for name in WALKER_STRATEGIES {
            assert_eq!(walker_by_name(name, &params).unwrap().name(), name);
        }
        for name in BREAKER_STRATEGIES {
            assert_eq!(breaker_by_name(name, &params).unwrap().name(), name);
        }
        assert!(matches!(
            walker_by_name("walker.nope", &params),
            Err(StrategyError::Unknown(_))
        ));
        params.p = None;
        assert!(walker_by_name("walker.hamiltonicity", &params).is_err());
    }
}
