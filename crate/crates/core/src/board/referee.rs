use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::state::{ConfigError, Edge, GameState, MoveError, Player, Status, Vertex};
use super::transcript::{Annotation, Footer, Header, RoundRecord, Transcript, TRANSCRIPT_FORMAT, TRANSCRIPT_VERSION};
use crate::graph::{has_hamilton_cycle, Hamiltonicity, DEFAULT_HAMILTON_BUDGET};
use crate::strategy::{BreakerStrategy, Ctx, WalkerDecision, WalkerStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    Connectivity,
    HamiltonCycle,
}

impl Goal {
    pub fn label(self) -> &'static str {
        match self {
            Goal::Connectivity => "connectivity",
            Goal::HamiltonCycle => "hamilton_cycle",
        }
    }
}

impl std::str::FromStr for Goal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connectivity" => Ok(Goal::Connectivity),
            "hamilton_cycle" | "hamiltonicity" | "hamilton" => Ok(Goal::HamiltonCycle),
            _ => Err(format!("unknown goal {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchConfig {
    pub n: usize,
    pub breaker_bias: usize,
    pub walker_bias: usize,
    pub goal: Goal,
    pub first_player: Player,
    pub seed: u64,
    /// Keep playing after Walker reaches her goal, until the board is full.
    pub play_out: bool,
    /// Expansion budget for Hamiltonicity checks of Walker's graph while
    /// the game runs; the final check uses [`DEFAULT_HAMILTON_BUDGET`].
    pub hamilton_budget: u64,
    /// Optional parameters echoed into the transcript header.
    pub p: Option<String>,
    pub epsilon: Option<String>,
}

impl MatchConfig {
    pub fn new(n: usize, breaker_bias: usize, goal: Goal, seed: u64) -> Self {
        MatchConfig {
            n,
            breaker_bias,
            walker_bias: 2,
            goal,
            first_player: Player::Breaker,
            seed,
            play_out: false,
            hamilton_budget: 200_000,
            p: None,
            epsilon: None,
        }
    }

    pub fn first(mut self, player: Player) -> Self {
        self.first_player = player;
        self
    }
}

#[derive(Debug, Error)]
pub enum PlayError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{strategy} ({player:?}) made an illegal move in round {round}: {source}")]
    StrategyFault {
        player: Player,
        strategy: String,
        round: u32,
        source: MoveError,
    },
}

#[derive(Clone, Debug)]
pub struct GameRecord {
    pub outcome: Status,
    pub state: GameState,
    pub transcript: Transcript,
    pub win_round: Option<u32>,
    pub isolated_vertex: Option<Vertex>,
}

/// Whether Walker's graph already meets the goal. `budget` bounds the
/// Hamiltonicity search; an inconclusive search counts as not yet.
pub fn goal_reached(state: &GameState, goal: Goal, budget: u64) -> bool {
    match goal {
        Goal::Connectivity => state.visited_count() == state.n(),
        Goal::HamiltonCycle => {
            (0..state.n()).all(|v| state.walker_degree(v) >= 2)
                && has_hamilton_cycle(&state.walker_graph(), budget) == Hamiltonicity::Yes
        }
    }
}

/// A vertex that certifies Walker can no longer reach the goal: for
/// Connectivity an unvisited vertex whose every edge is Breaker's, for the
/// Hamilton cycle a vertex with at most one non-Breaker edge.
pub fn goal_blocked_at(state: &GameState, goal: Goal, v: Vertex) -> bool {
    let n = state.n();
    match goal {
        Goal::Connectivity => !state.is_visited(v) && state.breaker_degree(v) == n - 1,
        Goal::HamiltonCycle => state.breaker_degree(v) + 2 > n - 1,
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Plays one game to completion. Deterministic in `cfg` (including the seed)
/// and the strategies' initial state.
pub fn play_game(
    cfg: &MatchConfig,
    walker: &mut dyn WalkerStrategy,
    breaker: &mut dyn BreakerStrategy,
) -> Result<GameRecord, PlayError> {
    let mut state = GameState::with_walker_bias(cfg.n, cfg.walker_bias, cfg.breaker_bias, cfg.first_player)?;
    let mut transcript = Transcript::new(Header {
        format: TRANSCRIPT_FORMAT.into(),
        version: TRANSCRIPT_VERSION,
        n: cfg.n,
        walker_bias: cfg.walker_bias,
        breaker_bias: cfg.breaker_bias,
        goal: cfg.goal,
        walker: walker.name().to_string(),
        breaker: breaker.name().to_string(),
        seed: cfg.seed,
        first_player: cfg.first_player,
        p: cfg.p.clone(),
        epsilon: cfg.epsilon.clone(),
    });
    let mut walker_rng = stream(cfg.seed, 1);
    let mut breaker_rng = stream(cfg.seed, 2);
    let mut win_round = None;
    let mut isolated = None;
    let mut end: Option<Status> = None;
    // in-game Hamiltonicity checks are skipped when the game is played out
    let check_each_move = !(cfg.play_out && cfg.goal == Goal::HamiltonCycle);

    while end.is_none() {
        let who = state.to_move();
        if who == cfg.first_player {
            transcript.rounds.push(RoundRecord {
                round: state.round() + 1,
                ..Default::default()
            });
        }
        let round = transcript.rounds.last_mut().expect("round opened by first player");
        let fault = |name: &str, player, source| PlayError::StrategyFault {
            player,
            strategy: name.to_string(),
            round: round.round,
            source,
        };
        match who {
            Player::Breaker => {
                let mut ctx = Ctx::new(&mut breaker_rng, &mut round.annotations);
                let mv = breaker.choose(&state, &mut ctx);
                if let Err(e) = state.apply_breaker_move(&mv) {
                    return Err(fault(breaker.name(), Player::Breaker, e));
                }
                round.breaker_edges = Some(mv.edges.clone());
                let mut ctx = Ctx::new(&mut walker_rng, &mut round.annotations);
                walker.observe_breaker(&state, &mv, &mut ctx);
                if win_round.is_none() {
                    if let Some(v) = blocked_by(&state, cfg.goal, &mv.edges) {
                        isolated = Some(v);
                        round.annotations.push(Annotation::Isolated { vertex: v });
                        end = Some(Status::BreakerWin);
                    }
                }
            }
            Player::Walker => {
                let mut ctx = Ctx::new(&mut walker_rng, &mut round.annotations);
                match walker.choose(&state, &mut ctx) {
                    WalkerDecision::Resign(reason) => {
                        round.annotations.push(Annotation::Resign { reason });
                        end = Some(if win_round.is_some() {
                            Status::WalkerWin
                        } else {
                            Status::WalkerResign
                        });
                    }
                    WalkerDecision::Move(mv) => {
                        let claimed_before = state.walker_edge_count();
                        if let Err(e) = state.apply_walker_move(&mv) {
                            return Err(fault(walker.name(), Player::Walker, e));
                        }
                        round.walker_steps = Some(mv.steps.clone());
                        let mut ctx = Ctx::new(&mut breaker_rng, &mut round.annotations);
                        breaker.observe_walker(&state, &mv, &mut ctx);
                        let changed = state.walker_edge_count() != claimed_before;
                        if win_round.is_none()
                            && check_each_move
                            && changed
                            && goal_reached(&state, cfg.goal, cfg.hamilton_budget)
                        {
                            win_round = Some(state.round());
                            if !cfg.play_out {
                                end = Some(Status::WalkerWin);
                            }
                        }
                    }
                }
            }
        }
        if end.is_none() && state.free_count() == 0 {
            if win_round.is_none() && goal_reached(&state, cfg.goal, DEFAULT_HAMILTON_BUDGET) {
                win_round = Some(state.round());
            }
            end = Some(if win_round.is_some() {
                Status::WalkerWin
            } else {
                Status::BreakerWin
            });
        }
    }

    let outcome = end.expect("loop exits with an outcome");
    state.finish(outcome);
    let mut closing = Vec::new();
    walker.finish(&state, &mut Ctx::new(&mut walker_rng, &mut closing));
    breaker.finish(&state, &mut Ctx::new(&mut breaker_rng, &mut closing));
    transcript.footer = Some(Footer {
        outcome,
        rounds: state.round(),
        walker_edges: state.walker_edge_count(),
        breaker_edges: state.breaker_edge_count(),
        win_round,
        isolated_vertex: isolated,
        annotations: closing,
    });
    Ok(GameRecord {
        outcome,
        state,
        transcript,
        win_round,
        isolated_vertex: isolated,
    })
}

fn blocked_by(state: &GameState, goal: Goal, claimed: &[Edge]) -> Option<Vertex> {
    claimed
        .iter()
        .flat_map(|e| [e.lo(), e.hi()])
        .filter(|&v| goal_blocked_at(state, goal, v))
        .min()
}
