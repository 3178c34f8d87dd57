use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;

pub type Vertex = usize;

/// Unordered vertex pair, stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[Vertex; 2]", try_from = "[Vertex; 2]")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics if `u == v`.
    pub fn new(u: Vertex, v: Vertex) -> Edge {
        assert!(u != v, "an edge needs two distinct endpoints, got {u}-{u}");
        Edge(u.min(v), u.max(v))
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn other(self, v: Vertex) -> Vertex {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }

    /// Position of the pair in the triangular enumeration of `K_n`.
    #[inline]
    pub fn index(self) -> usize {
        self.1 * (self.1 - 1) / 2 + self.0
    }

    pub fn from_index(idx: usize) -> Edge {
        // largest hi with hi*(hi-1)/2 <= idx
        let mut hi = (((8 * idx + 1) as f64).sqrt() as usize).div_ceil(2);
        while hi * (hi - 1) / 2 > idx {
            hi -= 1;
        }
        while (hi + 1) * hi / 2 <= idx {
            hi += 1;
        }
        Edge(idx - hi * (hi - 1) / 2, hi)
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl TryFrom<[Vertex; 2]> for Edge {
    type Error = String;

    fn try_from(p: [Vertex; 2]) -> Result<Self, Self::Error> {
        if p[0] == p[1] {
            Err(format!("self-loop {}-{}", p[0], p[1]))
        } else {
            Ok(Edge::new(p[0], p[1]))
        }
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Owner {
    Free,
    Walker,
    Breaker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    Walker,
    Breaker,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Walker => Player::Breaker,
            Player::Breaker => Player::Walker,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Running,
    WalkerWin,
    BreakerWin,
    WalkerResign,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveError {
    #[error("edge {0:?} is not free")]
    IllegalClaim(Edge),
    #[error("edge {0:?} listed twice in one move")]
    DuplicateClaim(Edge),
    #[error("wrong move size: expected {expected}, got {got}")]
    BadBias { expected: usize, got: usize },
    #[error("it is not {0:?}'s turn")]
    TurnError(Player),
    #[error("step {0}-{1} crosses a Breaker edge")]
    IllegalTraversal(Vertex, Vertex),
    #[error("steps do not form a walk from the current position: {0}")]
    BrokenWalk(String),
    #[error("vertex {0} is not on the board")]
    InvalidVertex(Vertex),
    #[error("the game is over")]
    GameOver,
}

/// `walker_bias` directed steps forming a walk. The first step of Walker's
/// first move fixes her start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WalkerMove {
    pub steps: Vec<(Vertex, Vertex)>,
}

impl WalkerMove {
    /// Builds the move visiting `path[0] -> path[1] -> ...`.
    pub fn path(path: &[Vertex]) -> WalkerMove {
        WalkerMove {
            steps: path.windows(2).map(|w| (w[0], w[1])).collect(),
        }
    }

    pub fn start(&self) -> Option<Vertex> {
        self.steps.first().map(|s| s.0)
    }

    pub fn end(&self) -> Option<Vertex> {
        self.steps.last().map(|s| s.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BreakerMove {
    pub edges: Vec<Edge>,
}

impl BreakerMove {
    pub fn new(edges: Vec<Edge>) -> Self {
        BreakerMove { edges }
    }
}

/// Complete board of one Walker–Breaker game on `K_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    n: usize,
    walker_bias: usize,
    breaker_bias: usize,
    first_player: Player,
    owner: Vec<Owner>,
    walker_deg: Vec<u32>,
    breaker_deg: Vec<u32>,
    walker_edges: usize,
    breaker_edges: usize,
    visited_count: usize,
    position: Option<Vertex>,
    round: u32,
    to_move: Player,
    status: Status,
}

impl GameState {
    pub fn new(n: usize, breaker_bias: usize, first_player: Player) -> Result<Self, ConfigError> {
        GameState::with_walker_bias(n, 2, breaker_bias, first_player)
    }

    pub fn with_walker_bias(
        n: usize,
        walker_bias: usize,
        breaker_bias: usize,
        first_player: Player,
    ) -> Result<Self, ConfigError> {
        if n < 3 {
            return Err(ConfigError::InvalidConfig(format!("need n >= 3, got {n}")));
        }
        if breaker_bias < 1 {
            return Err(ConfigError::InvalidConfig("Breaker bias must be at least 1".into()));
        }
        if walker_bias < 1 {
            return Err(ConfigError::InvalidConfig("Walker bias must be at least 1".into()));
        }
        Ok(GameState {
            n,
            walker_bias,
            breaker_bias,
            first_player,
            owner: vec![Owner::Free; pair_count(n)],
            walker_deg: vec![0; n],
            breaker_deg: vec![0; n],
            walker_edges: 0,
            breaker_edges: 0,
            visited_count: 0,
            position: None,
            round: 0,
            to_move: first_player,
            status: Status::Running,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn walker_bias(&self) -> usize {
        self.walker_bias
    }
    pub fn breaker_bias(&self) -> usize {
        self.breaker_bias
    }
    pub fn first_player(&self) -> Player {
        self.first_player
    }
    pub fn to_move(&self) -> Player {
        self.to_move
    }
    pub fn status(&self) -> Status {
        self.status
    }
    pub fn is_running(&self) -> bool {
        self.status == Status::Running
    }
    /// Number of rounds started so far; a round opens with `first_player`'s move.
    pub fn round(&self) -> u32 {
        self.round
    }
    pub fn walker_position(&self) -> Option<Vertex> {
        self.position
    }
    pub fn walker_edge_count(&self) -> usize {
        self.walker_edges
    }
    pub fn breaker_edge_count(&self) -> usize {
        self.breaker_edges
    }
    pub fn free_count(&self) -> usize {
        self.owner.len() - self.walker_edges - self.breaker_edges
    }
    pub fn total_pairs(&self) -> usize {
        self.owner.len()
    }

    #[inline]
    pub fn owner(&self, u: Vertex, v: Vertex) -> Owner {
        self.owner[Edge::new(u, v).index()]
    }

    #[inline]
    pub fn owner_of(&self, e: Edge) -> Owner {
        self.owner[e.index()]
    }

    #[inline]
    pub fn is_free(&self, u: Vertex, v: Vertex) -> bool {
        self.owner(u, v) == Owner::Free
    }

    /// Free or already Walker's, i.e. Walker may step along it.
    #[inline]
    pub fn is_walkable(&self, u: Vertex, v: Vertex) -> bool {
        self.owner(u, v) != Owner::Breaker
    }

    #[inline]
    pub fn breaker_degree(&self, v: Vertex) -> usize {
        self.breaker_deg[v] as usize
    }

    #[inline]
    pub fn walker_degree(&self, v: Vertex) -> usize {
        self.walker_deg[v] as usize
    }

    pub fn free_degree(&self, v: Vertex) -> usize {
        self.n - 1 - self.walker_degree(v) - self.breaker_degree(v)
    }

    /// Walker has visited `v` once she claimed an edge at it.
    #[inline]
    pub fn is_visited(&self, v: Vertex) -> bool {
        self.walker_deg[v] > 0
    }

    pub fn visited_count(&self) -> usize {
        self.visited_count
    }

    pub fn unvisited(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(|&v| !self.is_visited(v))
    }

    /// Vertices Walker can step to from `from`.
    pub fn legal_steps(&self, from: Vertex) -> Vec<Vertex> {
        (0..self.n)
            .filter(|&w| w != from && self.is_walkable(from, w))
            .collect()
    }

    pub fn edges_owned_by(&self, who: Owner) -> impl Iterator<Item = Edge> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter(move |(_, &o)| o == who)
            .map(|(i, _)| Edge::from_index(i))
    }

    pub fn graph_of(&self, who: Owner) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edges_owned_by(who).map(|e| (e.lo(), e.hi())))
    }

    pub fn walker_graph(&self) -> SimpleGraph {
        self.graph_of(Owner::Walker)
    }

    pub fn breaker_graph(&self) -> SimpleGraph {
        self.graph_of(Owner::Breaker)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), MoveError> {
        if v < self.n {
            Ok(())
        } else {
            Err(MoveError::InvalidVertex(v))
        }
    }

    fn check_turn(&self, who: Player) -> Result<(), MoveError> {
        if self.status != Status::Running {
            return Err(MoveError::GameOver);
        }
        if self.to_move != who {
            return Err(MoveError::TurnError(who));
        }
        Ok(())
    }

    fn pass_turn(&mut self) {
        self.to_move = self.to_move.other();
    }

    fn open_round(&mut self) {
        if self.to_move == self.first_player {
            self.round += 1;
        }
    }

    fn set_owner(&mut self, e: Edge, who: Owner) {
        debug_assert_eq!(self.owner[e.index()], Owner::Free);
        self.owner[e.index()] = who;
        match who {
            Owner::Walker => {
                for v in [e.lo(), e.hi()] {
                    if self.walker_deg[v] == 0 {
                        self.visited_count += 1;
                    }
                    self.walker_deg[v] += 1;
                }
                self.walker_edges += 1;
            }
            Owner::Breaker => {
                self.breaker_deg[e.lo()] += 1;
                self.breaker_deg[e.hi()] += 1;
                self.breaker_edges += 1;
            }
            Owner::Free => unreachable!("edges are never released"),
        }
    }

    /// Claims the listed edges for Breaker. The move must have exactly
    /// `breaker_bias` edges, or every remaining free edge when fewer remain.
    pub fn apply_breaker_move(&mut self, mv: &BreakerMove) -> Result<(), MoveError> {
        self.check_turn(Player::Breaker)?;
        let expected = self.breaker_bias.min(self.free_count());
        if mv.edges.len() != expected {
            return Err(MoveError::BadBias {
                expected,
                got: mv.edges.len(),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(mv.edges.len());
        for &e in &mv.edges {
            self.check_vertex(e.hi())?;
            if !seen.insert(e) {
                return Err(MoveError::DuplicateClaim(e));
            }
            if self.owner_of(e) != Owner::Free {
                return Err(MoveError::IllegalClaim(e));
            }
        }
        self.open_round();
        for &e in &mv.edges {
            self.set_owner(e, Owner::Breaker);
        }
        self.pass_turn();
        Ok(())
    }

    /// Moves Walker along the steps, claiming every free edge she crosses.
    /// Goal predicates are evaluated by the referee, not here.
    pub fn apply_walker_move(&mut self, mv: &WalkerMove) -> Result<(), MoveError> {
        self.check_turn(Player::Walker)?;
        if mv.steps.len() != self.walker_bias {
            return Err(MoveError::BadBias {
                expected: self.walker_bias,
                got: mv.steps.len(),
            });
        }
        let mut at = self.position;
        for &(from, to) in &mv.steps {
            self.check_vertex(from)?;
            self.check_vertex(to)?;
            if from == to {
                return Err(MoveError::BrokenWalk(format!("loop step at {from}")));
            }
            if let Some(a) = at {
                if a != from {
                    return Err(MoveError::BrokenWalk(format!(
                        "step starts at {from}, Walker is at {a}"
                    )));
                }
            }
            if self.owner(from, to) == Owner::Breaker {
                return Err(MoveError::IllegalTraversal(from, to));
            }
            at = Some(to);
        }
        self.open_round();
        for &(from, to) in &mv.steps {
            let e = Edge::new(from, to);
            if self.owner_of(e) == Owner::Free {
                self.set_owner(e, Owner::Walker);
            }
        }
        self.position = at;
        self.pass_turn();
        Ok(())
    }

    pub(crate) fn finish(&mut self, status: Status) {
        debug_assert!(status != Status::Running);
        self.status = status;
    }
}
