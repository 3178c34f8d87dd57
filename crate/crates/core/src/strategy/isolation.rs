//! Breaker's isolation strategy for the Connectivity game with Walker moving
//! first: build a clique of Walker-untouched vertices, then play BoxMaker on
//! the free edges at the clique vertices until one of them is isolated.

use super::{pad_lowest, BreakerStrategy, Ctx};
use crate::audit::{AuditMode, AuditPolicy, Check};
use crate::board::{BreakerMove, Edge, GameState, Owner, Vertex, WalkerMove};
use crate::boxgame::{BoxGameState, BoxPlayer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsolationStage {
    BuildClique,
    BoxAttack,
}

pub struct IsolationBreaker {
    clique: Vec<Vertex>,
    stage: IsolationStage,
    m_target: usize,
    moves: usize,
    cursor: usize,
    policy: AuditPolicy,
}

impl IsolationBreaker {
    /// The clique target is `floor(b/2)`. Audits are hard in hard mode: the
    /// clique invariants hold for every bias.
    pub fn new(_n: usize, b: usize, audit: AuditMode) -> Self {
        IsolationBreaker {
            clique: Vec::new(),
            stage: IsolationStage::BuildClique,
            m_target: b / 2,
            moves: 0,
            cursor: 0,
            policy: AuditPolicy::new(audit, true),
        }
    }

    pub fn clique(&self) -> &[Vertex] {
        &self.clique
    }

    pub fn stage(&self) -> IsolationStage {
        self.stage
    }

    fn untouched(state: &GameState, v: Vertex) -> bool {
        !state.is_visited(v) && state.walker_position() != Some(v)
    }

    /// One clique round: a new pair (or a single vertex when one slot is
    /// left) joined to every clique vertex. `None` when that no longer fits.
    fn grow(&mut self, state: &GameState, picked: &mut Vec<Edge>) -> Option<()> {
        let n = state.n();
        let b = state.breaker_bias();
        let add = (self.m_target - self.clique.len()).min(2);
        let round = self.moves + 1;
        if add == 0 || 2 * round + 4 >= n {
            return None;
        }
        let fresh: Vec<Vertex> = (0..n)
            .filter(|&v| !self.clique.contains(&v) && Self::untouched(state, v))
            .take(add)
            .collect();
        if fresh.len() < add {
            return None;
        }
        let mut need = Vec::new();
        if add == 2 && state.is_free(fresh[0], fresh[1]) {
            need.push(Edge::new(fresh[0], fresh[1]));
        }
        for &u in &fresh {
            for &c in &self.clique {
                if state.is_free(u, c) {
                    need.push(Edge::new(u, c));
                }
            }
        }
        if need.len() > b {
            return None;
        }
        picked.extend(need);
        self.clique.extend(fresh);
        Some(())
    }

    /// Spends the rest of the budget at clique vertices, lowest index first.
    fn spend_at_clique(&self, state: &GameState, picked: &mut Vec<Edge>) {
        let want = state.breaker_bias().min(state.free_count());
        let mut clique = self.clique.clone();
        clique.sort_unstable();
        for c in clique {
            for x in 0..state.n() {
                if picked.len() >= want {
                    return;
                }
                if x != c && state.is_free(c, x) {
                    let e = Edge::new(c, x);
                    if !picked.contains(&e) {
                        picked.push(e);
                    }
                }
            }
        }
    }

    fn box_attack(&self, state: &GameState, picked: &mut Vec<Edge>) {
        let sizes: Vec<u64> = self.clique.iter().map(|&c| state.free_degree(c) as u64).collect();
        let mut game = BoxGameState::from_sizes(&sizes, state.breaker_bias() as u64);
        game.turn = BoxPlayer::Maker;
        let claims = game.boxmaker_strategy_move();
        for (&c, &k) in self.clique.iter().zip(&claims) {
            let mut left = k;
            for x in 0..state.n() {
                if left == 0 {
                    break;
                }
                if x != c && state.is_free(c, x) {
                    let e = Edge::new(c, x);
                    if !picked.contains(&e) {
                        picked.push(e);
                        left -= 1;
                    }
                }
            }
        }
    }
}

impl BreakerStrategy for IsolationBreaker {
    fn name(&self) -> &str {
        "breaker.isolation"
    }

    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> BreakerMove {
        let mut picked = Vec::new();
        if self.stage == IsolationStage::BuildClique {
            if self.grow(state, &mut picked).is_some() {
                self.spend_at_clique(state, &mut picked);
            } else {
                self.stage = IsolationStage::BoxAttack;
                if self.clique.len() < self.m_target {
                    ctx.text(format!("clique stopped at {} of {}", self.clique.len(), self.m_target));
                }
            }
        }
        if self.stage == IsolationStage::BoxAttack {
            self.box_attack(state, &mut picked);
        }
        pad_lowest(state, &mut picked, &mut self.cursor);
        self.moves += 1;
        BreakerMove::new(picked)
    }

    fn observe_walker(&mut self, state: &GameState, _mv: &WalkerMove, ctx: &mut Ctx<'_>) {
        let before = self.clique.len();
        self.clique.retain(|&c| Self::untouched(state, c));
        let lost = before - self.clique.len();
        let broken = self.clique.iter().enumerate().any(|(i, &u)| {
            state.walker_degree(u) > 0
                || self.clique[i + 1..]
                    .iter()
                    .any(|&v| state.owner(u, v) != Owner::Breaker)
        });
        if lost > 1 || broken {
            ctx.audit(self.policy.event(
                Check::CliqueIntegrity,
                state.round(),
                lost as f64,
                1.0,
                1,
                if broken { "clique not Breaker-complete" } else { "" },
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Player;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn step(br: &mut IsolationBreaker, s: &mut GameState) -> BreakerMove {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut notes = Vec::new();
        let mv = br.choose(s, &mut Ctx::new(&mut rng, &mut notes));
        s.apply_breaker_move(&mv).unwrap();
        mv
    }

    fn walk(br: &mut IsolationBreaker, s: &mut GameState, path: &[Vertex]) {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut notes = Vec::new();
        let mv = WalkerMove::path(path);
        s.apply_walker_move(&mv).unwrap();
        br.observe_walker(s, &mv, &mut Ctx::new(&mut rng, &mut notes));
        assert!(notes.is_empty(), "{notes:?}");
    }

    #[test]
    fn first_rounds_build_the_clique() {
        let mut s = GameState::new(30, 5, Player::Walker).unwrap();
        let mut br = IsolationBreaker::new(30, 5, AuditMode::Hard);
        walk(&mut br, &mut s, &[0, 1, 2]);
        let mv = step(&mut br, &mut s);
        // pair uv then the rest of the budget at u and v
        assert_eq!(br.clique(), &[3, 4]);
        assert_eq!(mv.edges[0], Edge::new(3, 4));
        assert_eq!(mv.edges.len(), 5);
        assert!(mv
            .edges
            .iter()
            .all(|e| [3, 4].contains(&e.lo()) || [3, 4].contains(&e.hi())));
    }

    #[test]
    fn second_round_joins_a_new_pair() {
        let mut s = GameState::new(40, 8, Player::Walker).unwrap();
        let mut br = IsolationBreaker::new(40, 8, AuditMode::Hard);
        walk(&mut br, &mut s, &[0, 1, 2]);
        step(&mut br, &mut s);
        walk(&mut br, &mut s, &[2, 1, 0]);
        let mv = step(&mut br, &mut s);
        assert_eq!(br.clique().len(), 4);
        // 3-5 and 3-6 were claimed as spare edges in round one
        assert_eq!(&mv.edges[..3], &[Edge::new(5, 6), Edge::new(4, 5), Edge::new(4, 6)]);
        for (i, &u) in br.clique().iter().enumerate() {
            for &v in &br.clique()[i + 1..] {
                assert_eq!(s.owner(u, v), Owner::Breaker);
            }
        }
    }

    #[test]
    fn last_box_within_reach_is_isolated() {
        let mut s = GameState::new(12, 6, Player::Walker).unwrap();
        let mut br = IsolationBreaker::new(12, 6, AuditMode::Hard);
        walk(&mut br, &mut s, &[0, 1, 2]);
        step(&mut br, &mut s);
        walk(&mut br, &mut s, &[2, 1, 0]);
        step(&mut br, &mut s);
        walk(&mut br, &mut s, &[0, 1, 2]);
        step(&mut br, &mut s);
        assert_eq!(br.stage(), IsolationStage::BoxAttack);
        let isolated = br.clique().iter().any(|&c| s.breaker_degree(c) == 11);
        assert!(isolated);
    }
}
