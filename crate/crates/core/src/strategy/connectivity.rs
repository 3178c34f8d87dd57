//! Walker's Connectivity strategy: always head for the unvisited vertex with
//! the largest Breaker degree.

use num_traits::ToPrimitive;

use super::{back_and_forth, Ctx, StrategyParams, WalkerDecision, WalkerStrategy};
use crate::audit::{connectivity_regime, AuditPolicy, Check};
use crate::board::{GameState, Owner, Vertex, WalkerMove};

pub struct ConnectivityWalker {
    policy: AuditPolicy,
    /// `2b ln n - b` and `4b ln n - b`.
    target_bound: f64,
    connector_bound: f64,
}

impl ConnectivityWalker {
    pub fn new(params: &StrategyParams) -> Self {
        let eps = params.epsilon.to_f64().unwrap_or(0.0);
        let (b, ln) = (params.b as f64, (params.n as f64).ln());
        ConnectivityWalker {
            policy: AuditPolicy::new(params.audit, connectivity_regime(params.n, params.b, eps)),
            target_bound: 2.0 * b * ln - b,
            connector_bound: 4.0 * b * ln - b,
        }
    }

    fn first_move(&self, state: &GameState, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let n = state.n();
        let mut order: Vec<Vertex> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(state.breaker_degree(v)), v));
        let (v0, v1) = (order[0], order[1]);
        if state.owner(v0, v1) == Owner::Breaker {
            match (0..n).find(|&u| u != v0 && u != v1 && state.is_free(v0, u) && state.is_free(u, v1)) {
                Some(u) => WalkerDecision::Move(WalkerMove::path(&[v0, u, v1])),
                None => WalkerDecision::Resign(format!("no free path {v0}-u-{v1}")),
            }
        } else {
            let best = (0..n)
                .filter(|&u| u != v0 && u != v1)
                .max_by_key(|&u| (state.breaker_degree(u), std::cmp::Reverse(u)));
            let reachable = (0..n)
                .filter(|&u| u != v0 && u != v1 && state.is_free(v1, u))
                .max_by_key(|&u| (state.breaker_degree(u), std::cmp::Reverse(u)));
            match reachable {
                Some(u) => {
                    if best.is_some_and(|b| b != u && state.breaker_degree(b) > state.breaker_degree(u)) {
                        ctx.text(format!("first move: {v1}-{} is Breaker's, took {u}", best.unwrap()));
                    }
                    WalkerDecision::Move(WalkerMove::path(&[v0, v1, u]))
                }
                None => WalkerDecision::Move(WalkerMove::path(&[v0, v1, v0])),
            }
        }
    }
}

impl WalkerStrategy for ConnectivityWalker {
    fn name(&self) -> &str {
        "walker.connectivity"
    }

    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let Some(w) = state.walker_position() else {
            return self.first_move(state, ctx);
        };
        let n = state.n();
        let round = state.round();
        let Some(a) = state
            .unvisited()
            .max_by_key(|&u| (state.breaker_degree(u), std::cmp::Reverse(u)))
        else {
            return match back_and_forth(state, w) {
                Some(mv) => WalkerDecision::Move(mv),
                None => WalkerDecision::Resign("no Walker edge at the current vertex".into()),
            };
        };
        let (dw, da) = (state.breaker_degree(w) as f64, state.breaker_degree(a) as f64);
        if da > self.target_bound {
            ctx.audit(
                self.policy
                    .event(Check::TargetDegree, round, da, self.target_bound, 1, format!("a={a}")),
            );
        }
        if dw + da > self.connector_bound {
            ctx.audit(self.policy.event(
                Check::ConnectorDegreeSum,
                round,
                dw + da,
                self.connector_bound,
                1,
                format!("w={w} a={a}"),
            ));
        }
        if dw + da >= (n - 2) as f64 {
            ctx.audit(self.policy.event(
                Check::ConnectorFeasible,
                round,
                dw + da,
                (n - 2) as f64,
                1,
                format!("w={w} a={a}"),
            ));
        }
        let free_via = |y: Vertex| y != w && y != a && state.is_free(w, y) && state.is_free(y, a);
        let y = (0..n)
            .find(|&y| !state.is_visited(y) && free_via(y))
            .or_else(|| (0..n).find(|&y| free_via(y)));
        if let Some(y) = y {
            return WalkerDecision::Move(WalkerMove::path(&[w, y, a]));
        }
        // walk to a over one of her own edges instead
        if let Some(y) = (0..n).find(|&y| y != w && y != a && state.owner(w, y) == Owner::Walker && state.is_free(y, a))
        {
            ctx.text(format!("connector {w}-{y}-{a} re-uses a Walker edge"));
            return WalkerDecision::Move(WalkerMove::path(&[w, y, a]));
        }
        // last resort: step onto a directly and move on from there
        if state.is_free(w, a) {
            let z = state
                .legal_steps(a)
                .into_iter()
                .find(|&z| z != w && !state.is_visited(z))
                .unwrap_or(w);
            ctx.text(format!("no connector to {a}, stepping {w}-{a}-{z}"));
            return WalkerDecision::Move(WalkerMove::path(&[w, a, z]));
        }
        WalkerDecision::Resign(format!("no connector from {w} to {a}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BreakerMove, Edge, Player};
    use crate::strategy::Ctx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn decide(state: &GameState, b: usize) -> WalkerDecision {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut notes = Vec::new();
        let mut w = ConnectivityWalker::new(&StrategyParams::new(state.n(), b));
        w.choose(state, &mut Ctx::new(&mut rng, &mut notes))
    }

    #[test]
    fn first_round_with_breaker_edge_between_top_two() {
        let mut s = GameState::new(6, 1, Player::Breaker).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(0, 1)])).unwrap();
        assert_eq!(decide(&s, 1), WalkerDecision::Move(WalkerMove::path(&[0, 2, 1])));

        let mut s = GameState::new(6, 2, Player::Breaker).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(0, 1), Edge::new(0, 2)]))
            .unwrap();
        assert_eq!(decide(&s, 2), WalkerDecision::Move(WalkerMove::path(&[0, 3, 1])));
    }

    #[test]
    fn first_round_free_top_edge() {
        let mut s = GameState::new(6, 2, Player::Breaker).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(0, 4), Edge::new(1, 5)]))
            .unwrap();
        // v0 = 0, v1 = 1; 5 ties with 4 on degree but 1-5 is Breaker's
        assert_eq!(decide(&s, 2), WalkerDecision::Move(WalkerMove::path(&[0, 1, 4])));
    }

    #[test]
    fn later_round_heads_for_max_degree_vertex() {
        let mut s = GameState::new(7, 2, Player::Breaker).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(5, 6), Edge::new(4, 6)]))
            .unwrap();
        s.apply_walker_move(&WalkerMove::path(&[0, 1, 2])).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(2, 3), Edge::new(3, 6)]))
            .unwrap();
        // a = 6 (degree 3); y = 4 is unvisited but 4-6 is Breaker's, y = 5 likewise, 3 blocked at 2
        assert_eq!(decide(&s, 2), WalkerDecision::Move(WalkerMove::path(&[2, 0, 6])));
    }

    #[test]
    fn direct_step_when_no_middle_vertex() {
        let mut s = GameState::new(4, 1, Player::Breaker).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(2, 3)])).unwrap();
        s.apply_walker_move(&WalkerMove::path(&[2, 0, 3])).unwrap();
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(0, 1)])).unwrap();
        assert_eq!(decide(&s, 1), WalkerDecision::Move(WalkerMove::path(&[3, 1, 3])));
    }
}
