//! Walker's exposure strategy for the Hamilton cycle game.
//!
//! Walker generates a random graph `H ~ G(n, p)` by tossing a `p`-coin on
//! every pair exactly once, at the vertex she currently stands on, and keeps
//! `G' = H ∩ W` dense at every vertex. Which vertex to expose next comes from
//! a simulated `MinBox(n, 4n, p/2, 4b)` game fed with Breaker's edges.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{back_and_forth, Ctx, WalkerDecision, WalkerStrategy};
use crate::audit::{hamiltonicity_regime, AuditMode, AuditPolicy, Check};
use crate::board::{Annotation, BreakerMove, Edge, ExposureResult, GameState, Owner, Vertex, WalkerMove};
use crate::boxgame::{MinBoxError, MinBoxState};
use crate::graph::SimpleGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExposureStage {
    One,
    Two,
}

/// Exposure bookkeeping. `u` is in `U_v` exactly when the pair `uv` has not
/// been exposed yet.
#[derive(Clone, Debug)]
pub struct ExposureState {
    n: usize,
    p: Ratio<i64>,
    epsilon: Ratio<i64>,
    b: usize,
    exposure_vertex: Option<Vertex>,
    unexposed: SimpleGraph,
    exposures: Vec<u8>,
    h: SimpleGraph,
    gprime: SimpleGraph,
    f1: Vec<u32>,
    f2: Vec<u32>,
    minbox: MinBoxState,
    stage: ExposureStage,
    swept: usize,
}

impl ExposureState {
    pub fn new(n: usize, b: usize, p: Ratio<i64>, epsilon: Ratio<i64>) -> Self {
        ExposureState {
            n,
            p,
            epsilon,
            b,
            exposure_vertex: None,
            unexposed: SimpleGraph::complete(n),
            exposures: vec![0; n * (n - 1) / 2],
            h: SimpleGraph::new(n),
            gprime: SimpleGraph::new(n),
            f1: vec![0; n],
            f2: vec![0; n],
            minbox: MinBoxState::new(n, 4 * n as u64, p / 2, 4 * b as u64),
            stage: ExposureStage::One,
            swept: 0,
        }
    }

    pub fn p(&self) -> Ratio<i64> {
        self.p
    }

    pub fn epsilon(&self) -> Ratio<i64> {
        self.epsilon
    }

    pub fn breaker_bias(&self) -> usize {
        self.b
    }

    pub fn exposure_vertex(&self) -> Option<Vertex> {
        self.exposure_vertex
    }

    pub fn unexposed_at(&self, v: Vertex) -> Vec<Vertex> {
        self.unexposed.neighbors(v).collect()
    }

    pub fn unexposed_count(&self) -> usize {
        self.unexposed.edge_count()
    }

    /// How often each pair was exposed, by [`Edge::index`].
    pub fn exposure_counts(&self) -> &[u8] {
        &self.exposures
    }

    pub fn h(&self) -> &SimpleGraph {
        &self.h
    }

    pub fn gprime(&self) -> &SimpleGraph {
        &self.gprime
    }

    pub fn f1(&self) -> &[u32] {
        &self.f1
    }

    pub fn f2(&self) -> &[u32] {
        &self.f2
    }

    pub fn f1_total(&self) -> u32 {
        self.f1.iter().sum()
    }

    pub fn f2_max(&self) -> u32 {
        self.f2.iter().copied().max().unwrap_or(0)
    }

    pub fn minbox(&self) -> &MinBoxState {
        &self.minbox
    }

    pub fn stage(&self) -> ExposureStage {
        self.stage
    }

    /// Pairs exposed by the sweep rather than at an exposure vertex.
    pub fn swept(&self) -> usize {
        self.swept
    }

    /// `0.9 eps (n-1) p`.
    pub fn type_ii_bound(&self) -> f64 {
        0.9 * ratio_f64(self.epsilon) * (self.n - 1) as f64 * ratio_f64(self.p)
    }

    fn expose(&mut self, u: Vertex, v: Vertex) {
        self.unexposed.remove_edge(u, v);
        let i = Edge::new(u, v).index();
        self.exposures[i] = self.exposures[i].saturating_add(1);
    }

    fn coin<R: Rng>(&self, rng: &mut R) -> bool {
        rng.gen_ratio(*self.p.numer() as u32, *self.p.denom() as u32)
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub struct HamiltonicityWalker {
    ex: ExposureState,
    policy: AuditPolicy,
    /// `eps (n-1) / 5 + b`.
    degree_bound: f64,
    /// `(1 + 2p) n`.
    maker_load_bound: f64,
    /// `ceil(2pn) - 1`.
    type_i_extra: u64,
}

impl HamiltonicityWalker {
    pub fn new(n: usize, b: usize, p: Ratio<i64>, epsilon: Ratio<i64>, audit: AuditMode) -> Self {
        let (pf, ef) = (ratio_f64(p), ratio_f64(epsilon));
        let two_pn = p * Ratio::from_integer(2 * n as i64);
        HamiltonicityWalker {
            ex: ExposureState::new(n, b, p, epsilon),
            policy: AuditPolicy::new(audit, hamiltonicity_regime(n, b, pf, ef)),
            degree_bound: ef * (n - 1) as f64 / 5.0 + b as f64,
            maker_load_bound: (1.0 + 2.0 * pf) * n as f64,
            type_i_extra: (two_pn.ceil().to_integer() - 1).max(0) as u64,
        }
    }

    pub fn state(&self) -> &ExposureState {
        &self.ex
    }

    /// Maker claims up to `count` elements of `F_v` in the simulated game.
    fn maker_claim(&mut self, v: Vertex, count: u64, round: u32, ctx: &mut Ctx<'_>) {
        let pending = self.ex.minbox.pending_adversary();
        let budget = self.ex.minbox.budget();
        if pending > budget {
            ctx.audit(
                self.policy
                    .event(Check::ExchangeBudget, round, pending as f64, budget as f64, 1, ""),
            );
        }
        self.ex.minbox.maker_claim(v, count);
        let load = self.ex.minbox.counts(v).maker as f64;
        if load >= self.maker_load_bound {
            ctx.audit(self.policy.event(
                Check::BoxLoad,
                round,
                load,
                self.maker_load_bound,
                1,
                format!("maker v={v}"),
            ));
        }
    }

    /// Picks the next exposure vertex and claims an element of its box.
    fn declare(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> Option<Vertex> {
        let round = state.round();
        let v = self.ex.minbox.max_danger_box()?;
        let d = state.breaker_degree(v) as f64;
        if d >= self.degree_bound {
            ctx.audit(
                self.policy
                    .event(Check::ActiveBoxDegree, round, d, self.degree_bound, 1, format!("v={v}")),
            );
        }
        if let Some(top) = self.ex.minbox.max_active_danger() {
            let bound = self.ex.minbox.danger_bound();
            if top as f64 > bound {
                ctx.audit(self.policy.event(Check::DangerBound, round, top as f64, bound, 1, ""));
            }
        }
        self.maker_claim(v, 1, round, ctx);
        self.ex.exposure_vertex = Some(v);
        Some(v)
    }

    fn first_move(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let n = state.n();
        let Some(v) = self.declare(state, ctx) else {
            return WalkerDecision::Resign("no free active box in round 1".into());
        };
        let v0 = (0..n)
            .filter(|&u| u != v)
            .min_by_key(|&u| (state.breaker_degree(u), u))
            .expect("n >= 3");
        match (0..n).find(|&y| y != v0 && y != v && state.is_free(v0, y) && state.is_free(y, v)) {
            Some(v1) => WalkerDecision::Move(WalkerMove::path(&[v0, v1, v])),
            None => {
                ctx.audit(
                    self.policy
                        .event(Check::ConnectorExists, state.round(), 0.0, 1.0, 1, format!("{v0}->{v}")),
                );
                WalkerDecision::Resign(format!("no free path from {v0} to {v}"))
            }
        }
    }

    /// Case 1: two steps from `w` to the exposure vertex `v`. Prefers a
    /// middle vertex with both edges free, then one, then none.
    fn connect(&mut self, state: &GameState, w: Vertex, v: Vertex, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let n = state.n();
        let tier = |y: Vertex| u8::from(state.is_free(w, y)) + u8::from(state.is_free(y, v));
        let best = (0..n)
            .filter(|&y| y != w && y != v && state.is_walkable(w, y) && state.is_walkable(y, v))
            .max_by_key(|&y| (tier(y), std::cmp::Reverse(y)));
        match best {
            Some(y) => WalkerDecision::Move(WalkerMove::path(&[w, y, v])),
            None => {
                let sum = (state.breaker_degree(w) + state.breaker_degree(v)) as f64;
                ctx.audit(self.policy.event(
                    Check::ConnectorExists,
                    state.round(),
                    sum,
                    (n - 2) as f64,
                    1,
                    format!("{w}->{v}"),
                ));
                WalkerDecision::Resign(format!("no connector from {w} to {v}"))
            }
        }
    }

    /// Case 2: expose pairs at `v` in random order until the first success.
    fn expose_at(&mut self, state: &GameState, v: Vertex, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let round = state.round();
        let mut order = self.ex.unexposed_at(v);
        order.shuffle(ctx.rng);
        let mut hit = None;
        let mut tossed = 0u32;
        for &u in &order {
            tossed += 1;
            self.ex.expose(u, v);
            if self.ex.coin(ctx.rng) {
                hit = Some(u);
                break;
            }
        }
        self.ex.exposure_vertex = None;
        let bounce = |state: &GameState| match back_and_forth(state, v) {
            Some(mv) => WalkerDecision::Move(mv),
            None => WalkerDecision::Resign(format!("no Walker edge at {v}")),
        };
        let Some(u) = hit else {
            self.ex.f1[v] += 1;
            if self.ex.f1[v] > 1 {
                ctx.audit(
                    self.policy
                        .event(Check::TypeIOnce, round, self.ex.f1[v] as f64, 1.0, 1, format!("v={v}")),
                );
            }
            let extra = self.type_i_extra;
            self.maker_claim(v, extra, round, ctx);
            ctx.note(Annotation::Exposure {
                vertex: v,
                tossed,
                success: None,
                result: ExposureResult::TypeI,
            });
            return bounce(state);
        };
        self.ex.h.add_edge(u, v);
        let result = match state.owner(u, v) {
            Owner::Free => ExposureResult::Claimed,
            Owner::Walker => ExposureResult::AlreadyOwned,
            Owner::Breaker => ExposureResult::TypeII,
        };
        ctx.note(Annotation::Exposure {
            vertex: v,
            tossed,
            success: Some(u),
            result,
        });
        if result == ExposureResult::TypeII {
            self.ex.f2[v] += 1;
            self.ex.f2[u] += 1;
            return bounce(state);
        }
        self.ex.gprime.add_edge(u, v);
        self.maker_claim(u, 1, round, ctx);
        WalkerDecision::Move(WalkerMove::path(&[v, u, v]))
    }

    /// Tosses a coin on every pair not exposed yet; successes are failures
    /// of type II, and join `G'` when Walker owns the pair.
    fn sweep(&mut self, state: &GameState, ctx: &mut Ctx<'_>) {
        self.ex.stage = ExposureStage::Two;
        self.ex.exposure_vertex = None;
        let pairs = self.ex.unexposed.edge_list();
        let (mut successes, mut owned) = (0u32, 0u32);
        for &(u, v) in &pairs {
            self.ex.expose(u, v);
            if self.ex.coin(ctx.rng) {
                successes += 1;
                self.ex.h.add_edge(u, v);
                self.ex.f2[u] += 1;
                self.ex.f2[v] += 1;
                if state.owner(u, v) == Owner::Walker {
                    owned += 1;
                    self.ex.gprime.add_edge(u, v);
                }
            }
        }
        self.ex.swept += pairs.len();
        if !pairs.is_empty() {
            ctx.note(Annotation::Sweep {
                exposed: pairs.len() as u32,
                successes,
                owned,
            });
            ctx.audit(self.policy.event(
                Check::DeferredExposure,
                state.round(),
                pairs.len() as f64,
                0.0,
                pairs.len() as u32,
                "",
            ));
        }
    }
}

impl WalkerStrategy for HamiltonicityWalker {
    fn name(&self) -> &str {
        "walker.hamiltonicity"
    }

    fn choose(&mut self, state: &GameState, ctx: &mut Ctx<'_>) -> WalkerDecision {
        let Some(w) = state.walker_position() else {
            return self.first_move(state, ctx);
        };
        if self.ex.stage == ExposureStage::One {
            let v = match self.ex.exposure_vertex {
                Some(v) => Some(v),
                None => self.declare(state, ctx),
            };
            match v {
                Some(v) if v == w => return self.expose_at(state, v, ctx),
                Some(v) => return self.connect(state, w, v, ctx),
                None => self.sweep(state, ctx),
            }
        }
        match back_and_forth(state, w) {
            Some(mv) => WalkerDecision::Move(mv),
            None => WalkerDecision::Resign(format!("no Walker edge at {w}")),
        }
    }

    fn observe_breaker(&mut self, state: &GameState, mv: &BreakerMove, ctx: &mut Ctx<'_>) {
        if self.ex.stage != ExposureStage::One {
            return;
        }
        let round = state.round();
        let n = state.n() as f64;
        for e in &mv.edges {
            for x in [e.lo(), e.hi()] {
                if let Err(MinBoxError::BoxExhausted(i)) = self.ex.minbox.breaker_apply(&[(x, 1)]) {
                    ctx.audit(
                        self.policy
                            .event(Check::BoxExhausted, round, 0.0, 1.0, 1, format!("box {i}")),
                    );
                }
                let load = self.ex.minbox.counts(x).breaker as f64;
                if load >= n {
                    ctx.audit(
                        self.policy
                            .event(Check::BoxLoad, round, load, n, 1, format!("breaker v={x}")),
                    );
                }
            }
        }
    }

    fn finish(&mut self, state: &GameState, ctx: &mut Ctx<'_>) {
        let round = state.round();
        if self.ex.unexposed_count() > 0 {
            self.sweep(state, ctx);
        }
        let wrong = self.ex.exposures.iter().filter(|&&c| c != 1).count();
        if wrong > 0 {
            ctx.audit(
                self.policy
                    .event(Check::ExposureComplete, round, wrong as f64, 0.0, wrong as u32, ""),
            );
        }
        let walker = state.walker_graph();
        if !self.ex.gprime.is_subgraph_of(&self.ex.h) || !self.ex.gprime.is_subgraph_of(&walker) {
            ctx.audit(self.policy.event(Check::ExposedSubgraph, round, 1.0, 0.0, 1, ""));
        }
        let bound = self.ex.type_ii_bound();
        let over = self.ex.f2.iter().filter(|&&f| f as f64 > bound).count();
        if over > 0 {
            ctx.audit(self.policy.event(
                Check::TypeIIExcess,
                round,
                self.ex.f2_max() as f64,
                bound,
                over as u32,
                "",
            ));
        }
    }

    fn exposure(&self) -> Option<&ExposureState> {
        Some(&self.ex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Player;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn walker(n: usize, b: usize) -> HamiltonicityWalker {
        HamiltonicityWalker::new(n, b, Ratio::new(2, 5), Ratio::new(1, 5), AuditMode::Hard)
    }

    fn run<T>(seed: u64, f: impl FnOnce(&mut Ctx<'_>) -> T) -> (T, Vec<Annotation>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut notes = Vec::new();
        let out = f(&mut Ctx::new(&mut rng, &mut notes));
        (out, notes)
    }

    #[test]
    fn round_one_heads_for_the_most_dangerous_box() {
        let mut s = GameState::new(10, 2, Player::Breaker).unwrap();
        let mv = BreakerMove::new(vec![Edge::new(3, 5), Edge::new(3, 7)]);
        s.apply_breaker_move(&mv).unwrap();
        let mut w = walker(10, 2);
        run(0, |c| w.observe_breaker(&s, &mv, c));
        let (d, _) = run(0, |c| w.choose(&s, c));
        assert_eq!(d, WalkerDecision::Move(WalkerMove::path(&[0, 1, 3])));
        assert_eq!(w.state().exposure_vertex(), Some(3));
        assert_eq!(w.state().minbox().counts(3).maker, 1);
    }

    #[test]
    fn type_i_failure_when_no_coin_succeeds() {
        // p = 1/1000: four tosses essentially never succeed for this seed
        let mut s = GameState::new(5, 1, Player::Walker).unwrap();
        let mut w = HamiltonicityWalker::new(5, 1, Ratio::new(1, 1000), Ratio::new(1, 100), AuditMode::Hard);
        let (d, _) = run(1, |c| w.choose(&s, c));
        let WalkerDecision::Move(m) = d else { panic!() };
        s.apply_walker_move(&m).unwrap();
        let v = w.state().exposure_vertex().unwrap();
        assert_eq!(w.state().unexposed_at(v).len(), 4);
        s.apply_breaker_move(&BreakerMove::new(vec![Edge::new(1, 3)])).unwrap();
        let (d, notes) = run(1, |c| w.choose(&s, c));
        assert_eq!(w.state().f1()[v], 1);
        assert!(w.state().unexposed_at(v).is_empty());
        assert!(matches!(
            notes[..],
            [Annotation::Exposure {
                tossed: 4,
                result: ExposureResult::TypeI,
                ..
            }]
        ));
        let WalkerDecision::Move(m) = d else { panic!() };
        assert_eq!(m.start(), Some(v));
        assert_eq!(m.end(), Some(v));
        assert!(m.steps.iter().all(|&(a, b)| s.owner(a, b) == Owner::Walker));
    }

    #[test]
    fn type_ii_failure_on_breaker_edge() {
        // p = 1: the first pair in the permutation succeeds
        let n = 5;
        let mut s = GameState::new(n, 4, Player::Walker).unwrap();
        let mut w = HamiltonicityWalker::new(n, 4, Ratio::new(1, 1), Ratio::new(1, 100), AuditMode::Hard);
        let (d, _) = run(3, |c| w.choose(&s, c));
        let WalkerDecision::Move(m) = d else { panic!() };
        s.apply_walker_move(&m).unwrap();
        let v = w.state().exposure_vertex().unwrap();
        // Breaker takes every free pair at v
        let mut edges: Vec<Edge> = (0..n)
            .filter(|&x| x != v && s.is_free(v, x))
            .map(|x| Edge::new(v, x))
            .collect();
        for e in (0..s.total_pairs()).map(Edge::from_index) {
            if edges.len() < 4 && s.is_free(e.lo(), e.hi()) && !edges.contains(&e) {
                edges.push(e);
            }
        }
        let mv = BreakerMove::new(edges);
        s.apply_breaker_move(&mv).unwrap();
        run(3, |c| w.observe_breaker(&s, &mv, c));
        let (_, notes) = run(3, |c| w.choose(&s, c));
        let Annotation::Exposure {
            success: Some(u),
            result,
            ..
        } = notes[0].clone()
        else {
            panic!("{notes:?}")
        };
        if result == ExposureResult::TypeII {
            assert_eq!((w.state().f2()[v], w.state().f2()[u]), (1, 1));
            assert_eq!(w.state().gprime().edge_count(), 0);
        } else {
            assert_eq!(result, ExposureResult::AlreadyOwned);
            assert!(w.state().gprime().has_edge(u, v));
        }
    }

    #[test]
    fn pairs_are_exposed_once() {
        let mut w = walker(8, 1);
        let (_, _) = run(5, |c| {
            let s = GameState::new(8, 1, Player::Breaker).unwrap();
            w.sweep(&s, c);
        });
        assert!(w.state().exposure_counts().iter().all(|&c| c == 1));
        assert_eq!(w.state().stage(), ExposureStage::Two);
    }
}
