//! Box games.
//!
//! `Box(k, t, a, 1)`: BoxMaker claims `a` elements per move and BoxBreaker
//! one, on `k` disjoint boxes of near-equal size holding `t` elements in
//! total. BoxMaker wins by claiming a whole box; BoxBreaker destroys a box by
//! claiming any element of it. BoxBreaker moves first, and then BoxMaker
//! wins exactly when `t <= f(k, a)` where
//!
//! ```text
//! f(1, a) = 0
//! f(k, a) = floor(k (f(k-1, a) + a) / (k-1))    for k >= 2
//! ```
//!
//! `MinBox(n, D, alpha, b)`: Maker claims one element per move and must get
//! `alpha |F|` elements of every box `F`; the adversary claims up to `b`
//! elements between Maker's moves.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoxError {
    #[error("f(k, a) needs k >= 1 and a >= 1, got k={k}, a={a}")]
    InvalidArgument { k: u64, a: u64 },
    #[error("f({k}, {a}) does not fit in 128 bits")]
    ValueOverflow { k: u64, a: u64 },
    #[error("instance with {0} elements exceeds the oracle limit of {ORACLE_MAX_ELEMENTS}")]
    OracleBudget(u64),
}

pub const ORACLE_MAX_ELEMENTS: u64 = 18;

/// Exact value of the box-game threshold `f(k, a)`.
pub fn f(k: u64, a: u64) -> Result<u128, BoxError> {
    let mut v = 0;
    f_walk(k, a, |_, x| v = x)?;
    Ok(v)
}

/// `[f(1, a), f(2, a), ..., f(k_max, a)]`.
pub fn f_row(k_max: u64, a: u64) -> Result<Vec<u128>, BoxError> {
    let mut row = Vec::new();
    f_walk(k_max, a, |_, x| row.push(x))?;
    Ok(row)
}

fn f_walk(k_max: u64, a: u64, mut visit: impl FnMut(u64, u128)) -> Result<(), BoxError> {
    if k_max == 0 || a == 0 {
        return Err(BoxError::InvalidArgument { k: k_max, a });
    }
    let mut v: u128 = 0;
    visit(1, v);
    for j in 2..=k_max {
        let jj = j as u128;
        v = v
            .checked_add(a as u128)
            .and_then(|s| s.checked_mul(jj))
            .map(|s| s / (jj - 1))
            .ok_or(BoxError::ValueOverflow { k: j, a })?;
        visit(j, v);
    }
    Ok(())
}

/// `t <= f(k, a)`: BoxMaker wins `Box(k, t, a, 1)` on near-equal boxes.
pub fn boxmaker_wins(k: u64, t: u64, a: u64) -> bool {
    match f(k, a) {
        Ok(v) => (t as u128) <= v,
        Err(BoxError::ValueOverflow { .. }) => true,
        Err(_) => false,
    }
}

/// `1 + 1/2 + ... + 1/m` exactly; zero for `m = 0`.
pub fn harmonic(m: u64) -> BigRational {
    (1..=m).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i))
    })
}

/// `((a-1) k H_{k-1}, a k H_{k-1})`, the classical sandwich around `f(k, a)`.
pub fn f_bounds(k: u64, a: u64) -> (BigRational, BigRational) {
    bounds_from_harmonic(&harmonic(k.saturating_sub(1)), k, a)
}

fn bounds_from_harmonic(h: &BigRational, k: u64, a: u64) -> (BigRational, BigRational) {
    let scale = |c: u64| h * BigRational::from_integer(BigInt::from(c) * BigInt::from(k));
    (scale(a.saturating_sub(1)), scale(a))
}

/// Caches harmonic numbers so many `(k, a)` bounds can be evaluated cheaply.
pub struct BoundsTable {
    harmonic: Vec<BigRational>,
}

impl BoundsTable {
    pub fn new(k_max: u64) -> Self {
        let mut harmonic = Vec::with_capacity(k_max as usize);
        let mut h = BigRational::zero();
        harmonic.push(h.clone());
        for i in 1..k_max {
            h += BigRational::new(BigInt::one(), BigInt::from(i));
            harmonic.push(h.clone());
        }
        BoundsTable { harmonic }
    }

    /// Same as [`f_bounds`]; `k` must be at most the table's `k_max`.
    pub fn bounds(&self, k: u64, a: u64) -> (BigRational, BigRational) {
        bounds_from_harmonic(&self.harmonic[(k - 1) as usize], k, a)
    }

    /// Whether `lower <= v <= upper`, compared in integers.
    pub fn brackets(&self, k: u64, a: u64, v: u128) -> bool {
        let h = &self.harmonic[(k - 1) as usize];
        let (num, den) = (h.numer(), h.denom());
        let v = BigInt::from(v) * den;
        let lower = num * BigInt::from(u128::from(a.saturating_sub(1)) * u128::from(k));
        let upper = num * BigInt::from(u128::from(a) * u128::from(k));
        lower <= v && v <= upper
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Box sizes differing by at most one and summing to `t`, largest first.
pub fn near_equal_sizes(k: u64, t: u64) -> Vec<u64> {
    (0..k).map(|i| t / k + u64::from(i < t % k)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxPlayer {
    Maker,
    Breaker,
}

impl BoxPlayer {
    pub fn other(self) -> BoxPlayer {
        match self {
            BoxPlayer::Maker => BoxPlayer::Breaker,
            BoxPlayer::Breaker => BoxPlayer::Maker,
        }
    }
}

/// Winner under optimal play with BoxBreaker moving first.
pub fn exact_box_game_winner(sizes: &[u64], a: u64) -> Result<BoxPlayer, BoxError> {
    solve_box_game(sizes, a, BoxPlayer::Breaker)
}

/// Full minimax, memoized on the multiset of free counts of surviving boxes.
pub fn solve_box_game(sizes: &[u64], a: u64, first: BoxPlayer) -> Result<BoxPlayer, BoxError> {
    let total: u64 = sizes.iter().sum();
    if total > ORACLE_MAX_ELEMENTS {
        return Err(BoxError::OracleBudget(total));
    }
    let mut solver = Oracle {
        a,
        memo: HashMap::new(),
    };
    let mut start: Vec<u8> = sizes.iter().map(|&s| s as u8).collect();
    start.sort_unstable();
    Ok(if solver.maker_wins(start, first) {
        BoxPlayer::Maker
    } else {
        BoxPlayer::Breaker
    })
}

struct Oracle {
    a: u64,
    memo: HashMap<(Vec<u8>, BoxPlayer), bool>,
}

impl Oracle {
    fn maker_wins(&mut self, boxes: Vec<u8>, turn: BoxPlayer) -> bool {
        if boxes.first() == Some(&0) {
            return true;
        }
        if boxes.is_empty() {
            return false;
        }
        let key = (boxes, turn);
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let (boxes, _) = &key;
        let win = match turn {
            BoxPlayer::Breaker => (0..boxes.len())
                .filter(|&i| i == 0 || boxes[i] != boxes[i - 1])
                .all(|i| {
                    let mut next = boxes.clone();
                    next.remove(i);
                    self.maker_wins(next, BoxPlayer::Maker)
                }),
            BoxPlayer::Maker => {
                let total: u64 = boxes.iter().map(|&b| b as u64).sum();
                let take = self.a.min(total);
                let mut found = false;
                let mut cur = Vec::with_capacity(boxes.len());
                self.distribute(boxes, 0, take, &mut cur, &mut found);
                found
            }
        };
        self.memo.insert(key, win);
        win
    }

    fn distribute(&mut self, boxes: &[u8], i: usize, left: u64, cur: &mut Vec<u8>, found: &mut bool) {
        if *found {
            return;
        }
        if i == boxes.len() {
            if left == 0 {
                let mut next = cur.clone();
                next.sort_unstable();
                if self.maker_wins(next, BoxPlayer::Breaker) {
                    *found = true;
                }
            }
            return;
        }
        for c in 0..=left.min(boxes[i] as u64) {
            cur.push(boxes[i] - c as u8);
            self.distribute(boxes, i + 1, left - c, cur, found);
            cur.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSlot {
    pub free: u64,
    pub maker: u64,
    pub destroyed: bool,
}

/// A Box game in progress.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxGameState {
    pub boxes: Vec<BoxSlot>,
    pub a: u64,
    pub turn: BoxPlayer,
}

impl BoxGameState {
    /// Near-equal boxes with BoxBreaker to move.
    pub fn near_equal(k: u64, t: u64, a: u64) -> Self {
        BoxGameState::from_sizes(&near_equal_sizes(k, t), a)
    }

    pub fn from_sizes(sizes: &[u64], a: u64) -> Self {
        BoxGameState {
            boxes: sizes
                .iter()
                .map(|&s| BoxSlot {
                    free: s,
                    maker: 0,
                    destroyed: false,
                })
                .collect(),
            a,
            turn: BoxPlayer::Breaker,
        }
    }

    pub fn surviving(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.boxes.len()).filter(|&i| !self.boxes[i].destroyed)
    }

    pub fn winner(&self) -> Option<BoxPlayer> {
        if self.boxes.iter().any(|b| !b.destroyed && b.free == 0) {
            Some(BoxPlayer::Maker)
        } else if self.surviving().next().is_none() {
            Some(BoxPlayer::Breaker)
        } else {
            None
        }
    }

    /// BoxMaker's move as claims per box, summing to `min(a, free elements)`.
    ///
    /// If a surviving box has at most `a` free elements, the one with the
    /// fewest (lowest index on ties) is completed. Otherwise elements are
    /// taken one at a time from the surviving box with the most free
    /// elements, which keeps the boxes level. Leftover claims go to the
    /// lowest-index boxes that still have free elements.
    pub fn boxmaker_strategy_move(&self) -> Vec<u64> {
        let mut free: Vec<u64> = self.boxes.iter().map(|b| b.free).collect();
        let mut claims = vec![0u64; free.len()];
        let mut left = self.a;
        let alive: Vec<usize> = self.surviving().filter(|&i| free[i] > 0).collect();
        if let Some(&target) = alive
            .iter()
            .filter(|&&i| free[i] <= self.a)
            .min_by_key(|&&i| (free[i], i))
        {
            claims[target] = free[target];
            left -= free[target];
            free[target] = 0;
        } else {
            while left > 0 {
                let Some(&i) = alive
                    .iter()
                    .filter(|&&i| free[i] > 0)
                    .max_by_key(|&&i| (free[i], std::cmp::Reverse(i)))
                else {
                    break;
                };
                claims[i] += 1;
                free[i] -= 1;
                left -= 1;
            }
        }
        for i in 0..free.len() {
            if left == 0 {
                break;
            }
            let c = left.min(free[i]);
            claims[i] += c;
            free[i] -= c;
            left -= c;
        }
        claims
    }

    pub fn apply_maker(&mut self, claims: &[u64]) {
        for (slot, &c) in self.boxes.iter_mut().zip(claims) {
            debug_assert!(c <= slot.free);
            slot.free -= c;
            slot.maker += c;
        }
        self.turn = BoxPlayer::Breaker;
    }

    /// BoxBreaker claims one element of box `i`.
    pub fn apply_breaker(&mut self, i: usize) {
        let slot = &mut self.boxes[i];
        debug_assert!(slot.free > 0);
        slot.free -= 1;
        slot.destroyed = true;
        self.turn = BoxPlayer::Maker;
    }
}

/// Simple BoxBreaker opponents for the BoxMaker strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxBreakerHeuristic {
    /// Destroy the surviving box with the fewest free elements.
    MostFilled,
    /// Destroy the surviving box of smallest initial size.
    Smallest,
    Random,
}

impl BoxBreakerHeuristic {
    pub const ALL: [BoxBreakerHeuristic; 3] = [
        BoxBreakerHeuristic::MostFilled,
        BoxBreakerHeuristic::Smallest,
        BoxBreakerHeuristic::Random,
    ];

    pub fn choose<R: Rng>(self, state: &BoxGameState, rng: &mut R) -> Option<usize> {
        let alive: Vec<usize> = state.surviving().filter(|&i| state.boxes[i].free > 0).collect();
        match self {
            BoxBreakerHeuristic::MostFilled => alive.into_iter().min_by_key(|&i| (state.boxes[i].free, i)),
            BoxBreakerHeuristic::Smallest => alive
                .into_iter()
                .min_by_key(|&i| (state.boxes[i].free + state.boxes[i].maker, i)),
            BoxBreakerHeuristic::Random => {
                if alive.is_empty() {
                    None
                } else {
                    Some(alive[rng.gen_range(0..alive.len())])
                }
            }
        }
    }
}

/// Plays the BoxMaker strategy against `heuristic`, BoxBreaker first.
pub fn play_box_game<R: Rng>(sizes: &[u64], a: u64, heuristic: BoxBreakerHeuristic, rng: &mut R) -> BoxPlayer {
    let mut game = BoxGameState::from_sizes(sizes, a);
    loop {
        if let Some(w) = game.winner() {
            return w;
        }
        match game.turn {
            BoxPlayer::Breaker => match heuristic.choose(&game, rng) {
                Some(i) => game.apply_breaker(i),
                None => return BoxPlayer::Breaker,
            },
            BoxPlayer::Maker => {
                let claims = game.boxmaker_strategy_move();
                game.apply_maker(&claims);
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinBoxError {
    #[error("no free active box")]
    NoActiveBox,
    #[error("box {0} has no free element")]
    BoxExhausted(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinBoxCounts {
    pub maker: u64,
    pub breaker: u64,
}

/// `MinBox(n, D, alpha, budget)` bookkeeping. The danger of a box is
/// `w_B - budget * w_M`, where `budget` is the declared number of adversary
/// elements between two Maker moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinBoxState {
    boxes: Vec<MinBoxCounts>,
    size: u64,
    alpha: Ratio<i64>,
    budget: u64,
    pending: u64,
}

impl MinBoxState {
    pub fn new(n: usize, size: u64, alpha: Ratio<i64>, budget: u64) -> Self {
        MinBoxState {
            boxes: vec![MinBoxCounts::default(); n],
            size,
            alpha,
            budget,
            pending: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn counts(&self, i: usize) -> MinBoxCounts {
        self.boxes[i]
    }

    pub fn danger(&self, i: usize) -> i64 {
        self.boxes[i].breaker as i64 - (self.budget * self.boxes[i].maker) as i64
    }

    pub fn is_free(&self, i: usize) -> bool {
        self.boxes[i].maker + self.boxes[i].breaker < self.size
    }

    /// `w_M < alpha * D`.
    pub fn is_active(&self, i: usize) -> bool {
        // alpha is kept reduced with a positive denominator
        (self.boxes[i].maker as i128) * (*self.alpha.denom() as i128)
            < (*self.alpha.numer() as i128) * (self.size as i128)
    }

    pub fn free_elements(&self, i: usize) -> u64 {
        self.size - self.boxes[i].maker - self.boxes[i].breaker
    }

    /// Adversary elements added since Maker last claimed.
    pub fn pending_adversary(&self) -> u64 {
        self.pending
    }

    /// `budget (ln n + 1)`.
    pub fn danger_bound(&self) -> f64 {
        self.budget as f64 * ((self.boxes.len() as f64).ln() + 1.0)
    }

    /// The free active box of maximum danger, lowest index on ties.
    pub fn max_danger_box(&self) -> Option<usize> {
        (0..self.boxes.len())
            .filter(|&i| self.is_free(i) && self.is_active(i))
            .max_by_key(|&i| (self.danger(i), std::cmp::Reverse(i)))
    }

    /// Maker claims one element of the free active box of maximum danger.
    pub fn maker_move(&mut self) -> Result<usize, MinBoxError> {
        let i = self.max_danger_box().ok_or(MinBoxError::NoActiveBox)?;
        self.boxes[i].maker += 1;
        self.pending = 0;
        Ok(i)
    }

    /// Maker claims up to `count` free elements of box `i`; returns how many
    /// she got.
    pub fn maker_claim(&mut self, i: usize, count: u64) -> u64 {
        let got = count.min(self.free_elements(i));
        self.boxes[i].maker += got;
        self.pending = 0;
        got
    }

    /// Adds adversary elements; all-or-nothing.
    pub fn breaker_apply(&mut self, increments: &[(usize, u64)]) -> Result<(), MinBoxError> {
        let mut need = vec![0u64; self.boxes.len()];
        for &(i, c) in increments {
            need[i] += c;
            if need[i] > self.free_elements(i) {
                return Err(MinBoxError::BoxExhausted(i));
            }
        }
        for &(i, c) in increments {
            self.boxes[i].breaker += c;
            self.pending += c;
        }
        Ok(())
    }

    /// Largest danger among free active boxes.
    pub fn max_active_danger(&self) -> Option<i64> {
        (0..self.boxes.len())
            .filter(|&i| self.is_free(i) && self.is_active(i))
            .map(|i| self.danger(i))
            .max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f_examples() {
        assert_eq!(f(1, 5), Ok(0));
        assert_eq!(f(2, 3), Ok(6));
        // f(2,2) = 4, then floor(3 (4 + 2) / 2) = 9
        assert_eq!(f(2, 2), Ok(4));
        assert_eq!(f(3, 2), Ok(9));
        assert_eq!(f(4, 2), Ok(14));
        assert!(matches!(f(0, 1), Err(BoxError::InvalidArgument { .. })));
        assert_eq!(f_row(4, 2), Ok(vec![0, 4, 9, 14]));
    }

    #[test]
    fn bounds_examples() {
        let (lo, hi) = f_bounds(3, 2);
        assert_eq!(lo, BigRational::new(9.into(), 2.into()));
        assert_eq!(hi, BigRational::from_integer(9.into()));
        let (lo, hi) = f_bounds(2, 3);
        assert_eq!(
            (lo, hi),
            (BigRational::from_integer(4.into()), BigRational::from_integer(6.into()))
        );
        let table = BoundsTable::new(50);
        assert_eq!(table.bounds(37, 5), f_bounds(37, 5));
        assert!(table.brackets(2, 3, 4) && table.brackets(2, 3, 6));
        assert!(!table.brackets(2, 3, 3) && !table.brackets(2, 3, 7));
        assert!(table.brackets(3, 2, 9) && !table.brackets(3, 2, 4));
    }

    #[test]
    fn criterion_examples() {
        assert!(boxmaker_wins(1, 0, 3));
        assert!(boxmaker_wins(2, 6, 3));
        assert!(!boxmaker_wins(2, 7, 3));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(exact_box_game_winner(&[2, 2], 2), Ok(BoxPlayer::Maker));
        assert_eq!(exact_box_game_winner(&[3, 3], 2), Ok(BoxPlayer::Breaker));
        // BoxBreaker takes the only element before BoxMaker moves
        assert_eq!(exact_box_game_winner(&[1], 1), Ok(BoxPlayer::Breaker));
        assert_eq!(solve_box_game(&[1], 1, BoxPlayer::Maker), Ok(BoxPlayer::Maker));
        // with BoxMaker to move, one element in each box sets up a double threat
        assert_eq!(solve_box_game(&[3, 3], 2, BoxPlayer::Maker), Ok(BoxPlayer::Maker));
        assert_eq!(exact_box_game_winner(&[10, 9], 2), Err(BoxError::OracleBudget(19)));
    }

    #[test]
    fn f_4_2_matches_oracle() {
        let v = f(4, 2).unwrap() as u64;
        assert_eq!(exact_box_game_winner(&near_equal_sizes(4, v), 2), Ok(BoxPlayer::Maker));
        assert_eq!(
            exact_box_game_winner(&near_equal_sizes(4, v + 1), 2),
            Ok(BoxPlayer::Breaker)
        );
    }

    #[test]
    fn boxmaker_move_examples() {
        let mut g = BoxGameState::from_sizes(&[2, 2], 2);
        g.turn = BoxPlayer::Maker;
        assert_eq!(g.boxmaker_strategy_move(), vec![2, 0]);
        let mut g = BoxGameState::from_sizes(&[5, 3, 4], 3);
        g.apply_breaker(1);
        // one surviving box within reach is finished
        let mut h = g.clone();
        h.boxes[2].free = 3;
        assert_eq!(h.boxmaker_strategy_move(), vec![0, 0, 3]);
        // otherwise the largest boxes are levelled
        assert_eq!(g.boxmaker_strategy_move(), vec![2, 0, 1]);
        // nothing survives: claims spill anywhere
        let mut d = BoxGameState::from_sizes(&[3, 3], 2);
        d.boxes.iter_mut().for_each(|b| b.destroyed = true);
        assert_eq!(d.boxmaker_strategy_move(), vec![2, 0]);
        assert_eq!(d.winner(), Some(BoxPlayer::Breaker));
    }

    #[test]
    fn strategy_beats_heuristics_when_criterion_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=6u64 {
            for a in 1..=4u64 {
                let fk = f(k, a).unwrap() as u64;
                for t in 0..=fk {
                    for h in BoxBreakerHeuristic::ALL {
                        let sizes = near_equal_sizes(k, t);
                        assert_eq!(
                            play_box_game(&sizes, a, h, &mut rng),
                            BoxPlayer::Maker,
                            "k={k} a={a} t={t} {h:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn minbox_examples() {
        let alpha = Ratio::new(1, 2);
        let mut s = MinBoxState::new(3, 10, alpha, 2);
        assert_eq!(s.maker_move(), Ok(0));
        let mut s = MinBoxState::new(3, 10, alpha, 2);
        s.breaker_apply(&[(0, 5), (1, 2)]).unwrap();
        assert_eq!(s.maker_move(), Ok(0));
        let mut s = MinBoxState::new(2, 10, alpha, 2);
        s.breaker_apply(&[(0, 4), (1, 4)]).unwrap();
        s.maker_claim(0, 1);
        assert_eq!((s.danger(0), s.danger(1)), (2, 4));
        assert_eq!(s.maker_move(), Ok(1));
    }

    #[test]
    fn minbox_breaker_increments() {
        let mut s = MinBoxState::new(4, 3, Ratio::new(1, 2), 1);
        s.breaker_apply(&[(1, 1), (2, 1)]).unwrap();
        assert_eq!(s.counts(1).breaker, 1);
        assert_eq!(s.pending_adversary(), 2);
        let before = s.clone();
        s.breaker_apply(&[]).unwrap();
        assert_eq!(s, before);
        s.breaker_apply(&[(3, 3)]).unwrap();
        assert_eq!(s.breaker_apply(&[(0, 1), (3, 1)]), Err(MinBoxError::BoxExhausted(3)));
        assert_eq!(s.counts(0).breaker, 0);
        assert!(!s.is_free(3));
    }

    #[test]
    fn minbox_no_active_box() {
        let mut s = MinBoxState::new(2, 4, Ratio::new(1, 2), 1);
        assert_eq!(s.maker_claim(0, 2), 2);
        assert!(!s.is_active(0));
        s.maker_claim(1, 2);
        assert_eq!(s.maker_move(), Err(MinBoxError::NoActiveBox));
    }
}
