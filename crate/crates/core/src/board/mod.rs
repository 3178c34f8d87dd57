//! Referee for biased `(a:b)` Walker–Breaker games on `K_n`.
//!
//! Breaker claims `b` free edges per move. Walker moves along a walk of `a`
//! steps from her current position, claiming every free edge she crosses;
//! she may re-use her own edges but never cross Breaker's. Vertices are
//! `0..n` and edges are normalized unordered pairs.

mod referee;
mod state;
mod transcript;

pub use referee::{goal_blocked_at, goal_reached, play_game, GameRecord, Goal, MatchConfig, PlayError};
pub use state::{
    pair_count, BreakerMove, ConfigError, Edge, GameState, MoveError, Owner, Player, Status, Vertex, WalkerMove,
};
pub use transcript::{
    Annotation, ExposureResult, Footer, Header, ReplayError, ReplayStep, RoundRecord, Transcript, TranscriptError,
    TRANSCRIPT_FORMAT, TRANSCRIPT_VERSION,
};
