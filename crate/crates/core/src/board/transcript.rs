//! Line-delimited JSON transcripts.
//!
//! A transcript file holds one JSON object per line:
//!
//! ```text
//! {"record":"header","format":"walker-breaker-transcript","version":1,"n":..,...}
//! {"record":"round","round":1,"breaker_edges":[[0,1]],"walker_steps":[[2,3],[3,4]],"annotations":[]}
//! ...
//! {"record":"footer","outcome":"walker_win","rounds":..,...}
//! ```
//!
//! Within a round the moves are applied in the order given by the header's
//! `first_player`. A side that did not move in the final round has `null`.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::referee::Goal;
use super::state::{BreakerMove, ConfigError, Edge, GameState, MoveError, Player, Status, Vertex, WalkerMove};
use crate::audit::AuditEvent;

pub const TRANSCRIPT_FORMAT: &str = "walker-breaker-transcript";
pub const TRANSCRIPT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub walker_bias: usize,
    pub breaker_bias: usize,
    pub goal: Goal,
    pub walker: String,
    pub breaker: String,
    pub seed: u64,
    pub first_player: Player,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExposureResult {
    /// Success on a free pair, now Walker's.
    Claimed,
    /// Success on a pair Walker already owned.
    AlreadyOwned,
    /// Success on a Breaker pair.
    TypeII,
    /// No success among the remaining pairs at the vertex.
    TypeI,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Annotation {
    Audit(AuditEvent),
    Exposure {
        vertex: Vertex,
        tossed: u32,
        success: Option<Vertex>,
        result: ExposureResult,
    },
    /// Pairs exposed in one sweep after the main exposure stage ended.
    Sweep {
        exposed: u32,
        successes: u32,
        owned: u32,
    },
    Isolated {
        vertex: Vertex,
    },
    Resign {
        reason: String,
    },
    Note {
        text: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u32,
    pub breaker_edges: Option<Vec<Edge>>,
    pub walker_steps: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default)]
    pub annotations: Vec<Annotation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Footer {
    pub outcome: Status,
    pub rounds: u32,
    pub walker_edges: usize,
    pub breaker_edges: usize,
    pub win_round: Option<u32>,
    pub isolated_vertex: Option<Vertex>,
    #[serde(default)]
    pub annotations: Vec<Annotation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Line {
    Header(Header),
    Round(RoundRecord),
    Footer(Footer),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transcript {
    pub header: Header,
    pub rounds: Vec<RoundRecord>,
    pub footer: Option<Footer>,
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {0}: expected a header record first")]
    MissingHeader(usize),
    #[error("unsupported transcript format {0:?} version {1}")]
    Unsupported(String, u32),
    #[error("record after footer on line {0}")]
    TrailingRecord(usize),
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("round {round}: {source}")]
    Move { round: u32, source: MoveError },
}

/// Something applied during replay, reported to [`Transcript::replay_with`].
pub enum ReplayStep<'a> {
    Breaker(&'a BreakerMove),
    Walker(&'a WalkerMove),
}

impl Transcript {
    pub fn new(header: Header) -> Self {
        Transcript {
            header,
            rounds: Vec::new(),
            footer: None,
        }
    }

    pub fn annotations(&self) -> impl Iterator<Item = &Annotation> {
        self.rounds
            .iter()
            .flat_map(|r| r.annotations.iter())
            .chain(self.footer.iter().flat_map(|f| f.annotations.iter()))
    }

    pub fn audit_events(&self) -> impl Iterator<Item = &AuditEvent> {
        self.annotations().filter_map(|a| match a {
            Annotation::Audit(e) => Some(e),
            _ => None,
        })
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut put = |line: &Line| -> io::Result<()> {
            serde_json::to_writer(&mut out, line)?;
            out.write_all(b"\n")
        };
        put(&Line::Header(self.header.clone()))?;
        for r in &self.rounds {
            put(&Line::Round(r.clone()))?;
        }
        if let Some(f) = &self.footer {
            put(&Line::Footer(f.clone()))?;
        }
        Ok(())
    }

    pub fn to_jsonl_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self, TranscriptError> {
        let mut transcript: Option<Transcript> = None;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Line =
                serde_json::from_str(&line).map_err(|source| TranscriptError::Json { line: i + 1, source })?;
            match (rec, transcript.as_mut()) {
                (Line::Header(h), None) => {
                    if h.format != TRANSCRIPT_FORMAT || h.version != TRANSCRIPT_VERSION {
                        return Err(TranscriptError::Unsupported(h.format, h.version));
                    }
                    transcript = Some(Transcript::new(h));
                }
                (_, None) => return Err(TranscriptError::MissingHeader(i + 1)),
                (_, Some(t)) if t.footer.is_some() => return Err(TranscriptError::TrailingRecord(i + 1)),
                (Line::Round(r), Some(t)) => t.rounds.push(r),
                (Line::Footer(f), Some(t)) => t.footer = Some(f),
                (Line::Header(_), Some(_)) => return Err(TranscriptError::TrailingRecord(i + 1)),
            }
        }
        transcript.ok_or(TranscriptError::MissingHeader(0))
    }

    /// Re-applies every recorded move to a fresh board and closes it with
    /// the recorded outcome.
    pub fn replay(&self) -> Result<GameState, ReplayError> {
        self.replay_with(|_, _| {})
    }

    /// Like [`Transcript::replay`], calling `visit` after every applied move.
    pub fn replay_with<F>(&self, mut visit: F) -> Result<GameState, ReplayError>
    where
        F: FnMut(&GameState, ReplayStep<'_>),
    {
        let h = &self.header;
        let mut state = GameState::with_walker_bias(h.n, h.walker_bias, h.breaker_bias, h.first_player)?;
        for r in &self.rounds {
            let err = |source| ReplayError::Move { round: r.round, source };
            let breaker = r.breaker_edges.clone().map(BreakerMove::new);
            let walker = r.walker_steps.clone().map(|steps| WalkerMove { steps });
            let order = match h.first_player {
                Player::Breaker => [Player::Breaker, Player::Walker],
                Player::Walker => [Player::Walker, Player::Breaker],
            };
            for who in order {
                match who {
                    Player::Breaker => {
                        if let Some(mv) = &breaker {
                            state.apply_breaker_move(mv).map_err(err)?;
                            visit(&state, ReplayStep::Breaker(mv));
                        }
                    }
                    Player::Walker => {
                        if let Some(mv) = &walker {
                            state.apply_walker_move(mv).map_err(err)?;
                            visit(&state, ReplayStep::Walker(mv));
                        }
                    }
                }
            }
        }
        if let Some(f) = &self.footer {
            if f.outcome != Status::Running {
                state.finish(f.outcome);
            }
        }
        Ok(state)
    }
}
