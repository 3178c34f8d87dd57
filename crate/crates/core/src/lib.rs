//! Simulator for biased `(2:b)` Walker–Breaker games on the complete graph.
//!
//! * [`board`]: referee, game state and replayable transcripts.
//! * [`graph`]: connectivity, exact Hamiltonicity and degree statistics.
//! * [`boxgame`]: the Box game threshold `f(k, a)`, a minimax oracle and the
//!   MinBox danger game.
//! * [`strategy`]: Walker and Breaker strategies behind one interface.
//! * [`experiment`]: seeded batches, bias sweeps, audit reports and tables.

pub mod audit;
pub mod board;
pub mod boxgame;
pub mod experiment;
pub mod graph;
pub mod strategy;
