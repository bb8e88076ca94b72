use thiserror::Error;

use crate::graph::Edge;
use crate::rational::Rational;

/// Every failure surfaced by the library.
///
/// Node numbers in messages are one-based, matching the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("at least two players are required, got {0}")]
    TooFewPlayers(usize),
    #[error("{0} nodes requested, at most 64 are supported")]
    TooManyNodes(usize),
    #[error("expected {expected} alpha values, got {got}")]
    AlphaCount { expected: usize, got: usize },
    #[error("negative alpha {value} for player {player}")]
    NegativeAlpha { player: usize, value: Rational },
    #[error("node {0} does not exist")]
    UnknownNode(usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("original edge {0} touches a player")]
    OriginalTouchesPlayer(Edge),
    #[error("unsustainable non-player edge {0}: no player is adjacent to both endpoints")]
    Unsustainable(Edge),
    #[error("sustainer {player} of {edge} is not a player adjacent to both endpoints")]
    BadSustainer { edge: Edge, player: usize },
    #[error("sustainer given for {0}, which is not an added non-player edge")]
    StraySustainer(Edge),
    #[error("node {node} is not a {expected}")]
    WrongRole { node: usize, expected: &'static str },
    #[error("networks disagree on the node partition or original edges")]
    Mismatch,
    #[error("{algorithm} precondition violated: {detail}")]
    Precondition { algorithm: &'static str, detail: String },
    #[error("input network is not pairwise stable: {0}")]
    NotStable(String),
    #[error("edge inclusion violated: {0}")]
    Inclusion(String),
    #[error("game does not satisfy the required alpha pattern: {0}")]
    AlphaPattern(String),
    #[error("strength k={k} must lie in 1..={players}")]
    Strength { k: usize, players: usize },
    #[error("beta {0} must lie strictly between 2 and 3")]
    BetaOutOfRange(String),
    #[error("fast verifier and exhaustive search disagree: {0}")]
    OracleDisagreement(String),
    #[error("{edges} variable edges exceed the exhaustive-search budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
