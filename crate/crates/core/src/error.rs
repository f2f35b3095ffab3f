use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("players do not share a common action list")]
    DifferentActionSets,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation requires exactly two players, game has {0}")]
    NotTwoPlayers(usize),

    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("coordinate {coordinate} out of range for tuples of length {len}")]
    BadCoordinate { coordinate: usize, len: usize },

    #[error("players draw their types from different label sets")]
    TypeSetsDiffer,

    #[error("unknown type {label:?} for player {player}")]
    UnknownType { player: usize, label: String },

    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("not a partition of the type carrier: {0}")]
    NotAPartition(String),

    #[error("invalid type space: {0}")]
    InvalidSpace(String),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("game has no superrationally justifiable action")]
    NoJustifiableAction,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
