use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid profile: {}", join_ballot_errors(.0))]
    InvalidProfile(Vec<BallotError>),
    #[error("{what} exceeds the exact-computation guard ({detail}){}", hint.map(|h| format!("; {h}")).unwrap_or_default())]
    TooLarge {
        what: &'static str,
        detail: String,
        hint: Option<&'static str>,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

/// A single voter's rank assignment that is not a weak order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallotError {
    pub voter: usize,
    pub kind: BallotErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallotErrorKind {
    ZeroRank { candidate: usize },
    UnknownCandidate { candidate: usize },
    DuplicateCandidate { candidate: usize },
    /// `rank` differs from the number of strictly better candidates plus one.
    InconsistentRank {
        candidate: usize,
        rank: u32,
        expected: u32,
    },
}

impl fmt::Display for BallotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "voter {}: ", self.voter)?;
        match &self.kind {
            BallotErrorKind::ZeroRank { candidate } => {
                write!(f, "candidate {candidate} has rank 0")
            }
            BallotErrorKind::UnknownCandidate { candidate } => {
                write!(f, "candidate {candidate} is out of range")
            }
            BallotErrorKind::DuplicateCandidate { candidate } => {
                write!(f, "candidate {candidate} is ranked twice")
            }
            BallotErrorKind::InconsistentRank {
                candidate,
                rank,
                expected,
            } => write!(
                f,
                "candidate {candidate} has rank {rank} but {} candidates rank strictly higher (expected {expected})",
                expected - 1
            ),
        }
    }
}

fn join_ballot_errors(errors: &[BallotError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
