use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("letter {letter} out of range for {n} strands")]
    LetterOutOfRange { letter: i64, n: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("free group ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator index {gen} out of range for rank {n}")]
    GenOutOfRange { gen: usize, n: usize },
    #[error("bad strand count {0}")]
    BadStrandCount(usize),
    #[error("invalid motion: {0}")]
    InvalidMotion(String),
    #[error("motion is not generic: {0}")]
    NotGeneric(String),
    #[error("crossing events at t = {0} and t = {1} coincide")]
    SimultaneousEvents(f64, f64),
    #[error("target is off the T")]
    OffT,
    #[error("route blocked by dowel {0}")]
    Collision(usize),
    #[error("the stem is occupied by dowel {0}")]
    StemOccupied(usize),
    #[error("dowel must be at the junction to enter the stem")]
    NotAtJunction,
    #[error("no dowel labelled {0}")]
    UnknownDowel(usize),
    #[error("unknown session {0}")]
    UnknownSession(u64),
    #[error("invalid render options: {0}")]
    InvalidRenderOptions(String),
}

impl Error {
    /// Stable error code used on the wire.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedToken(_) => "MalformedToken",
            Error::LetterOutOfRange { .. } => "LetterOutOfRange",
            Error::StrandMismatch(..) => "StrandMismatch",
            Error::RankMismatch(..) => "RankMismatch",
            Error::GenOutOfRange { .. } => "GenOutOfRange",
            Error::BadStrandCount(_) => "BadStrandCount",
            Error::InvalidMotion(_) => "InvalidMotion",
            Error::NotGeneric(_) => "NotGeneric",
            Error::SimultaneousEvents(..) => "SimultaneousEvents",
            Error::OffT => "OffT",
            Error::Collision(_) => "Collision",
            Error::StemOccupied(_) => "StemOccupied",
            Error::NotAtJunction => "NotAtJunction",
            Error::UnknownDowel(_) => "UnknownDowel",
            Error::UnknownSession(_) => "UnknownSession",
            Error::InvalidRenderOptions(_) => "InvalidRenderOptions",
        }
    }

    /// True for errors raised while reading user text rather than by the
    /// mathematics itself.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedToken(_) | Error::LetterOutOfRange { .. } | Error::GenOutOfRange { .. }
        )
    }
}
