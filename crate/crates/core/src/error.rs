use thiserror::Error;

use crate::lattice::SurfaceKey;
use crate::recipes::Region;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("divisor classes live on different surfaces ({left} vs {right})")]
    AmbientMismatch { left: SurfaceKey, right: SurfaceKey },

    #[error("class has {found} coordinates but the surface has Picard rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error(
        "{0} is not divisible by 2 in the Picard lattice; no Z2^2-cover has this building data"
    )]
    Parity(&'static str),

    #[error("line bundle L{0} is the zero class")]
    TrivialLineBundle(usize),

    #[error("unsupported class for h0: {0}")]
    UnsupportedClass(String),

    #[error("invalid building data: {0}")]
    InvalidBuildingData(String),

    #[error("branch locus is not reduced (component {0:?} is repeated)")]
    NonReduced(String),

    #[error("point {0:?} is not a triple point of the branch locus")]
    NotTriplePoint(String),

    #[error("triple points can only be resolved on Hirzebruch surfaces and their blow-ups")]
    ResolutionOnPlane,

    #[error("negative irregularity q = {0}")]
    NegativeIrregularity(i64),

    #[error("(K^2, chi) = ({ksq}, {chi}) is not admissible")]
    NotAdmissible { ksq: i64, chi: i64 },

    #[error("(K^2, chi) = ({ksq}, {chi}) is admissible but not covered: it lies in the gap 8chi-8 < K^2 <= 9chi, K^2 != 8chi, which no construction reaches")]
    NotCovered { ksq: i64, chi: i64 },

    #[error("region {0} has no non-Gorenstein degeneration (only 2chi-6 <= K^2 <= 8chi-8 does)")]
    NotDegenerable(Region),

    #[error("no free intersection point of D{first} and D{second} is left to mark ({available} available)")]
    InsufficientPoints {
        first: usize,
        second: usize,
        available: i64,
    },

    #[error("degeneration is normal; there is nothing to normalize")]
    NormalDegeneration,

    #[error("unknown output format {0:?} (expected csv, json or svg)")]
    UnknownFormat(String),

    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
