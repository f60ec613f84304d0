//! Error type shared by the whole crate.

use crate::simplex::{Simplex, VertexId};
use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants split into two broad classes: problems with the caller's input
/// (malformed files, preconditions not met) and violations of structural laws
/// that hold on systolic complexes. The latter are deliberately loud: when a
/// projection is not a single simplex or a matching leaves stray critical
/// cells, that is evidence the input is not systolic (or a bug), never
/// something to patch up quietly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("unknown simplex {0}: not a face of the complex")]
    UnknownSimplex(Simplex),

    #[error("degenerate join: vertex {vertex} already lies in {simplex}")]
    DegenerateJoin { simplex: Simplex, vertex: VertexId },

    #[error("invalid collapse at {simplex}: {reason}")]
    InvalidCollapse { simplex: Simplex, reason: String },

    #[error("capacity exceeded for {what}: {actual} over the bound {bound}")]
    Capacity {
        what: String,
        bound: usize,
        actual: usize,
    },

    #[error("vertices {from} and {to} lie in different components")]
    Unreachable { from: VertexId, to: VertexId },

    #[error("simplex {0} is not contained in the 1-ball around the base subcomplex")]
    OutOfBall(Simplex),

    #[error("simplex {0} has vertices at mixed distances; rays start on a sphere")]
    NotSpherical(Simplex),

    #[error(
        "projection of {simplex} is not a single simplex (candidate vertices {candidates:?}); \
         the base is not convex or the ambient complex is not systolic"
    )]
    ProjectionNotSimplex {
        simplex: Simplex,
        candidates: Vec<VertexId>,
    },

    #[error("ball tower cross-check failed at radius {radius}: {detail}")]
    ConvexityViolation { radius: usize, detail: String },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("pointer undefined for {0}: it contains the base vertex")]
    UndefinedPointer(Simplex),

    #[error(
        "no pointer available for {0}: it is the join of its top-level part with that part's \
         full projection, so it can only appear as the image of a matching"
    )]
    PointerUnavailable(Simplex),

    #[error(
        "pointer join of {simplex} with {pointer} is not a face; \
         the input is not systolic or the matching construction is broken"
    )]
    PointerJoinNotFace { simplex: Simplex, pointer: VertexId },

    #[error(
        "matching conflict on {target}: already paired with {first_src}, \
         now demanded by {second_src}"
    )]
    MatchingConflict {
        target: Simplex,
        first_src: Simplex,
        second_src: Simplex,
    },

    #[error("single-critical-cell violation: unmatched simplices {0:?} besides the base vertex")]
    SingleCriticalCell(Vec<Simplex>),

    #[error("collapse scheduling failed: pair ({0}, {1}) never became free")]
    Scheduling(Simplex, Simplex),

    #[error("generator contract violation: {0}")]
    GeneratorContract(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by the caller's input or arguments, as opposed
    /// to violations of structural laws detected during computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedInput(_)
                | Error::Io(_)
                | Error::UnknownSimplex(_)
                | Error::InvalidCollapse { .. }
                | Error::Capacity { .. }
                | Error::Unreachable { .. }
                | Error::OutOfBall(_)
                | Error::NotSpherical(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
