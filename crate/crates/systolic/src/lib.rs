//! Combinatorial machinery for locally 6-large (systolic) simplicial
//! complexes.
//!
//! The crate covers four connected layers:
//!
//! * [`complex`] / [`subcomplex`] — finite simplicial complexes with their
//!   elementary operations: links, stars, full subcomplexes, free faces,
//!   elementary collapses, combinatorial distance.
//! * [`verify`] / [`homology`] — the curvature-style conditions: full
//!   cycles, systole, k-largeness and local k-largeness, 3-convexity and
//!   convexity, and the systolic verdict (with an integral H1 proxy standing
//!   in for simple connectivity).
//! * [`projection`] — combinatorial balls and spheres around a convex base,
//!   elementary projections, projection rays and directed geodesics,
//!   together with an exhaustive uniqueness oracle.
//! * [`morse`] — gradient matchings pointed along projections toward a base
//!   vertex, validation as acyclic discrete vector fields, collapse-sequence
//!   extraction with a replay check, and a brute-force collapsibility
//!   oracle. [`arborescent`] iterates the pipeline over growing ball
//!   truncations of locally finite complexes.
//!
//! Everything is deterministic: faces are kept in (dimension, lexicographic)
//! order, so identical inputs produce byte-identical matchings, rays and
//! reports.

pub mod arborescent;
pub mod complex;
pub mod dot;
pub mod error;
pub mod homology;
pub mod io;
pub mod morse;
pub mod projection;
pub mod simplex;
pub mod subcomplex;
pub mod verify;

pub use complex::{Complex, Link, PseudomanifoldFailure, PseudomanifoldReport};
pub use error::{Error, Result};
pub use simplex::{Simplex, VertexId};
pub use subcomplex::{star, ConvexityFlags, SubcomplexHandle, TriState};

pub use homology::HomologyReport;
pub use verify::{
    is_3_convex, is_convex, is_k_large, is_k_systolic, is_locally_k_large, is_systolic, systole,
    FullCycle, LargenessReport, Systole, SystolicReport,
};

pub use projection::{
    directed_geodesic, elementary_projection, enumerate_directed_geodesics, is_directed_geodesic,
    projection_ray, BallTower, GeodesicCheck, SequenceKind, SimplexSequence,
};

pub use morse::{
    acyclicity, brute_force_collapsible, collapse_sequence, gradient_matching, pointer_function,
    validate_vector_field, AcyclicityCertificate, PointerAssignment, PointerCase, VectorField,
};

pub use arborescent::{
    ball_filtration_check, hex_plane_generator, ComplexGenerator, FacetStreamGenerator,
    FiltrationReport, LevelReport,
};

// compile-check the README examples
#[doc = include_str!("../../../README.md")]
#[cfg(doctest)]
pub struct ReadmeDoctests;
