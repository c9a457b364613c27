//! Exact GF(2) machinery for connection matrices, transition matrices and
//! the sweeping method.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion `conley` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod braid;
pub mod fixtures;
pub mod gf2;
pub mod morse;
pub mod poset;
pub mod sweeping;
pub mod transition;

pub use braid::{
    check_connection_matrix, validate_connection_matrix, BraidError, ConnectionMatrix, Generator,
    GradedBasis, HomologyClass, HomologyResult, LesNode, LesResult, ValidationReport,
};
pub use gf2::{solve_affine, AffineSolutionSet, Gf2Error, Gf2Matrix, Gf2Vector};
pub use morse::{
    assemble_block_gttm, build_morse_complex, verify_unique_gttm, BlockTransition, CriticalPoint,
    MorseData, MorseError, UniquenessReport,
};
pub use poset::{AdjacentPair, FinitePoset, Interval, PosetError};
pub use sweeping::{
    preserved_pivots, ss_oracle, ss_pages, sweep, verify_prop41, PivotKind, SpectralPage, Sweep,
    SweepError, SweepState,
};
pub use transition::{
    certify_ucc, check_chain_map, enumerate_gttm, induced_map, pivot_relation_check, verify_gttm,
    CoverData, CoverEntry, CoverError, GttmReport, GttmSolutionSet, ShapeReport, ShapeViolation,
    TransitionCandidate, TransitionError, UccCertificate,
};
