//! The two computational engines: exact rational LP feasibility for convex
//! membership certificates, and float multi-start maximization with a
//! lower-bound-only contract.

mod maximize;
mod simplex;

pub use maximize::{
    maximize, Domain, MaximizeOptions, MaximizeOutcome, OrbitTube, Region, RestartOutcome,
    BALL_FEASIBILITY_TOL, SLICE_RESIDUAL_TOL,
};
pub use simplex::{conv_membership, ConvexCombination};
