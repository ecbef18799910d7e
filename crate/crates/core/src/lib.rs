//! Finite-dimensional CL-spaces with absolute norms, driven by their graphs.
//!
//! A normalized absolute norm on `n` coordinates induces a graph on
//! `{0,…,n−1}` with an edge `(i,j)` exactly when `‖e_i + e_j‖ > 1`. The space
//! is a CL-space if and only if that graph is perfect and every maximal
//! clique meets every maximal stable set in exactly one vertex. This crate
//! builds on that correspondence:
//!
//! * [`graph`] — exact combinatorics on small graphs (cliques, stable sets,
//!   clique and chromatic numbers, perfectness) over single-word bitsets;
//! * [`space`] — validated CL-spaces, exact clique-max norms, and extreme
//!   point enumeration for the primal and dual balls;
//! * [`poly`] — sparse homogeneous polynomials and the explicit peak
//!   constructions that strongly attain their norms;
//! * [`numerics`] — exact rational convex-membership certificates and a
//!   seeded multi-start maximizer (lower bounds only, never suprema);
//! * [`analysis`] — the verdict layer: attainment verification, complex
//!   extreme points, polynomial-index classification, numerical radius
//!   bounds, and a peak-sharpening perturbation step;
//! * [`survey`] — batch enumeration of all graphs on `n` vertices with
//!   CL classification.
//!
//! All vertices are 0-based everywhere, including JSON input and reports.
//! Every numeric result is tagged exact (arbitrary-precision rational) or
//! float, and nothing labeled exact ever passes through a float.

pub mod analysis;
pub mod bitset;
mod error;
pub mod exec;
pub mod graph;
pub mod numerics;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod space;
pub mod survey;

pub use error::{Error, Result};
pub use graph::Graph;
pub use poly::HomPoly;
pub use scalar::{ExactComplex, Rat, Value, Vector};
pub use space::{ClReport, Field, Space};
