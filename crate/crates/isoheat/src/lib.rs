//! Numerical laboratory for heat traces and heat contents.
//!
//! The crate evaluates, with certified truncation bounds, the heat trace
//! `Z(t) = sum_j e^{-t lambda_j}` and the heat content
//! `Q(t) = sum_j e^{-t lambda_j} (int phi_j)^2` of
//!
//! * explicit planar domains built from rectangles and right isosceles
//!   triangles with per-edge Dirichlet/Neumann conditions ([`geometry`],
//!   [`spectra`], [`heatfun`]),
//! * self-similar disjoint unions `P ∪ αP ∪ α²P ∪ …` and their log-periodic
//!   small-time expansions ([`fractal`]),
//! * 1-D Schrödinger operators `-d²/dx² + q` on `[0,1]` with Dirichlet ends,
//!   including two explicit isospectral deformation families ([`sturm`]).
//!
//! [`report`] packages the quantitative cross-checks behind the `isoheat`
//! command-line tool.

pub mod error;
pub mod fractal;
pub mod geometry;
pub mod heatfun;
pub mod quad;
pub mod report;
pub mod spectra;
pub mod sturm;

pub use error::{Error, Result};
