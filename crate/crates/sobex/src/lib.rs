//! Constructive machinery around Sobolev homeomorphic extensions of circle
//! embeddings: internal (geodesic) distances in polygonal Jordan domains, the
//! classical and internal p-Douglas functionals evaluated through a dyadic
//! product decomposition, a geodesic-crosscut extension builder with energy
//! accounting, grid maximal operators, and two counterexample generators with
//! convergence/divergence diagnostics.
//!
//! Entry points by topic:
//! - [`geometry`]: polygonal domains, containment, internal distance.
//! - [`conformal`]: numerical Riemann map onto a polygon, hyperbolic geodesics.
//! - [`douglas`]: dyadic arcs, boundary maps, Douglas integral reports.
//! - [`extension`]: the crosscut/ceiling/cell pipeline and homeomorphism checks.
//! - [`maximal`]: Hardy-Littlewood / spherical / interpolated maximal operators.
//! - [`counterexamples`]: rectifiable zigzag (p > 2) and W^{1,1} constructions.
//! - [`cli`]: command implementations behind the `sobex` binary.

pub mod cli;
pub mod conformal;
pub mod counterexamples;
pub mod douglas;
pub mod error;
pub mod extension;
pub mod fitting;
pub mod geometry;
pub mod io;
pub mod maximal;
pub mod quadrature;
pub mod svg;

pub use error::{Error, Result};
