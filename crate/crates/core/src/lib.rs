//! Midpoint (developing) map on marked n-gons, dedal polygons, and outer billiards.
//!
//! A polygon is an ordered tuple of complex vertices `(z_1, ..., z_n)`. The
//! developing map sends `w` to its midpoint polygon `z_i = (w_i + w_{i+1})/2`;
//! a dedal polygon of `P` is any preimage of `P` under that map. The map is
//! diagonal in the eigenpolygon basis `X_i = (1, q^i, ..., q^{(n-1)i})`,
//! `q = exp(2πi/n)`, and every classification in this crate is phrased in
//! that basis.
//!
//! Vertex, side and shift indices exposed by the API are 1-based, matching
//! the usual `z_1, ..., z_n` labelling. Everything else is 0-based.

pub mod billiard;
pub mod classify;
pub mod dedal;
pub mod dynamics;
pub mod error;
pub mod polygon;
pub mod sampling;
pub mod spectral;

pub use billiard::{Convention, OrbitTrace, Termination};
pub use classify::{RegularityResult, Thm1Class};
pub use dedal::DedalFamily;
pub use dynamics::{AttractorReport, IterationTrace};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use polygon::{DegeneracyReport, Orientation, Polygon, SimilarityWitness};
pub use spectral::{ProjectiveClass, SpectralCoefficients};

/// Default absolute tolerance on complex magnitudes.
pub const DEFAULT_TOL: f64 = 1e-9;
