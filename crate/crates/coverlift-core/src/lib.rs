//! Curve complexes of punctured surfaces, finite covers, and the induced
//! one-to-many lift map between curve complexes.
//!
//! The crate is organized around a handful of exact combinatorial engines:
//! ideal triangulations with flips, normal coordinates for multicurves,
//! minimal-position overlays for geometric intersection numbers, certified
//! curve-complex distances, permutation-labeled covers with curve lifting,
//! and a small numeric module for horoball geometry in upper half-space.

pub mod arrangement;
pub mod coords;
pub mod curve;
pub mod curve_complex;
pub mod error;
pub mod faces;
pub mod fatgraph;
pub mod mutate;
pub mod overlay;
pub mod twist;
pub mod surface;
pub mod trace;
pub mod triangulation;

pub use coords::NormalCoordinates;
pub use curve::{CurveClass, CurveKind};
pub use surface::Surface;
pub use triangulation::{IdealTriangulation, Side};
