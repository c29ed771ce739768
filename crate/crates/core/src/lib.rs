//! Exact computations with hypersurfaces of multidegree `(2, ..., 2)` in
//! `(P^1)^(n+1)`: fiberwise Möbius maps, their compositions, words in
//! them, and randomized certificates of inertia and freeness.
//!
//! Everything is generic over a [`Field`]; the aliases below fix the two
//! supported fields.

pub mod algebra;
pub mod certify;
pub mod cli;
pub mod fibermap;
pub mod format;
pub mod hypersurface;
pub mod seed;
pub mod words;

pub use algebra::{Field, Fp, MPoly, Modulus, Point, ProjCoord, Rationals, Q};
pub use certify::{Status, Verdict};
pub use fibermap::{FiberMap, MapOutcome};
pub use hypersurface::{Axis, MultiQuadric};
pub use words::Word;

/// Polynomial over ℚ.
pub type QPoly = MPoly<Q>;
/// Polynomial over `F_p`.
pub type FpPoly = MPoly<Fp>;
pub type QQuadric = MultiQuadric<Q>;
pub type FpQuadric = MultiQuadric<Fp>;
pub type QMap = FiberMap<Q>;
pub type FpMap = FiberMap<Fp>;
pub type QPoint = Point<Q>;
pub type FpPoint = Point<Fp>;
