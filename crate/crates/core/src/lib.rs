//! Explicit Möbius-transformation models of triangle groups and terminal
//! regular b-groups with torsion.
//!
//! The crate builds, from horocyclic coordinates, matrix generators for
//! Kleinian groups uniformizing 2-orbifolds: canonical generators for
//! hyperbolic triangle groups and the parabolic `(0,3;∞,2,2)` group, the
//! one-dimensional b-group families of types `(0,4)` (Klein–Maskit
//! amalgamation) and `(1,1;ν)` (HNN extension), an iterated assembler for
//! general signatures, the explicit genus-2 family together with its
//! hyperelliptic `(0,6;2⁶)` extension, and the affine Patterson isomorphisms
//! between the corresponding deformation spaces.
//!
//! Everything is double-precision and pure; tolerances are explicit
//! parameters wherever a comparison is made.

pub mod bgroups;
pub mod error;
pub mod jsonio;
pub mod marked;
pub mod moebius;
pub mod patterson;
pub mod triangle;
pub mod verify;

pub use error::Error;
pub use moebius::{cross_ratio, map_to_standard, Classification, Cplx, ExtComplex, MoebiusMap};
pub use triangle::{Nu, Signature, SignatureType, TriangleGroupSpec};

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
