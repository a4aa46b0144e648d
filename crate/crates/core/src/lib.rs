//! Ideal hyperbolic tetrahedra: Minkowski geometry, the exterior algebra
//! with its Hodge star, doubly stochastic Gram coordinates, the Lobachevsky
//! function and the determinant/permanent coordinates `(α, ω)` with the
//! volume function on them.

pub mod error;
pub mod exterior;
pub mod lobachevsky;
pub mod minkowski;
pub mod seidel;
pub mod tetra;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::MultiVector;
pub use lobachevsky::{lobachevsky, lobachevsky_quadrature};
pub use minkowski::{MinkowskiVector, PointClass};
pub use seidel::{RegionS, SeidelCoords, VolumeDerivatives};
pub use tetra::{DihedralAngles, LabelledTetrahedron, Permutation, PlaneCoords, TriangleCoords};
