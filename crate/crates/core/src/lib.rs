//! Exact computations for weighted surface algebras.
//!
//! The crate builds finite-dimensional algebras from triangulation quivers,
//! works with their right modules (Hom, syzygies, Ext, uniserials) and checks
//! whether the module `M = Λ ⊕ S_Γ ⊕ Ω²(S_ν)` is 3-cluster tilting.

pub mod algebra;
pub mod cluster;
pub mod families;
pub mod field;
pub mod linalg;
pub mod modules;
pub mod parallel;
pub mod quiver;
pub mod specfile;

pub use algebra::{AlgebraError, BoundedAlgebra, WeightedSurfaceAlgebra};
pub use field::{Field, Scalar};
pub use linalg::Matrix;
pub use modules::{Morphism, Representation};

pub use quiver::{Quiver, TriangulationData};
