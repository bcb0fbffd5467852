//! Differential geometry of the manifold of rank-`r` orthogonal projections
//! in the Hermitian matrices, written in the language of Jordan algebras.
//!
//! * [`matrix`]: complex matrices, Hermitian eigensolver, SVD, `expm`, JSON files.
//! * [`jordan`]: Jordan and triple products, Peirce projectors and reflections,
//!   the inner derivation `G(a,u)`.
//! * [`tangent`]: tangent vectors, their spectral resolution and odd functional calculus.
//! * [`pair`]: structure of two projections, principal angles, antipodal test.
//! * [`manifold`]: geodesics, charts, log map, Levi norm, distance, midpoint symmetry.
//! * [`oracles`]: independent brute-force checks.

pub mod error;
pub mod fixtures;
pub mod jordan;
pub mod manifold;
pub mod matrix;
pub mod oracles;
pub mod pair;
pub mod tangent;

pub use error::{Error, Result};
pub use jordan::{PeirceIndex, Projection};
pub use manifold::{Geodesic, LeviNorm};
pub use matrix::{CMat, HermMat, Tolerances, C64};
pub use pair::{PairDecomposition, PrincipalAngles};
pub use tangent::{SpectralResolution, TangentDecomposition, TangentVec};
