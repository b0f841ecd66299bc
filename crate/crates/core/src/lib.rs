//! Exact decision procedures for affine actions of `Z^k` on `R^{k+1}`
//! through the two-step nilpotent group
//!
//! ```text
//!     ⎛ I_k  x  y ⎞
//! G = ⎜ 0    1  z ⎟ ,   H = { y = 0, z = 0 },   G/H ≅ R^{k+1}.
//!     ⎝ 0    0  1 ⎠
//! ```
//!
//! Homomorphisms `Z^k → G` are described by two parameter charts
//! ([`hom::Type1Param`] with nonzero `z`, [`hom::Type2Param`] with `z = 0`).
//! [`properness`] decides which of them act properly discontinuously,
//! [`deformation`] reduces them modulo conjugation by `G`, and [`oracle`]
//! counts lattice returns on boxes as an independent check.
//!
//! All decisions use exact rational arithmetic.

pub mod algebra;
pub mod deformation;
pub mod error;
pub mod group;
pub mod hom;
pub mod oracle;
pub mod properness;
pub mod sampling;

pub use algebra::{Matrix, PencilPoly, Poly, Rational, RootCount};
pub use error::{Error, Result};
pub use group::{GroupElement, LieElement, Point};
pub use hom::{HomImage, HomParam, Type1Param, Type2Param};
