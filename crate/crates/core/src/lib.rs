//! Exact computation of classical, higher order, and secondary Hochschild
//! cohomology for finite-dimensional commutative algebras given by structure
//! constants.
//!
//! The library is organized around a small pipeline:
//!
//! * [`field`] — exact scalars over a prime field `F_p` or over `Q` with
//!   arbitrary-precision integers,
//! * [`algebra`] — structure-constant algebras, algebra morphisms
//!   `ε: B → A`, and symmetric bimodules,
//! * [`simplicial`] — truncated pointed simplicial pairs `(X, Y)` with
//!   face-map tables, including the built-in pairs for the point, the
//!   circle, and the circle sitting inside the disk,
//! * [`cochain`] — cochain spaces `Hom(A^⊗m ⊗ B^⊗n, M)`, the linear map
//!   induced by a morphism of pointed-set pairs, the differential coming
//!   from a simplicial pair, and the secondary differential written out
//!   directly from its defining formula,
//! * [`homology`] — exact ranks and cohomology dimensions.
//!
//! Everything is computed over an exact field, so results are integers and
//! matrix identities (`d² = 0`, the agreement of the two differential
//! constructions) can be checked entry for entry rather than numerically.
//!
//! The crate is `no_std` (it requires `alloc`); IO, configuration files,
//! and the command-line driver live in the companion `hochschild-cli`
//! crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cochain;
pub mod field;
pub mod homology;
pub mod matrix;
pub mod simplicial;

pub use algebra::{Algebra, AlgebraElement, AlgebraMorphism, ModuleElement, SymmetricBimodule, Triple};
pub use field::{FieldSpec, Scalar};
pub use matrix::SparseMatrix;
pub use simplicial::{PairLevel, PairMorphism, SimplicialPair};
