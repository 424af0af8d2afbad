//! Exact computations in the lattice group algebra `ℚ(v)[Λ]` of a split
//! adjoint root datum: Weyl characters, the affine Hecke algebra in its
//! Bernstein presentation together with its polynomial module, the
//! alternating map onto skew-invariants, and spherical Whittaker values.
//!
//! The guide in `book/` walks through the constructions with runnable
//! listings.

pub mod characters;
pub mod error;
pub mod field;
pub mod hecke;
pub mod lattice;
pub mod linear;
pub mod root_data;
pub mod scalar;
pub mod verify;
pub mod whittaker;

pub use characters::{
    decompose_invariant, evaluate_at, freudenthal_multiplicities, tensor_product, trace_from_weights,
    weyl_character, weyl_dimension, SatakeParameter, WeightCache, WeightMultiset,
};
pub use error::{Error, Result};
pub use field::Field;
pub use hecke::HeckeElement;
pub use lattice::{truncated_geometric, LatticeElement};
pub use root_data::{CartanType, Coweight, Family, RootDatum, WeylElement, WeylGroup};
pub use scalar::{IntPoly, Scalar};
pub use whittaker::{WhittakerModelElement, WhittakerTable};


/// Version stamp written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;
