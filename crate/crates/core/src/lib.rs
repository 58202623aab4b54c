//! Exact equivariant spin^c index computations for compact Lie groups.
//!
//! The crate enumerates admissible coadjoint orbits and their indices,
//! computes equivariant indices of torus-fixed-point models by
//! Atiyah–Bott localization, decomposes virtual characters into
//! irreducibles, and checks multiplicity formulas of the
//! "quantization commutes with reduction" type against those computations.

pub mod characters;
pub mod lie;
pub mod localization;
pub mod model_file;
pub mod orbits;
pub mod qr;
pub mod rational;

pub use characters::{decompose, dimension, weyl_character, CharacterError, Decomposition, VirtualCharacter};
pub use lie::{Face, LieError, RootSystem, StabilizerClass, WeylElement};
pub use localization::{
    localized_index, numeric_cross_check, orbit_model, su3_flag_bundle, ExpansionConfig, LocalizationError,
    ManifoldModel,
};
pub use orbits::{orbit_spin_index, CoadjointOrbit, OrbitIndex};
pub use qr::{verify_qr, QRReport, QrError, ReducedIndexProvider};
pub use rational::{Weight, Q};
