//! Exact computer algebra for 4-dimensional Koszul AS-regular algebras:
//! superpotentials, their S₄-isotypic decomposition, the induced linear
//! systems on partial flag varieties, and discrete dimension/degree
//! invariants of the resulting loci.

pub mod catalog;
pub mod error;
pub mod factor_tower;
pub mod gcd;
pub mod mpoly;
pub mod rng;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod linalg;
pub mod loci;
pub mod pipeline;
pub mod polyring;
pub mod primary;
pub mod qfactor;
pub mod scalar;
pub mod superpotential;
pub mod tensor;

pub use error::Error;
