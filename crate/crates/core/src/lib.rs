//! Exact combinatorics of the symplectic Weyl group and the character cones
//! attached to Ekedahl–Oort strata of Siegel modular varieties mod p.
//!
//! The crate is generic over the exact field used for cone arithmetic (see
//! [`scalar::Scalar`]). [`Q`] (arbitrary precision) is the default everywhere a
//! concrete type is needed; [`Q64`] is available for small inputs.

pub mod bruhat;
pub mod certificate;
pub mod cones;
pub mod error;
pub mod hasse;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod scalar;
pub mod weylroot;

pub use error::{Error, Result};
pub use scalar::{Ring, Scalar};

/// Arbitrary precision rationals.
pub type Q = num_rational::BigRational;
/// Machine-word rationals; overflow panics.
pub type Q64 = num_rational::Rational64;

/// Integer lattice character.
pub type IntCharacter = weylroot::Character<i64>;
/// Rational character over [`Q`].
pub type RatCharacter = weylroot::Character<Q>;
/// Cone over [`Q`].
pub type Cone = cones::Cone<Q>;
/// Implication certificate over [`Q`].
pub type FarkasCertificate = cones::FarkasCertificate<Q>;
