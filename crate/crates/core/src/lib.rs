//! Exact arithmetic for linear codes over the mixed alphabet
//! `Z_{p^e} + Z_{p^(e-1)}` and for Eisenstein-additive codes over chain rings.

pub mod additive;
pub mod census;
pub mod counting;
pub mod error;
pub mod mixedcode;
pub mod modmatrix;
pub mod ringcore;

pub use additive::{AdditiveCode, MonomialMatrix};
pub use counting::{CountSpec, ThetaVariant, TypeTuplePair, SELECTED_THETA};
pub use error::{Error, Result};
pub use mixedcode::{CodeType, MixedAmbient, MixedCode, MixedWord, Side};
pub use modmatrix::ResidueMatrix;
pub use ringcore::{AdditiveElement, EisensteinParams, Modulus};
