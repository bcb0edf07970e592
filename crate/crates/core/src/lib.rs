//! Exact arithmetic for abstract representation rings.
//!
//! A representation ring has a distinguished basis of indecomposables with
//! non-negative integer structure constants, a duality involution, a
//! dimension homomorphism and an absorbing regular element. This crate
//! builds such rings (from tables, rules or built-in families) and computes
//! cores, tensor-power growth rates, species, nil radicals, Adams operations
//! and Banach-norm diagnostics on them.

pub mod banach;
pub mod chebyshev;
pub mod cyclo;
pub mod element;
pub mod error;
pub mod expr;
pub mod families;
pub mod gamma;
pub mod homs;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod ring;
pub mod scalar;
pub mod species;

pub use element::{BasisId, Element};
pub use error::{RingError, Result};
pub use ring::{BasisInfo, RingSpec};
pub use scalar::{ComplexQ, Scalar};
