//! Construction and analysis of almost perfect nonlinear (APN) vectorial
//! Boolean functions over `F_2^n`, for desk-scale dimensions (`n ≤ 8`, some
//! operations up to 16).

pub mod error;
pub mod field;
pub mod vbf;
pub mod rng;
pub mod constructions;
pub mod invariants;
pub mod search;
pub mod format;

pub use error::{Error, Result};
pub use field::Field;
pub use vbf::{AffineMap, DifferentialProfile, LinearMap, Vbf, WalshSpectrum};
