//! Exact section-class equivariant Gromov-Witten partition functions of
//! `P(O + L1 + L2)` over a genus-g curve, computed from the closed-form TQFT
//! generators and the trace formula `tr(G^(g-1) U1^k1 U2^k2)`.

pub mod checks;
mod error;
pub mod exactring;
pub mod gluing;
pub mod operators;
pub mod parse;
pub mod partition;
pub mod phicalc;

pub use error::{Error, Result};

/// Library version recorded in serialized output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
