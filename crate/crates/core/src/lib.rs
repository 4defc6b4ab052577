//! Dirac spin operators, Lorentz-invariant spin projections and BMT spin
//! precession in constant uniform fields.
//!
//! Conventions: metric `diag(-1, 1, 1, 1)`, `ε^{0123} = +1`, antisymmetric
//! tensors packed as `(-e, h)` with `T^{k0} = -e_k`, Dirac–Pauli
//! representation with `γ⁰ = iρ₃`, `γᵏ = iρ₃αₖ`, `γ⁵ = -iρ₁`.

pub mod bmt;
pub mod cli;
pub mod clifford;
pub mod conventions;
pub mod error;
pub mod projectors;
pub mod sampling;
pub mod spin_operators;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
