//! Statevector simulation of the quantum approximate optimization algorithm
//! over diagonal combinatorial-optimization Hamiltonians.
//!
//! The crate covers the full pipeline: 3-SAT instance generation and DIMACS
//! interchange ([`problems`]), clause objectives with projector/Walsh basis
//! analysis ([`diagonal`]), the dense statevector primitives ([`state`]), the
//! standard and enhanced evolution loops with their parameter schedules
//! ([`engine`]), and brute-force references ([`oracle`]).
//!
//! All numerics are generic over the floating-point scalar (f32 or f64)
//! through [`Scalar`]; the `*32`/`*64` aliases below pick a concrete type.

pub mod diagonal;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod problems;
pub mod scalar;
pub mod state;
pub mod transform;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Basis state / bitmask index; bit `i` is the value of qubit `i`.
pub type BasisIndex = u64;

pub type StateVector32 = state::StateVector<f32>;
pub type StateVector64 = state::StateVector<f64>;

pub type DiagonalObjective32 = diagonal::DiagonalObjective<f32>;
pub type DiagonalObjective64 = diagonal::DiagonalObjective<f64>;

pub type NormalizedDiagonal32 = diagonal::NormalizedDiagonal<f32>;
pub type NormalizedDiagonal64 = diagonal::NormalizedDiagonal<f64>;

pub type ProjectorHamiltonian32 = diagonal::ProjectorHamiltonian<f32>;
pub type ProjectorHamiltonian64 = diagonal::ProjectorHamiltonian<f64>;

pub type WalshHamiltonian32 = diagonal::WalshHamiltonian<f32>;
pub type WalshHamiltonian64 = diagonal::WalshHamiltonian<f64>;

pub type Schedule32 = engine::Schedule<f32>;
pub type Schedule64 = engine::Schedule<f64>;

pub type Trajectory32 = engine::Trajectory<f32>;
pub type Trajectory64 = engine::Trajectory<f64>;
