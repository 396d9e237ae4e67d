//! Perturbative eigenvalues and eigenfunctions of the elliptic
//! Calogero–Sutherland Hamiltonian.
//!
//! Eigenvalues and eigenfunction coefficients are produced as truncated
//! power series in the squared nome `q²` and the coupling `γ = 2λ(λ−1)`,
//! with exact rational (or rational-function-of-`P`) coefficients. The crate
//! is `no_std` and needs only `alloc`; IO, caching and the numeric oracle
//! live in the companion `ecs` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod eigenfunction;
pub mod eigenvalue;
mod error;
pub mod fhat;
pub mod lattice;
mod walk;

pub use algebra::{BiSeries, PPoly, PRatFunc, Rational, Scalar};
pub use error::Error;
pub use lattice::{ModelParams, NumericModel, QuantumNumbers, RootVector, Spectrum, SymbolicPair};
