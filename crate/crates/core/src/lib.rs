//! Symbolic dynamics toolkit: presentations of shifts of finite type and
//! sofic shifts, their spectral and periodic invariants, sliding block
//! codes, decision procedures for closing / continuing / open factor codes,
//! and a marker construction that produces an open bi-continuing factor
//! code onto a lower entropy shift of finite type, verified independently.

pub mod codes;
pub mod construct;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod language;
pub mod matrix;
pub mod presentation;
pub mod spectral;
pub mod verify;
pub mod word;

pub use error::{Error, Result};

/// Exact counting matrices (periodic points, path counts).
pub type CountMatrix = matrix::Matrix<num_bigint::BigUint>;
/// Floating point matrices (Perron iteration).
pub type RealMatrix = matrix::Matrix<f64>;
