//! Constructive machinery: high-entropy sub-SFTs, disjoint mixing sub-SFTs,
//! bi-closing sub-factors, the marker factor code and its periodic
//! reduction. Filled in after the verification layer.

use crate::error::{Error, Result};
use crate::word::Sym;

/// Placeholder while the module is being built.
#[derive(Debug, Clone)]
pub struct MarkerRule {}

impl MarkerRule {
    pub fn eval(&self, _window: &[Sym]) -> Result<Sym> {
        Err(Error::InvalidCode("marker rule not yet built".into()))
    }
}

#[derive(Debug, Clone)]
pub struct PhaseRule {}

impl PhaseRule {
    pub fn eval(&self, _window: &[Sym]) -> Result<Sym> {
        Err(Error::InvalidCode("phase rule not yet built".into()))
    }
}
