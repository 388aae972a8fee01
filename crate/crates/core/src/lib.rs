//! Delta-correlated Huffman sequence toolkit.
//!
//! A Huffman sequence is a finite real sequence whose zero-padded aperiodic
//! auto-correlation is a discrete delta apart from the two unavoidable end
//! terms (the product of the first and last elements). This crate constructs
//! the canonical families built from Fibonacci polynomials together with the
//! tangent-spectrum, power-of-three and integer families, and verifies their
//! correlation, Fourier-spectral and z-plane zero properties.
//!
//! Values computed from exact (integer or rational) scale parameters stay in
//! arbitrary-precision rational arithmetic end to end, so the canonical
//! condition can be checked as literal zero rather than against a tolerance.
//!
//! The crate is data-parallel over correlation shifts, spectrum bins, sweep
//! rows and identity batches when built with the default `parallel` feature;
//! disabling it yields a dependency-free sequential build with identical
//! results.

pub mod correlate;
pub mod exec;
pub mod families;
pub mod fibpoly;
pub mod numeric;
pub mod roots;
pub mod spectral;

mod error;

pub use error::HuffmanError;
pub use families::{Family, HuffmanSequence};
pub use numeric::{Numeric, Scale};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, HuffmanError>;
