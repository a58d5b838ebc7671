//! Resonances of compactly supported Schrödinger potentials in one and
//! three (radial) dimensions, computed as zeros of regularized Fredholm
//! determinants of Birman–Schwinger operators, together with heat and wave
//! invariants and the Sobolev-norm machinery around them.
//!
//! Numerical routines are generic over [`Real`] (`f32`, `f64`); the
//! symbolic heat-invariant engine is generic over its coefficient field and
//! is normally used with exact rationals.

pub mod birman_schwinger;
pub mod determinant;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod potential;
pub mod quadrature;
pub mod resolvent;
pub mod resonance;
pub mod scalar;
pub mod special;
pub mod symbolic;
pub mod taylor;

pub use error::{Error, Result};
pub use scalar::{Complex, Real};

pub use determinant::{Determinant, DeterminantConfig, DeterminantValue};
pub use potential::{Bump, Potential};
pub use resonance::{ResonanceSet, SearchRegion};
pub use symbolic::{DifferentialPolynomial, Rational};

pub type Potential64 = Potential<f64>;
pub type Potential32 = Potential<f32>;
pub type Bump64 = Bump<f64>;
pub type Determinant64 = Determinant<f64>;
pub type Determinant32 = Determinant<f32>;
pub type Complex64 = Complex<f64>;
/// Differential polynomial with exact rational coefficients.
pub type ExactPolynomial = DifferentialPolynomial<Rational>;
