//! Klein-Gordon oscillator eigenbasis in one and three dimensions.
//!
//! The crate evaluates the normalized eigenfunctions, checks their
//! orthonormality and completeness with Gaussian quadrature, and builds the
//! truncated spectral Green's functions. All quantities are in natural
//! units (hbar = c = 1).

pub mod closure;
pub mod error;
pub mod fdcheck;
pub mod gram;
pub mod greens;
pub mod kgo1d;
pub mod kgo3d;
pub mod params;
pub mod quad;
pub mod special;
pub mod summation;

pub use closure::{Dimension, KernelReport, TestFunction1D, TestFunctionRadial};
pub use error::{KgoError, Result};
pub use params::{Branch, OscillatorParams, SpectrumConvention};
pub use quad::{gauss_hermite, gauss_laguerre, gauss_legendre, QuadFamily, QuadratureRule};
pub use special::{AngularPoint, PolyValue};
pub use gram::GramMatrix;
pub use greens::GreensQuery;
pub use kgo1d::{Basis, Mode1D, SpectralProjection};
pub use kgo3d::{Mode3D, Point3, RadialMode};
