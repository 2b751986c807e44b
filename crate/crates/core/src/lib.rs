//! Higher-order quantum vortex states built from helical Ince-Gaussian modes.
//!
//! The pipeline runs bottom-up:
//!
//! 1. [`ince`] solves the Ince equation as a tridiagonal eigenproblem and
//!    evaluates the resulting trigonometric polynomials.
//! 2. [`modes`] evaluates Laguerre-Gauss and Ince-Gauss mode functions on the
//!    quadrature plane.
//! 3. [`decompose`] projects a helical Ince-Gauss mode onto helical
//!    Laguerre-Gauss modes of the same order.
//! 4. [`fock`] places the coefficients in the fixed-photon-number two-mode
//!    Fock basis and applies the mode converter.
//! 5. [`wigner`] and [`entropy`] characterise the resulting state.
//!
//! All quantities are in dimensionless oscillator units: the vacuum
//! wavefunction is `exp(-(x² + y²)/2)/√π`.

pub mod decompose;
pub mod entropy;
pub mod error;
pub mod export;
pub mod fock;
pub mod grid;
pub mod ince;
pub mod modes;
pub mod quadrature;
pub mod special;
pub mod wigner;

pub use decompose::{
    coefficients, coefficients_with, overlap, overlap_with, CoefficientVector, DecomposeOptions, OverlapForm,
};
pub use entropy::{
    entropy_sweep, entropy_sweep_with, reduced_density, schmidt_entropy, von_neumann, vortex_state, EntropyRecord,
    EntropySweep, LogBase, OddEvenComparison, ReducedDensityMatrix,
};
pub use error::{Error, Result};
pub use fock::{
    closed_form_state, converter_matrix, converter_unitary, evolve, initial_state, state_wavefunction, wavefunction,
    ConverterSpec, TwoModeState, VortexField,
};
pub use grid::{ComplexField, GridSpec};
pub use ince::{build_eigensystem, BasisClass, InceIndex, IncePolynomial, Parity};
pub use modes::{
    from_elliptic, hig_mode, ig_mode, lg_even_odd, lg_helical, to_elliptic, EllipticPoint, HigMode, HigSign, IgMode,
    LgIndex, LgKind, LgMode, ModeFunction, QuadraturePoint,
};
pub use num_complex::Complex64;
pub use quadrature::QuadratureRule;
pub use wigner::{
    phase_space_integral, slice, wigner_exact, wigner_lg, wigner_paper, AxisPair, PhaseAxis, PhasePoint, SliceFormula,
    SliceGrid, SliceInput, WignerOracle, WignerSlice, SIGMA_OSCILLATOR,
};

/// Version of this library, recorded in artifact sidecars.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Converter angle that maps the Hermite-like Fock ladder onto helical modes.
pub const VORTEX_CONVERTER_ANGLE: f64 = std::f64::consts::FRAC_PI_4;
