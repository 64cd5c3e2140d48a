//! Symplectic tomography of the Caldirola-Kanai damped quantum oscillator.
//!
//! The crate evaluates closed-form tomograms (quadrature distributions) of
//! coherent and Fock states, the Wigner function they come from, the
//! classical-like evolution equation they satisfy and the number-operator
//! invariants that have Fock tomograms as eigenfunctions. Every closed form
//! has an independent numerical route next to it so the two can be compared.

// Negated comparisons are how the validators reject NaN alongside bad ranges.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod evolution;
pub mod invariants;
pub mod numerics;
pub mod states;
pub mod tomography;

pub use dynamics::{
    epsilon, epsilon_residual, frame_coeffs, make_params, time_backward, time_forward,
    DampingParams, EpsilonState, FrameCoeffs,
};
pub use error::{Error, Result};
pub use numerics::{Axis, ScalarGrid};
pub use states::{coherent_psi, fock_psi, wigner, QuantumState, WaveFunction, Wigner};

pub use evolution::{
    convergence_study, evolution_residual, evolution_residual_rescaled, evolution_terms,
    EvolutionPoint, ResidualReport, ResidualTerms,
};
pub use invariants::{
    eigen_residual, eigen_residual_with, number_apply, number_apply_with, tomogram_characteristic,
    DualPoint, InvariantSettings, OperatorForm, OperatorVariant,
};
pub use num_complex::Complex64;
pub use tomography::{
    coherent_tomogram, fock_tomogram, ground_tomogram, normalization, optical_frame,
    radon_tomogram, tomogram, Direction, RadonOracle, Tomogram, TomographyFrame,
};
