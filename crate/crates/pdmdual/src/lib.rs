//! Position-dependent-mass oscillators with first-order drift terms and
//! their self-adjoint duals.
//!
//! The library models one-dimensional Hamiltonians of the form
//!
//! ```text
//! H = -(1/2m(y)) d²/dy² + (alpha/2) f(m, m') d/dy + V(y)
//! ```
//!
//! for a quadratic mass profile `m(y) = 1 + gamma_tilde y²`. Such operators
//! are not symmetric, but a gauge weight `g(y)` solving `g' = -alpha f m g`
//! turns `rho = g m |psi|²` into a conserved density and the similarity map
//! `Omega = sqrt(g m) Psi` into an isometry onto an ordinary Schrödinger
//! problem with effective potential `W`. Three drift presets (cases a, b, c)
//! admit closed-form spectra and eigenfunctions, which the crate evaluates
//! and cross-checks against an in-repo finite-difference eigensolver.
//!
//! Module map:
//! - [`model`]: scaled units, mass/potential profiles, uniform grids.
//! - [`hamiltonian`]: drift presets, gauge functions, dual operators,
//!   von Roos orderings, transport coefficients.
//! - [`analytic`]: closed-form energies, eigenfunctions, thresholds, and the
//!   continuation to negative deformation.
//! - [`solver`]: tridiagonal eigensolver, quadrature, continuity residuals,
//!   grid-convergence studies.
//! - [`verify`]: named identity suites producing pass/fail reports.
//! - [`fd`]: finite-difference stencils shared by the numeric paths.

pub mod analytic;
pub mod error;
pub mod fd;
pub mod hamiltonian;
pub mod model;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
