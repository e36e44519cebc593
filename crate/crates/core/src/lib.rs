//! Müntz-Jacobi spectral methods built on Erdélyi-Kober fractional calculus.
//!
//! The crate is layered bottom-up:
//!
//! * [`orthopoly`] gamma-type special functions and classical Jacobi polynomials,
//! * [`linalg`] dense LU, condition numbers and a tridiagonal eigensolver,
//! * [`ek`] Erdélyi-Kober integrals and derivatives (closed forms and quadrature),
//! * [`jmf`] the two Jacobi-Müntz function families and their spectral data,
//! * [`quadrature`] Gauss rules adapted to the Müntz weights,
//! * [`projection`] spectral projection and convergence diagnostics,
//! * [`ivp`] an adaptive Dormand-Prince integrator,
//! * [`solvers`] collocation solvers for fractional ODE/PDE model problems.

// Validation is written as `!(x > 0.0)` on purpose: NaN must fail it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ek;
pub mod error;
pub mod ivp;
pub mod jmf;
pub mod linalg;
pub mod orthopoly;
pub mod projection;
pub mod quadrature;
pub mod solvers;

pub use error::{Error, Result};
