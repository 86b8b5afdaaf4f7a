//! Numerical geometry of conformally flat, asymptotically flat metrics
//! `g = u^{4/(n-2)} δ` on exteriors of star-shaped domains in `R^n`,
//! `n >= 3`: ADM mass, zero-area-singularity mass, capacity, boundary
//! functionals, and verification of the mass lower bounds that relate them,
//! each with an explicit numerical error budget.

pub mod constants;
pub mod numerics;

pub mod geometry;

pub mod conformal;
pub mod solver;

pub mod massfn;
pub mod suite;

pub mod io;
