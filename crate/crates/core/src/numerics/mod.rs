//! Quadrature rules, extrapolation, and seeded randomness shared across the
//! crate.

pub mod extrapolate;
pub mod gauss;
pub mod rng;

pub use extrapolate::{gaps_diverge, observed_order, richardson_limit, Extrapolation};
pub use gauss::{clenshaw_curtis_unit, gauss_gegenbauer, gauss_legendre, gauss_legendre_on};
