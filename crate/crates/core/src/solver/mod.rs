//! Exterior Laplace solves: Dirichlet (capacity potentials, vanishing-factor
//! boundaries), Robin (minimal boundaries), and mixed problems, by
//! fundamental-solution collocation with residual certificates.

pub mod capacity;
pub mod harmonic;
pub mod solve;
pub mod spec;

pub use capacity::{capacity, capacity_of_potential, prolate_spheroid_capacity, CapacityReport};
pub use harmonic::{HarmonicFunction, SolveCertificate};
pub use solve::{solve, solve_mixed, solve_with_background, MixedSolution, SolverError};
pub use spec::{BcKind, BoundaryCondition, SolverSpec};
