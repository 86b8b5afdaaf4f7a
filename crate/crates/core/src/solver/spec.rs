//! Solver configuration and boundary-condition descriptors.

use serde::{Deserialize, Serialize};

/// Per-component boundary condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BcKind {
    /// `u = value` on the component.
    Dirichlet { value: f64 },
    /// `∂_ν u + β u = 0` with `β = (n-2) H / (2(n-1))`: the zero-mean-
    /// curvature (minimal boundary) condition for `g = u^{4/(n-2)} δ`.
    Robin,
}

/// Boundary conditions for every component of a domain, in component order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCondition {
    pub per_component: Vec<BcKind>,
}

impl BoundaryCondition {
    pub fn dirichlet_zero(components: usize) -> Self {
        Self { per_component: vec![BcKind::Dirichlet { value: 0.0 }; components] }
    }

    pub fn robin_minimal(components: usize) -> Self {
        Self { per_component: vec![BcKind::Robin; components] }
    }
}

/// Collocation solver parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSpec {
    /// Sphere-grid resolution of the collocation mesh.
    pub collocation_resolution: usize,
    /// Sphere-grid resolution of the shrunk source layer (roughly half the
    /// collocation count, plus one source at each component center).
    pub source_resolution: usize,
    /// Radial shrink factor for source placement.
    pub shrink: f64,
    /// Relative singular-value cutoff for the least-squares solve.
    pub truncation: f64,
    /// Maximum admissible residual at the check nodes (u-units).
    pub residual_threshold: f64,
    /// Abort when the raw condition number exceeds this.
    pub condition_limit: f64,
    /// Seed for the check-grid offset.
    pub seed: u64,
}

impl SolverSpec {
    /// Defaults balancing accuracy against the `O(res^{n-1})` node growth.
    pub fn default_for_dimension(n: usize) -> Self {
        let (collocation_resolution, source_resolution) = match n {
            3 => (16, 11),
            4 => (8, 6),
            5 => (5, 4),
            6 => (4, 3),
            _ => (3, 2),
        };
        SolverSpec {
            collocation_resolution,
            source_resolution,
            shrink: 0.7,
            truncation: 1e-12,
            residual_threshold: 1e-6,
            condition_limit: 1e14,
            seed: 0,
        }
    }

    /// Tight residual gate for closed-form-comparable geometries.
    pub fn strict(mut self) -> Self {
        self.residual_threshold = 1e-8;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Set the collocation resolution and rescale the source layer so its
    /// node count stays near half the collocation count.
    pub fn with_resolution(mut self, n: usize, collocation: usize) -> Self {
        self.collocation_resolution = collocation.max(3);
        let ratio = 2f64.powf(-1.0 / (n as f64 - 1.0));
        self.source_resolution =
            ((collocation as f64 * ratio).round() as usize).clamp(2, self.collocation_resolution);
        self
    }
}
