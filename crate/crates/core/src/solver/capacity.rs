//! Capacity of a bounded domain: normalized Dirichlet energy of the
//! exterior potential that vanishes on the boundary and tends to one at
//! infinity. With this normalization the unit ball has unit capacity.

use super::harmonic::HarmonicFunction;
use super::solve::{solve, SolverError};
use super::spec::{BoundaryCondition, SolverSpec};
use crate::constants::unit_sphere_area;
use crate::geometry::{BoundaryMesh, StarDomain};

/// Capacity with both evaluation routes and the solve that produced them.
#[derive(Debug, Clone)]
pub struct CapacityReport {
    /// Primary value: the negated monopole `-Σ c_j` of the solved layer
    /// (each source contributes its exact flux).
    pub value: f64,
    /// Boundary-flux route `(1/((n-2) ω_{n-1})) ∫_Σ ∂_ν φ dA` on `mesh`.
    pub flux_value: f64,
    /// |value - flux_value|, recorded in the certificate.
    pub cross_check_gap: f64,
    /// Combined error estimate.
    pub error: f64,
    pub potential: HarmonicFunction,
}

/// Solve the capacity potential and evaluate both capacity routes.
pub fn capacity(
    domain: &StarDomain,
    mesh: &BoundaryMesh,
    spec: &SolverSpec,
) -> Result<CapacityReport, SolverError> {
    let bc = BoundaryCondition::dirichlet_zero(domain.components().len());
    let potential = solve(domain, &bc, spec)?;
    Ok(capacity_of_potential(domain, mesh, potential))
}

/// Capacity routes for an already-solved Dirichlet-0 potential.
pub fn capacity_of_potential(
    domain: &StarDomain,
    mesh: &BoundaryMesh,
    potential: HarmonicFunction,
) -> CapacityReport {
    let n = domain.dimension();
    let omega = unit_sphere_area(n);
    let value = -(potential.solved_monopole() + potential.background().sources().monopole());

    let flux: f64 = (0..mesh.len())
        .map(|i| {
            mesh.weight(i) * potential.directional_derivative(mesh.position(i), mesh.normal(i))
        })
        .sum();
    let flux_value = flux / ((n as f64 - 2.0) * omega);

    let cross_check_gap = (value - flux_value).abs();
    // Max-principle bound: a boundary residual of ε perturbs the monopole by
    // at most ε · r_char^{n-2}.
    let area: f64 = mesh.weights().iter().sum();
    let r_char = (area / omega).powf(1.0 / (n as f64 - 1.0));
    let error = potential.certificate.residual_max * r_char.powi(n as i32 - 2) + cross_check_gap;

    CapacityReport { value, flux_value, cross_check_gap, error, potential }
}

/// Closed-form capacity of the prolate spheroid with semi-axes `(a, b, b)`,
/// `a > b`, in `R^3`: `sqrt(a² - b²) / arccosh(a/b)`.
pub fn prolate_spheroid_capacity(a: f64, b: f64) -> f64 {
    assert!(a > b && b > 0.0);
    (a * a - b * b).sqrt() / (a / b).acosh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::boundary_quadrature;
    use approx::assert_relative_eq;

    #[test]
    fn unit_ball_has_unit_capacity() {
        for n in [3usize, 4, 5] {
            let domain = StarDomain::ball(n, 1.0, vec![0.0; n]).unwrap();
            let mesh =
                boundary_quadrature(&domain, crate::geometry::default_resolution(n)).unwrap();
            let spec = SolverSpec::default_for_dimension(n).strict();
            let cap = capacity(&domain, &mesh, &spec).unwrap();
            assert_relative_eq!(cap.value, 1.0, epsilon = 1e-10);
            assert!(cap.cross_check_gap < 1e-8, "gap {}", cap.cross_check_gap);
        }
    }

    #[test]
    fn ball_capacity_scales_as_power_of_radius() {
        let r: f64 = 1.7;
        let domain = StarDomain::ball(4, r, vec![0.0; 4]).unwrap();
        let mesh = boundary_quadrature(&domain, 8).unwrap();
        let spec = SolverSpec::default_for_dimension(4).strict();
        let cap = capacity(&domain, &mesh, &spec).unwrap();
        assert_relative_eq!(cap.value, r * r, epsilon = 1e-9);
    }

    #[test]
    fn spheroid_closed_form_value() {
        let c = prolate_spheroid_capacity(2.0, 1.0);
        // sqrt(3)/ln(2 + sqrt(3))
        assert_relative_eq!(c, 3f64.sqrt() / (2.0 + 3f64.sqrt()).ln(), max_relative = 1e-14);
    }
}
