//! Euclidean boundary and volume functionals of star domains.

use serde::Serialize;

use super::domain::{GeometryError, StarDomain};
use super::mesh::{boundary_quadrature, BoundaryMesh};
use crate::constants::{unit_ball_volume, unit_sphere_area};

/// Per-component Euclidean functionals.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentFunctionals {
    /// Boundary area (length^{n-1}).
    pub area: f64,
    /// Enclosed volume by divergence-theorem quadrature (length^n).
    pub volume: f64,
    /// Normalized total mean curvature `(1/((n-1)ω_{n-1})) ∫ H dA`.
    pub minkowski: f64,
}

/// Scalar functionals of a star domain and its boundary mesh.
#[derive(Debug, Clone, Serialize)]
pub struct GeometricFunctionals {
    pub n: usize,
    pub per_component: Vec<ComponentFunctionals>,
    /// Total boundary area.
    pub area: f64,
    /// Total enclosed volume.
    pub volume: f64,
    /// Isoperimetric ratio `(A/ω_{n-1})^{(n-2)/(n-1)} / (V/β_n)^{(n-2)/n}`;
    /// equals 1 for round balls.
    pub iota: f64,
    /// Area of the unit sphere, `ω_{n-1}`.
    pub omega: f64,
    /// Volume of the unit ball, `β_n`.
    pub beta: f64,
}

/// Result of the mean-convexity test.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeanConvexity {
    pub mean_convex: bool,
    /// `min_j H_j` over the mesh.
    pub margin: f64,
}

/// Compute all functionals from a mesh generated for `domain`.
pub fn functionals(domain: &StarDomain, mesh: &BoundaryMesh) -> GeometricFunctionals {
    let n = domain.dimension();
    let omega = unit_sphere_area(n);
    let beta = unit_ball_volume(n);
    let mut per_component = Vec::with_capacity(mesh.component_count());
    let mut area_total = 0.0;
    let mut volume_total = 0.0;
    for (ci, comp) in domain.components().iter().enumerate() {
        let range = mesh.component_nodes(ci);
        let mut area = 0.0;
        let mut volume = 0.0;
        let mut hdx = 0.0;
        for i in range {
            let w = mesh.weight(i);
            area += w;
            hdx += w * mesh.mean_curvature(i);
            // V = (1/n) ∫ <x - x0, ν> dA per component.
            let dot: f64 = (0..n)
                .map(|j| (mesh.position(i)[j] - comp.center[j]) * mesh.normal(i)[j])
                .sum();
            volume += w * dot / n as f64;
        }
        let minkowski = hdx / ((n as f64 - 1.0) * omega);
        per_component.push(ComponentFunctionals { area, volume, minkowski });
        area_total += area;
        volume_total += volume;
    }
    let iota = (area_total / omega).powf((n as f64 - 2.0) / (n as f64 - 1.0))
        / (volume_total / beta).powf((n as f64 - 2.0) / n as f64);
    GeometricFunctionals {
        n,
        per_component,
        area: area_total,
        volume: volume_total,
        iota,
        omega,
        beta,
    }
}

/// Two-resolution error estimates for the main functionals.
#[derive(Debug, Clone, Serialize)]
pub struct FunctionalErrors {
    pub area: f64,
    pub volume: f64,
    pub minkowski: f64,
    pub iota: f64,
}

/// Functionals at `resolution` together with Richardson-style error
/// estimates from a half-resolution recomputation.
pub fn functionals_with_estimate(
    domain: &StarDomain,
    resolution: usize,
) -> Result<(GeometricFunctionals, FunctionalErrors), GeometryError> {
    let fine = boundary_quadrature(domain, resolution)?;
    let f_fine = functionals(domain, &fine);
    let coarse_res = (resolution / 2).max(domain.min_resolution());
    if coarse_res >= resolution {
        // Cannot coarsen further; fall back to a fixed floor.
        let eps = 1e-8;
        return Ok((
            f_fine,
            FunctionalErrors { area: eps, volume: eps, minkowski: eps, iota: eps },
        ));
    }
    let coarse = boundary_quadrature(domain, coarse_res)?;
    let f_coarse = functionals(domain, &coarse);
    let floor = 1e-14;
    let errors = FunctionalErrors {
        area: (f_fine.area - f_coarse.area).abs().max(floor * f_fine.area.abs()),
        volume: (f_fine.volume - f_coarse.volume).abs().max(floor * f_fine.volume.abs()),
        minkowski: f_fine
            .per_component
            .iter()
            .zip(&f_coarse.per_component)
            .map(|(a, b)| (a.minkowski - b.minkowski).abs())
            .fold(floor, f64::max),
        iota: (f_fine.iota - f_coarse.iota).abs().max(floor),
    };
    Ok((f_fine, errors))
}

/// Mean-convexity check: true iff `min_j H_j >= -eps` with a scale-aware
/// tolerance.
pub fn is_mean_convex(mesh: &BoundaryMesh) -> MeanConvexity {
    let min_h = mesh.mean_curvatures().iter().copied().fold(f64::INFINITY, f64::min);
    let scale = mesh.mean_curvatures().iter().copied().fold(0.0f64, |a, b| a.max(b.abs()));
    let eps = 1e-8 * scale.max(1.0);
    MeanConvexity { mean_convex: min_h >= -eps, margin: min_h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::radial::{AxiProfile, RadialSpec};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn unit_ball_functionals() {
        let domain = StarDomain::ball(3, 1.0, vec![0.0; 3]).unwrap();
        let mesh = boundary_quadrature(&domain, 16).unwrap();
        let f = functionals(&domain, &mesh);
        assert_relative_eq!(f.area, 4.0 * PI, max_relative = 1e-10);
        assert_relative_eq!(f.volume, 4.0 * PI / 3.0, max_relative = 1e-10);
        assert_relative_eq!(f.iota, 1.0, epsilon = 1e-10);
        assert_relative_eq!(f.per_component[0].minkowski, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn ball_in_dimension_four() {
        let domain = StarDomain::ball(4, 2.0, vec![0.0; 4]).unwrap();
        let mesh = boundary_quadrature(&domain, 8).unwrap();
        let f = functionals(&domain, &mesh);
        assert_relative_eq!(f.area, 16.0 * PI * PI, max_relative = 1e-10);
        // Minkowski integral of a round sphere is r^{n-2}.
        assert_relative_eq!(f.per_component[0].minkowski, 4.0, max_relative = 1e-10);
        assert_relative_eq!(f.iota, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn scaling_covariance() {
        let spec = RadialSpec::Axisymmetric {
            profile: AxiProfile::Cosine { base: 1.0, terms: vec![(2, 0.2)] },
        };
        let domain = StarDomain::star(3, vec![0.0; 3], spec).unwrap();
        let lambda = 1.8;
        let scaled = domain.scaled(lambda);
        let mesh = boundary_quadrature(&domain, 24).unwrap();
        let mesh_s = boundary_quadrature(&scaled, 24).unwrap();
        let f = functionals(&domain, &mesh);
        let fs = functionals(&scaled, &mesh_s);
        assert_relative_eq!(fs.area, lambda * lambda * f.area, max_relative = 1e-12);
        assert_relative_eq!(fs.volume, lambda.powi(3) * f.volume, max_relative = 1e-12);
        assert_relative_eq!(fs.iota, f.iota, max_relative = 1e-12);
        for i in (0..mesh.len()).step_by(53) {
            assert_relative_eq!(
                mesh_s.mean_curvature(i),
                mesh.mean_curvature(i) / lambda,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn mean_convexity_gates() {
        let ball = StarDomain::ball(3, 2.0, vec![0.0; 3]).unwrap();
        let mesh = boundary_quadrature(&ball, 12).unwrap();
        let mc = is_mean_convex(&mesh);
        assert!(mc.mean_convex);
        assert_relative_eq!(mc.margin, 1.0, max_relative = 1e-10);

        // Dumbbell-like profile: deep equatorial neck has negative H.
        let dumbbell = RadialSpec::Axisymmetric {
            profile: AxiProfile::Cosine { base: 1.0, terms: vec![(2, 0.55)] },
        };
        let domain = StarDomain::star(3, vec![0.0; 3], dumbbell).unwrap();
        let mesh = boundary_quadrature(&domain, 32).unwrap();
        let mc = is_mean_convex(&mesh);
        assert!(!mc.mean_convex, "neck margin {}", mc.margin);
        assert!(mc.margin < 0.0);
    }
}
